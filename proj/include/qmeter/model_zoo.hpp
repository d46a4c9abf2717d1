// Copyright 2026 The qmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "qmeter/grid.hpp"
#include "qmeter/indirect_model.hpp"

namespace qmeter {

// Benchmark couplings on a shared object/probe lattice.  Every unitary here
// is an exact basis permutation, so the schemes scale to large grids without
// dense joint matrices and all conjugation identities hold to the last bit.
//
// Joint index convention: r = i_object * n + i_probe.

// Shear q -> q + x: the probe pointer is displaced by the object position.
// Equals exp(-(i/hbar) x (x) p) on the lattice (integer-step shift theorem).
std::vector<int> pointer_shift_permutation(const CyclicGrid& g);

// Shear x -> x - q: the object is displaced backwards by the probe position.
// Equals exp(+(i/hbar) p_obj (x) q) on the lattice.
std::vector<int> object_shift_permutation(const CyclicGrid& g);

// Composition acting as `then` after `first` (matrix product then * first).
std::vector<int> compose_permutations(const std::vector<int>& first,
                                      const std::vector<int>& then);

// Pointer-shift scheme with a lattice probe: couple, then read the probe
// position.  A delta probe measures position sharply; a spread probe smears
// the reading by its own profile and kicks the object momentum back.
IndirectModel von_neumann_model(const CyclicGrid& g, const GridWavefunction& probe);

// Swap-shear scheme: afterwards the probe position reads the object position
// exactly (zero noise for any probe), while the object position is displaced
// by the probe and the object momentum is replaced by the probe momentum.
// Its measure is sharp position, yet the momentum disturbance stays finite,
// so the naive noise-disturbance product drops below the commutator bound.
IndirectModel sharp_position_model(const CyclicGrid& g, const GridWavefunction& probe);

// The swap-shear coupling split into its two successive shears; returns the
// composed permutation, entrywise identical to sharp_position_model's.
std::vector<int> factored_sharp_position_permutation(const CyclicGrid& g);

struct RepetitionComparison {
  double von_neumann = 0.0;
  double sharp_position = 0.0;
};

// Root-mean-square mismatch between back-to-back runs of each scheme, with
// the object prepared in a copy of the probe profile.  The probe must be
// centered (|<q>| <= 1e-8); for a spread probe the two schemes differ by a
// factor sqrt(2), and a delta probe makes both repeatable.
RepetitionComparison repetition_comparison(const CyclicGrid& g,
                                           const GridWavefunction& probe);

}  // namespace qmeter
