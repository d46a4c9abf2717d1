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

#include "qmeter/model_zoo.hpp"

#include <cmath>
#include <utility>

namespace qmeter {

namespace {

void require_probe_on_grid(const CyclicGrid& g, const GridWavefunction& probe) {
  if (probe.grid.n != g.n || probe.grid.spacing != g.spacing || probe.grid.hbar != g.hbar) {
    throw ValidationError("probe wavefunction lives on a different grid");
  }
}

}  // namespace

std::vector<int> pointer_shift_permutation(const CyclicGrid& g) {
  const int n = g.n;
  std::vector<int> perm(n * n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iq = 0; iq < n; ++iq) perm[ix * n + iq] = ix * n + (iq + ix) % n;
  }
  return perm;
}

std::vector<int> object_shift_permutation(const CyclicGrid& g) {
  const int n = g.n;
  std::vector<int> perm(n * n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iq = 0; iq < n; ++iq) perm[ix * n + iq] = ((ix - iq + n) % n) * n + iq;
  }
  return perm;
}

std::vector<int> compose_permutations(const std::vector<int>& first,
                                      const std::vector<int>& then) {
  if (first.size() != then.size()) throw ValidationError("permutation size mismatch");
  std::vector<int> out(first.size());
  for (std::size_t r = 0; r < first.size(); ++r) {
    const int mid = first[r];
    if (mid < 0 || mid >= static_cast<int>(then.size())) {
      throw ValidationError("permutation entry out of range");
    }
    out[r] = then[mid];
  }
  return out;
}

IndirectModel von_neumann_model(const CyclicGrid& g, const GridWavefunction& probe) {
  require_probe_on_grid(g, probe);
  return IndirectModel::from_permutation(g.n, g.n, State::pure(probe.amplitudes),
                                         pointer_shift_permutation(g), position_op(g),
                                         g.hbar);
}

IndirectModel sharp_position_model(const CyclicGrid& g, const GridWavefunction& probe) {
  require_probe_on_grid(g, probe);
  // basis map |x, q> -> |x - q, x>: the pointer lands exactly on the object
  // position while the object keeps only the probe's imprint
  const int n = g.n;
  std::vector<int> perm(n * n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iq = 0; iq < n; ++iq) perm[ix * n + iq] = ((ix - iq + n) % n) * n + ix;
  }
  return IndirectModel::from_permutation(g.n, g.n, State::pure(probe.amplitudes),
                                         std::move(perm), position_op(g), g.hbar);
}

std::vector<int> factored_sharp_position_permutation(const CyclicGrid& g) {
  return compose_permutations(object_shift_permutation(g), pointer_shift_permutation(g));
}

RepetitionComparison repetition_comparison(const CyclicGrid& g,
                                           const GridWavefunction& probe) {
  require_probe_on_grid(g, probe);
  const State sigma = State::pure(probe.amplitudes);
  if (std::abs(mean(position_op(g), sigma)) > 1e-8) {
    throw ValidationError("repetition comparison needs a centered probe");
  }
  // the object starts in a copy of the probe profile; the comparison is
  // insensitive to this choice as long as the state stays off the seam
  const State rho = sigma;
  RepetitionComparison out;
  out.von_neumann = repetition_error(derive_instrument(von_neumann_model(g, probe)), rho);
  out.sharp_position =
      repetition_error(derive_instrument(sharp_position_model(g, probe)), rho);
  return out;
}

}  // namespace qmeter
