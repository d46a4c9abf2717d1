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

#include <cstdint>
#include <random>

#include "qmeter/instrument.hpp"
#include "qmeter/operators.hpp"
#include "qmeter/povm.hpp"

namespace qmeter::sampling {

// Deterministic generator for property sweeps.  Uniform and normal draws
// are derived from raw mt19937_64 words by hand so that a fixed seed gives
// identical streams on every toolchain (std::normal_distribution does not
// guarantee that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive bounds
  double normal();
  cplx normal_cplx();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

CVector random_unit_vector(Rng& rng, int d);
// Entries i.i.d. complex normal (a Ginibre block).
CMatrix random_matrix(Rng& rng, int rows, int cols, double scale = 1.0);
CMatrix random_hermitian(Rng& rng, int d, double scale = 1.0);
CMatrix random_unitary(Rng& rng, int d);
Observable random_observable(Rng& rng, int d, double scale = 1.0);
// rank = 0 draws a full-rank state.
State random_state(Rng& rng, int d, int rank = 0);
// Ginibre squares normalized by the inverse root of their sum; outcome
// values are distinct reals near 0 .. n_outcomes-1.
Povm random_povm(Rng& rng, int d, int n_outcomes);
// Ginibre blocks right-normalized so the Kraus sum is trace-preserving.
Channel random_channel(Rng& rng, int d, int n_kraus = 2);
Instrument random_instrument(Rng& rng, int d, int n_outcomes, int kraus_per_outcome = 2);

}  // namespace qmeter::sampling
