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

#include <functional>
#include <vector>

#include "qmeter/operators.hpp"
#include "qmeter/povm.hpp"

namespace qmeter {

struct InstrumentOutcome {
  double value;
  std::vector<CMatrix> kraus;
};

// Completely positive instrument in Kraus form.  The Kraus decomposition
// makes complete positivity structural; normalization (all operators summed
// over outcomes and Kraus indices) is enforced at construction.
struct Instrument {
  std::vector<InstrumentOutcome> outcomes;

  Instrument() = default;
  explicit Instrument(std::vector<InstrumentOutcome> outs);
  int dim() const;
  int size() const { return static_cast<int>(outcomes.size()); }
  std::vector<double> values() const;
};

// Trace-preserving CP map in Kraus form.
struct Channel {
  std::vector<CMatrix> kraus;

  Channel() = default;
  explicit Channel(std::vector<CMatrix> ops);
  int dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus.front().rows()); }
  CMatrix apply(const CMatrix& rho) const;
};

// Unnormalized selected output: sum of K rho K^dagger over the subset.
// Its trace is the probability of landing in the subset.
CMatrix apply_selective(const Instrument& ins, const std::vector<double>& subset,
                        const State& rho);
// Normalized posterior; conditioning on a zero-probability subset is an error.
State output_state(const Instrument& ins, const std::vector<double>& subset, const State& rho);
// The measure the instrument induces on outcomes: effect_i = sum_k K_ik^dagger K_ik.
Povm povm_of(const Instrument& ins);
// Dual (Heisenberg-picture) action on an operator over the subset.
CMatrix dual_apply(const Instrument& ins, const std::vector<double>& subset, const CMatrix& x);
CMatrix dual_apply(const Instrument& ins, const std::vector<double>& subset, const Observable& x);
// Dual of the nonselective channel: sum of K^dagger X K.
CMatrix dual_apply(const Channel& ch, const CMatrix& x);
// Forget the outcome: concatenate all Kraus sets into one channel.
Channel nonselective(const Instrument& ins);
// Probability that the first measurement lands in d1 and a subsequent
// measurement of `second` lands in d2.
double joint_probability(const Instrument& first, const Povm& second, const State& rho,
                         const std::vector<double>& d1, const std::vector<double>& d2);

// Complete-positivity audit for maps given by their action on matrix units.
CMatrix choi_matrix(const Channel& ch);
CMatrix choi_of_map(const std::function<CMatrix(const CMatrix&)>& map, int dim);
bool choi_psd_check(const CMatrix& choi, double tolerance = tol::psd);
bool is_completely_positive(const std::function<CMatrix(const CMatrix&)>& map, int dim);

// Same instrument acting trivially on an appended tensor factor.
Instrument tensor_extend(const Instrument& ins, int extra_dim);
// One outcome per spectral branch, the branch projector as the only Kraus op.
Instrument luders_instrument(const Observable& a);

// Dual identity over all outcome pairs: measuring twice gives the same value.
bool is_repeatable(const Instrument& ins, double tolerance = tol::flag);
// Root-mean-square gap between two consecutive readings of the instrument.
double repetition_error(const Instrument& ins, const State& rho);

// The dual channel fixes every spectral projector of b.
bool is_nondisturbing(const Channel& ch, const Observable& b, double tolerance = tol::flag);
// How far a later sharp measurement of b is pushed from b by the channel:
// the distance of the pulled-back measure from b itself.
double disturbance(const Channel& ch, const Observable& b, const State& rho);
// Pulled-back sharp measure of b: effects are the dual images of b's projectors.
Povm pullback_povm(const Channel& ch, const Observable& b);
// Dual image of b minus b: the operator-valued bias the channel adds.
Observable mean_disturbance_operator(const Channel& ch, const Observable& b);

// True when sequential statistics (instrument then sharp b) match the
// simultaneous-measurement formula on the given subsets.
bool joint_nondisturbing_check(const Instrument& first, const Observable& b, const State& rho,
                               const std::vector<double>& d1, const std::vector<double>& d2,
                               double tolerance = tol::margin);

}  // namespace qmeter
