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

#include <map>
#include <string>

#include "qmeter/indirect_model.hpp"

namespace qmeter {

// One trade-off inequality, evaluated numerically.  satisfied means
// lhs >= rhs - tol::margin.  applicable is false for conditional bounds
// whose hypothesis the scheme does not meet; their numbers are still
// filled in, but satisfied carries no guarantee there.
struct RelationResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  bool satisfied = false;
  bool applicable = true;
};

// Structural properties of the scheme relative to (a, b), each decided by
// an operator-norm test against tol::flag.  n = mean noise operator
// (first moment of the derived measure minus a); d = mean disturbance
// operator (channel dual of b minus b).
struct ConditionFlags {
  bool unbiased_noise = false;          // n == 0
  bool unbiased_disturbance = false;    // d == 0
  bool independent_noise = false;       // n is a multiple of the identity
  bool independent_disturbance = false; // d is a multiple of the identity
  bool n_commutes_b = false;            // [n, b] == 0
  bool d_commutes_a = false;            // [d, a] == 0
};

// Same conditions one level up, on the joint space of the scheme itself,
// before averaging over the probe.  These imply the corresponding
// state-level flags for every object state.  Materializes joint-space
// operators; meant for small models.
struct ModelConditionFlags {
  bool noise_commutes_b_in = false;        // [N(a), b (x) I] == 0
  bool disturbance_commutes_a_in = false;  // [D(b), a (x) I] == 0
  bool noise_probe_only = false;           // N(a) = I (x) (probe operator)
  bool disturbance_probe_only = false;     // D(b) = I (x) (probe operator)
};

// Everything the trade-off relations need for one (scheme, a, b, state)
// instance, plus the relation rows themselves.
//
// Relation keys:
//   "heisenberg"        epsilon * eta                      (may fail)
//   "uvur"              epsilon * eta + cross_term_uvur    (always holds)
//   "gur"               epsilon*eta + epsilon*sigma_b + sigma_a*eta
//   "sigma_x"           sigma_x * eta + cross_term_sigma_x
//   "post_measurement"  epsilon * sigma_b_post + cross_term_post
//   "nondisturbing"     epsilon * sigma_b    (applicable iff d == 0)
//   "precise"           sigma_a * eta        (applicable iff the derived
//                                             measure is the spectral
//                                             measure of a)
// Every rhs is commutator_bound(a, b, rho).
struct UncertaintyReport {
  double epsilon = 0.0;       // rms noise on a
  double eta = 0.0;           // rms disturbance on b
  double sigma_a = 0.0;       // spread of a in the input state
  double sigma_b = 0.0;       // spread of b in the input state
  double sigma_x = 0.0;       // spread of the outcome distribution
  double sigma_b_post = 0.0;  // spread of b in the nonselective output state
  double cross_term_uvur = 0.0;     // |tr([n,b] rho) + tr([a,d] rho)| / 2
  double cross_term_sigma_x = 0.0;  // |tr([n,b] rho)| / 2
  double cross_term_post = 0.0;     // |tr([a,d] rho)| / 2
  double rhs = 0.0;                 // |tr([a,b] rho)| / 2
  std::map<std::string, RelationResult> relations;
  ConditionFlags flags;
};

UncertaintyReport evaluate(const IndirectModel& m, const Observable& a,
                           const Observable& b, const State& rho);

// State-independent flags alone, without the relation sweep.
ConditionFlags classify_hur_conditions(const IndirectModel& m, const Observable& a,
                                       const Observable& b);
ModelConditionFlags classify_model_conditions(const IndirectModel& m, const Observable& a,
                                              const Observable& b);

// Any of these imply the plain noise-disturbance product bound holds in
// every state: (i) n_commutes_b and d_commutes_a, (ii) independent_noise
// and independent_disturbance, (iii) unbiased_noise and unbiased_disturbance.
bool implies_product_bound(const ConditionFlags& f);

// Exact bounds tying the outcome spread of a measure to the spread of a
// and the rms gap between them.  bias = |outcome mean - mean of a|.
//
// Bound keys:
//   "output_spread"  sigma_a + epsilon + bias >= sigma_x
//   "input_spread"   sigma_x + epsilon + bias >= sigma_a
//   "noise"          sigma_a + sigma_x + bias >= epsilon
//   "spread_gap"     epsilon + bias >= |sigma_x - sigma_a|
struct TriangleReport {
  double epsilon = 0.0;
  double sigma_a = 0.0;
  double sigma_x = 0.0;
  double bias = 0.0;
  std::map<std::string, RelationResult> bounds;
};

TriangleReport triangle_report(const Povm& pi, const Observable& a, const State& rho);

}  // namespace qmeter
