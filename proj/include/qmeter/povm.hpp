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

#include "qmeter/operators.hpp"

namespace qmeter {

struct PovmOutcome {
  double value;
  CMatrix effect;
};

// Finite-outcome positive operator valued measure: effects are positive
// semidefinite and sum to the identity; outcome values are distinct reals.
struct Povm {
  std::vector<PovmOutcome> outcomes;

  Povm() = default;
  explicit Povm(std::vector<PovmOutcome> outs);
  int dim() const { return outcomes.empty() ? 0 : static_cast<int>(outcomes.front().effect.rows()); }
  int size() const { return static_cast<int>(outcomes.size()); }
  std::vector<double> values() const;
  // Sum of effects whose outcome value is listed; unknown values are an error.
  CMatrix effect_of(const std::vector<double>& subset) const;
};

// Spectral measure of a Hermitian matrix viewed as the projective POVM.
Povm spectral_povm(const Observable& a, double tol_cluster = tol::cluster);

Observable first_moment(const Povm& pi);
Observable second_moment(const Povm& pi);

// Root of Tr[(O2 - O1 A - A O1 + A^2) rho]: how far the measure sits from
// the target observable in the given state.
double distance(const Povm& pi, const Observable& a, const State& rho);

// Block-isometry extension: the measure becomes a sharp observable on an
// n*d-dimensional space, compressed back by the isometry.
struct NaimarkExtension {
  CMatrix isometry;                // (n*d) x d, V^dagger V = I_d
  Observable extended_observable;  // block-diagonal, value x_i on block i
  int block_dim = 0;
  std::vector<double> values;

  int blocks() const { return static_cast<int>(values.size()); }
  CMatrix block_projector(int i) const;
};

NaimarkExtension naimark_extend(const Povm& pi);

// Hilbert-Schmidt route through the extension; agrees with distance().
double distance_via_naimark(const NaimarkExtension& ext, const Observable& a, const State& rho);

double output_mean(const Povm& pi, const State& rho);
double output_std(const Povm& pi, const State& rho);

// True when every effect commutes with every spectral projector of a.
bool is_compatible(const Povm& pi, const Observable& a, double tolerance = tol::flag);

// Root-mean-square deviation between the measure's output and a sharp
// reading of a, via the joint distribution available in the compatible case.
double noise_from_compatible(const Povm& pi, const Observable& a, const State& rho);

// G(a, x) over (outcome, position) for effects diagonal in the eigenbasis of
// a nondegenerate reference observable; reconstructs every effect as
// F_a = sum_x G(a, x) P_x.
RMatrix resolution_kernel(const Povm& pi, const SpectralMeasure& position);

// First moment minus the target: the operator-valued bias of the measure.
Observable mean_noise_operator(const Povm& pi, const Observable& a);
bool is_unbiased(const Povm& pi, const Observable& a, double tolerance = tol::flag);

// Entrywise comparison against a spectral measure, matching branches by
// outcome value; true when the measure is exactly the sharp one.
bool povm_equals_spectral(const Povm& pi, const SpectralMeasure& sm, double tolerance);

// max |eigenvalue| of a Hermitian matrix
double op_norm_hermitian(const CMatrix& m);

}  // namespace qmeter
