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

#include "qmeter/povm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qmeter {

namespace {

void require_dim(int expected, int got, const char* what) {
  if (expected != got) {
    throw ValidationError(std::string(what) + ": dimension mismatch (" +
                          std::to_string(expected) + " vs " + std::to_string(got) + ")");
  }
}

}  // namespace

Povm::Povm(std::vector<PovmOutcome> outs) : outcomes(std::move(outs)) {
  if (outcomes.empty()) throw ValidationError("POVM needs at least one outcome");
  const auto d = outcomes.front().effect.rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& o : outcomes) {
    if (o.effect.rows() != d || o.effect.cols() != d) {
      throw ValidationError("POVM effects must be square with a common dimension");
    }
    if (!all_finite(o.effect) || !std::isfinite(o.value)) {
      throw ValidationError("POVM contains non-finite entries");
    }
    if (!is_hermitian(o.effect, tol::herm)) throw ValidationError("POVM effect not Hermitian");
    if (min_eigenvalue((o.effect + o.effect.adjoint()) / 2.0) < -tol::psd) {
      throw ValidationError("POVM effect has a negative eigenvalue");
    }
    total += o.effect;
  }
  if (!is_identity(total, tol::prob)) {
    throw ValidationError("POVM effects do not sum to the identity");
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
      if (outcomes[i].value == outcomes[j].value) {
        throw ValidationError("POVM outcome values must be distinct");
      }
    }
  }
}

std::vector<double> Povm::values() const {
  std::vector<double> v;
  v.reserve(outcomes.size());
  for (const auto& o : outcomes) v.push_back(o.value);
  return v;
}

CMatrix Povm::effect_of(const std::vector<double>& subset) const {
  CMatrix acc = CMatrix::Zero(dim(), dim());
  for (double x : subset) {
    const auto it = std::find_if(outcomes.begin(), outcomes.end(),
                                 [x](const PovmOutcome& o) { return o.value == x; });
    if (it == outcomes.end()) {
      throw ValidationError("no outcome with value " + std::to_string(x));
    }
    acc += it->effect;
  }
  return acc;
}

Povm spectral_povm(const Observable& a, double tol_cluster) {
  SpectralMeasure sm = spectral_measure(a, tol_cluster);
  std::vector<PovmOutcome> outs;
  outs.reserve(sm.branches.size());
  for (const auto& b : sm.branches) outs.push_back({b.value, b.projector});
  return Povm(std::move(outs));
}

Observable first_moment(const Povm& pi) {
  CMatrix acc = CMatrix::Zero(pi.dim(), pi.dim());
  for (const auto& o : pi.outcomes) acc += o.value * o.effect;
  return Observable((acc + acc.adjoint()) / 2.0);
}

Observable second_moment(const Povm& pi) {
  CMatrix acc = CMatrix::Zero(pi.dim(), pi.dim());
  for (const auto& o : pi.outcomes) acc += o.value * o.value * o.effect;
  return Observable((acc + acc.adjoint()) / 2.0);
}

double distance(const Povm& pi, const Observable& a, const State& rho) {
  require_dim(pi.dim(), a.dim(), "distance");
  require_dim(pi.dim(), rho.dim(), "distance");
  const CMatrix o1 = first_moment(pi).matrix;
  const CMatrix o2 = second_moment(pi).matrix;
  const CMatrix quad = o2 - o1 * a.matrix - a.matrix * o1 + a.matrix * a.matrix;
  const double radicand = trace_product(quad, rho.matrix).real();
  if (radicand < -1e-9) throw NumericError("squared distance came out negative");
  return std::sqrt(std::max(0.0, radicand));
}

NaimarkExtension naimark_extend(const Povm& pi) {
  const int d = pi.dim();
  const int n = pi.size();
  NaimarkExtension ext;
  ext.block_dim = d;
  ext.isometry = CMatrix::Zero(n * d, d);
  CMatrix big = CMatrix::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    ext.isometry.block(i * d, 0, d, d) = psd_sqrt(pi.outcomes[i].effect);
    big.block(i * d, i * d, d, d) = pi.outcomes[i].value * CMatrix::Identity(d, d);
    ext.values.push_back(pi.outcomes[i].value);
  }
  ext.extended_observable = Observable(big);
  return ext;
}

CMatrix NaimarkExtension::block_projector(int i) const {
  const int n = blocks();
  CMatrix q = CMatrix::Zero(n * block_dim, n * block_dim);
  q.block(i * block_dim, i * block_dim, block_dim, block_dim) =
      CMatrix::Identity(block_dim, block_dim);
  return q;
}

double distance_via_naimark(const NaimarkExtension& ext, const Observable& a, const State& rho) {
  require_dim(ext.block_dim == 0 ? 0 : static_cast<int>(ext.isometry.cols()), a.dim(),
              "distance_via_naimark");
  require_dim(a.dim(), rho.dim(), "distance_via_naimark");
  const CMatrix root = psd_sqrt(rho.matrix);
  const CMatrix lifted = ext.isometry * root;
  const CMatrix residual = ext.extended_observable.matrix * lifted - ext.isometry * (a.matrix * root);
  return residual.norm();
}

double output_mean(const Povm& pi, const State& rho) {
  require_dim(pi.dim(), rho.dim(), "output_mean");
  double m1 = 0.0;
  for (const auto& o : pi.outcomes) m1 += o.value * trace_product(o.effect, rho.matrix).real();
  return m1;
}

double output_std(const Povm& pi, const State& rho) {
  require_dim(pi.dim(), rho.dim(), "output_std");
  double m1 = 0.0;
  double m2 = 0.0;
  for (const auto& o : pi.outcomes) {
    const double p = trace_product(o.effect, rho.matrix).real();
    m1 += o.value * p;
    m2 += o.value * o.value * p;
  }
  return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

bool is_compatible(const Povm& pi, const Observable& a, double tolerance) {
  require_dim(pi.dim(), a.dim(), "is_compatible");
  const SpectralMeasure sm = spectral_measure(a);
  for (const auto& o : pi.outcomes) {
    for (const auto& b : sm.branches) {
      if (max_abs(commutator(o.effect, b.projector)) > tolerance) return false;
    }
  }
  return true;
}

double noise_from_compatible(const Povm& pi, const Observable& a, const State& rho) {
  require_dim(pi.dim(), rho.dim(), "noise_from_compatible");
  if (!is_compatible(pi, a)) {
    throw ValidationError("measure is not compatible with the reference observable");
  }
  const SpectralMeasure sm = spectral_measure(a);
  double acc = 0.0;
  for (const auto& o : pi.outcomes) {
    for (const auto& b : sm.branches) {
      const double gap = o.value - b.value;
      acc += gap * gap * trace_product(o.effect * b.projector, rho.matrix).real();
    }
  }
  return std::sqrt(std::max(0.0, acc));
}

RMatrix resolution_kernel(const Povm& pi, const SpectralMeasure& position) {
  require_dim(pi.dim(), position.dim(), "resolution_kernel");
  const int d = pi.dim();
  const int n_pos = static_cast<int>(position.branches.size());
  if (n_pos != d) {
    throw ValidationError("resolution kernel needs a nondegenerate reference observable");
  }
  for (const auto& b : position.branches) {
    if (std::abs(b.projector.trace().real() - 1.0) > 0.5) {
      throw ValidationError("resolution kernel needs rank-one reference projectors");
    }
  }
  RMatrix g(pi.size(), n_pos);
  for (int i = 0; i < pi.size(); ++i) {
    for (int x = 0; x < n_pos; ++x) {
      g(i, x) = trace_product(pi.outcomes[i].effect, position.branches[x].projector).real();
    }
    CMatrix rebuilt = CMatrix::Zero(d, d);
    for (int x = 0; x < n_pos; ++x) rebuilt += g(i, x) * position.branches[x].projector;
    if (max_abs(rebuilt - pi.outcomes[i].effect) > 1e-9) {
      throw ValidationError("effect is not diagonal in the reference eigenbasis");
    }
  }
  return g;
}

Observable mean_noise_operator(const Povm& pi, const Observable& a) {
  require_dim(pi.dim(), a.dim(), "mean_noise_operator");
  return Observable(first_moment(pi).matrix - a.matrix);
}

bool is_unbiased(const Povm& pi, const Observable& a, double tolerance) {
  return op_norm_hermitian(mean_noise_operator(pi, a).matrix) <= tolerance;
}

bool povm_equals_spectral(const Povm& pi, const SpectralMeasure& sm, double tolerance) {
  if (pi.dim() != sm.dim()) return false;
  std::vector<bool> claimed(sm.branches.size(), false);
  for (const auto& o : pi.outcomes) {
    if (max_abs(o.effect) <= tolerance) continue;  // null outcome carries no weight
    bool found = false;
    for (std::size_t j = 0; j < sm.branches.size(); ++j) {
      if (std::abs(o.value - sm.branches[j].value) > tolerance) continue;
      if (claimed[j]) return false;
      if (max_abs(o.effect - sm.branches[j].projector) > tolerance) return false;
      claimed[j] = true;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return std::all_of(claimed.begin(), claimed.end(), [](bool c) { return c; });
}

double op_norm_hermitian(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0,
                                            Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace qmeter
