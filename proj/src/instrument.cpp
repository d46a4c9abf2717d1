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

#include "qmeter/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qmeter {

namespace {

const InstrumentOutcome& find_outcome(const Instrument& ins, double value) {
  const auto it =
      std::find_if(ins.outcomes.begin(), ins.outcomes.end(),
                   [value](const InstrumentOutcome& o) { return o.value == value; });
  if (it == ins.outcomes.end()) {
    throw ValidationError("no outcome with value " + std::to_string(value));
  }
  return *it;
}

void check_kraus_family(const std::vector<const CMatrix*>& ops, int d, const char* what) {
  CMatrix total = CMatrix::Zero(d, d);
  for (const CMatrix* k : ops) {
    if (k->rows() != d || k->cols() != d) {
      throw ValidationError(std::string(what) + ": Kraus blocks must share one square dimension");
    }
    if (!all_finite(*k)) throw ValidationError(std::string(what) + ": non-finite Kraus entry");
    total += k->adjoint() * *k;
  }
  if (!is_identity(total, tol::prob)) {
    throw ValidationError(std::string(what) + ": Kraus blocks are not trace-preserving");
  }
}

}  // namespace

Instrument::Instrument(std::vector<InstrumentOutcome> outs) : outcomes(std::move(outs)) {
  if (outcomes.empty()) throw ValidationError("instrument needs at least one outcome");
  int d = 0;
  for (const auto& o : outcomes) {
    if (!std::isfinite(o.value)) throw ValidationError("instrument outcome value not finite");
    if (d == 0 && !o.kraus.empty()) d = static_cast<int>(o.kraus.front().rows());
  }
  if (d == 0) throw ValidationError("instrument has no Kraus blocks at all");
  std::vector<const CMatrix*> all;
  for (const auto& o : outcomes) {
    for (const auto& k : o.kraus) all.push_back(&k);
  }
  check_kraus_family(all, d, "instrument");
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
      if (outcomes[i].value == outcomes[j].value) {
        throw ValidationError("instrument outcome values must be distinct");
      }
    }
  }
}

int Instrument::dim() const {
  for (const auto& o : outcomes) {
    if (!o.kraus.empty()) return static_cast<int>(o.kraus.front().rows());
  }
  return 0;
}

std::vector<double> Instrument::values() const {
  std::vector<double> v;
  v.reserve(outcomes.size());
  for (const auto& o : outcomes) v.push_back(o.value);
  return v;
}

Channel::Channel(std::vector<CMatrix> ops) : kraus(std::move(ops)) {
  if (kraus.empty()) throw ValidationError("channel needs at least one Kraus block");
  std::vector<const CMatrix*> all;
  for (const auto& k : kraus) all.push_back(&k);
  check_kraus_family(all, static_cast<int>(kraus.front().rows()), "channel");
}

CMatrix Channel::apply(const CMatrix& rho) const {
  CMatrix out = CMatrix::Zero(dim(), dim());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

CMatrix apply_selective(const Instrument& ins, const std::vector<double>& subset,
                        const State& rho) {
  const int d = ins.dim();
  if (rho.dim() != d) throw ValidationError("apply_selective: dimension mismatch");
  CMatrix out = CMatrix::Zero(d, d);
  for (double x : subset) {
    for (const auto& k : find_outcome(ins, x).kraus) out += k * rho.matrix * k.adjoint();
  }
  return out;
}

State output_state(const Instrument& ins, const std::vector<double>& subset, const State& rho) {
  CMatrix raw = apply_selective(ins, subset, rho);
  const double p = raw.trace().real();
  if (p <= tol::prob) {
    throw ValidationError("conditioning on an outcome subset of probability zero");
  }
  return State(raw / p);
}

Povm povm_of(const Instrument& ins) {
  const int d = ins.dim();
  std::vector<PovmOutcome> outs;
  outs.reserve(ins.outcomes.size());
  for (const auto& o : ins.outcomes) {
    CMatrix gram = CMatrix::Zero(d, d);
    for (const auto& k : o.kraus) gram += k.adjoint() * k;
    outs.push_back({o.value, (gram + gram.adjoint()) / 2.0});
  }
  return Povm(std::move(outs));
}

CMatrix dual_apply(const Instrument& ins, const std::vector<double>& subset, const CMatrix& x) {
  const int d = ins.dim();
  if (x.rows() != d || x.cols() != d) throw ValidationError("dual_apply: dimension mismatch");
  CMatrix out = CMatrix::Zero(d, d);
  for (double v : subset) {
    for (const auto& k : find_outcome(ins, v).kraus) out += k.adjoint() * x * k;
  }
  return out;
}

CMatrix dual_apply(const Instrument& ins, const std::vector<double>& subset,
                   const Observable& x) {
  return dual_apply(ins, subset, x.matrix);
}

CMatrix dual_apply(const Channel& ch, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& k : ch.kraus) out += k.adjoint() * x * k;
  return out;
}

Channel nonselective(const Instrument& ins) {
  std::vector<CMatrix> all;
  for (const auto& o : ins.outcomes) {
    all.insert(all.end(), o.kraus.begin(), o.kraus.end());
  }
  return Channel(std::move(all));
}

double joint_probability(const Instrument& first, const Povm& second, const State& rho,
                         const std::vector<double>& d1, const std::vector<double>& d2) {
  // Heisenberg route: pull the second effect back through the instrument.
  const CMatrix pulled = dual_apply(first, d1, second.effect_of(d2));
  return trace_product(pulled, rho.matrix).real();
}

CMatrix choi_matrix(const Channel& ch) {
  const int d = ch.dim();
  CMatrix choi = CMatrix::Zero(d * d, d * d);
  for (const auto& k : ch.kraus) {
    CVector w(d * d);
    for (int i = 0; i < d; ++i) w.segment(i * d, d) = k.col(i);
    choi += w * w.adjoint();
  }
  return choi;
}

CMatrix choi_of_map(const std::function<CMatrix(const CMatrix&)>& map, int dim) {
  CMatrix choi = CMatrix::Zero(dim * dim, dim * dim);
  CMatrix unit = CMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      unit(i, j) = 1.0;
      choi.block(i * dim, j * dim, dim, dim) = map(unit);
      unit(i, j) = 0.0;
    }
  }
  return choi;
}

bool choi_psd_check(const CMatrix& choi, double tolerance) {
  if (!is_hermitian(choi, tol::herm)) return false;
  return min_eigenvalue((choi + choi.adjoint()) / 2.0) >= -tolerance;
}

bool is_completely_positive(const std::function<CMatrix(const CMatrix&)>& map, int dim) {
  return choi_psd_check(choi_of_map(map, dim));
}

Instrument tensor_extend(const Instrument& ins, int extra_dim) {
  if (extra_dim < 1) throw ValidationError("tensor_extend: factor dimension must be positive");
  if (extra_dim == 1) return ins;
  const CMatrix eye = CMatrix::Identity(extra_dim, extra_dim);
  std::vector<InstrumentOutcome> outs;
  outs.reserve(ins.outcomes.size());
  for (const auto& o : ins.outcomes) {
    std::vector<CMatrix> ops;
    ops.reserve(o.kraus.size());
    for (const auto& k : o.kraus) ops.push_back(tensor(k, eye));
    outs.push_back({o.value, std::move(ops)});
  }
  return Instrument(std::move(outs));
}

Instrument luders_instrument(const Observable& a) {
  std::vector<InstrumentOutcome> outs;
  for (const auto& b : spectral_measure(a).branches) {
    outs.push_back({b.value, {b.projector}});
  }
  return Instrument(std::move(outs));
}

bool is_repeatable(const Instrument& ins, double tolerance) {
  const Povm pi = povm_of(ins);
  for (int i = 0; i < ins.size(); ++i) {
    for (int j = 0; j < ins.size(); ++j) {
      CMatrix pulled = dual_apply(ins, {ins.outcomes[i].value}, pi.outcomes[j].effect);
      if (i == j) pulled -= pi.outcomes[i].effect;
      if (max_abs(pulled) > tolerance) return false;
    }
  }
  return true;
}

double repetition_error(const Instrument& ins, const State& rho) {
  const Povm pi = povm_of(ins);
  double acc = 0.0;
  for (int i = 0; i < ins.size(); ++i) {
    const CMatrix mid = apply_selective(ins, {ins.outcomes[i].value}, rho);
    for (int j = 0; j < ins.size(); ++j) {
      const double gap = ins.outcomes[i].value - ins.outcomes[j].value;
      if (gap == 0.0) continue;
      acc += gap * gap * trace_product(pi.outcomes[j].effect, mid).real();
    }
  }
  return std::sqrt(std::max(0.0, acc));
}

bool is_nondisturbing(const Channel& ch, const Observable& b, double tolerance) {
  if (ch.dim() != b.dim()) throw ValidationError("is_nondisturbing: dimension mismatch");
  for (const auto& branch : spectral_measure(b).branches) {
    if (max_abs(dual_apply(ch, branch.projector) - branch.projector) > tolerance) return false;
  }
  return true;
}

Povm pullback_povm(const Channel& ch, const Observable& b) {
  if (ch.dim() != b.dim()) throw ValidationError("pullback_povm: dimension mismatch");
  std::vector<PovmOutcome> outs;
  for (const auto& branch : spectral_measure(b).branches) {
    CMatrix eff = dual_apply(ch, branch.projector);
    outs.push_back({branch.value, (eff + eff.adjoint()) / 2.0});
  }
  return Povm(std::move(outs));
}

double disturbance(const Channel& ch, const Observable& b, const State& rho) {
  return distance(pullback_povm(ch, b), b, rho);
}

Observable mean_disturbance_operator(const Channel& ch, const Observable& b) {
  if (ch.dim() != b.dim()) {
    throw ValidationError("mean_disturbance_operator: dimension mismatch");
  }
  CMatrix gap = dual_apply(ch, b.matrix) - b.matrix;
  return Observable((gap + gap.adjoint()) / 2.0);
}

bool joint_nondisturbing_check(const Instrument& first, const Observable& b, const State& rho,
                               const std::vector<double>& d1, const std::vector<double>& d2,
                               double tolerance) {
  const Povm sharp_b = spectral_povm(b);
  const double sequential = joint_probability(first, sharp_b, rho, d1, d2);
  const CMatrix first_effect = povm_of(first).effect_of(d1);
  const cplx simultaneous =
      (first_effect * sharp_b.effect_of(d2) * rho.matrix).trace();
  return std::abs(sequential - simultaneous) <= tolerance;
}

}  // namespace qmeter
