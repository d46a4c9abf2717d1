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

#include "qmeter/uncertainty.hpp"

#include <cmath>

namespace qmeter {

namespace {

RelationResult make_relation(double lhs, double rhs, bool applicable = true) {
  RelationResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.satisfied = lhs >= rhs - tol::margin;
  r.applicable = applicable;
  return r;
}

// Operator norm of a commutator of Hermitian matrices; i [x, y] is Hermitian.
double comm_norm(const CMatrix& x, const CMatrix& y) {
  return op_norm_hermitian(cplx(0.0, 1.0) * commutator(x, y));
}

bool is_scalar(const CMatrix& m) {
  const int n = static_cast<int>(m.rows());
  const double s = m.trace().real() / n;
  return op_norm_hermitian(m - s * CMatrix::Identity(n, n)) <= tol::flag;
}

ConditionFlags classify_from(const Observable& n, const Observable& d, const Observable& a,
                             const Observable& b) {
  ConditionFlags f;
  f.unbiased_noise = op_norm_hermitian(n.matrix) <= tol::flag;
  f.unbiased_disturbance = op_norm_hermitian(d.matrix) <= tol::flag;
  f.independent_noise = is_scalar(n.matrix);
  f.independent_disturbance = is_scalar(d.matrix);
  f.n_commutes_b = comm_norm(n.matrix, b.matrix) <= tol::flag;
  f.d_commutes_a = comm_norm(d.matrix, a.matrix) <= tol::flag;
  return f;
}

void check_object_dims(const IndirectModel& m, const Observable& a, const Observable& b) {
  if (a.dim() != m.dim_object || b.dim() != m.dim_object)
    throw ValidationError("observables must live on the object space");
}

}  // namespace

UncertaintyReport evaluate(const IndirectModel& m, const Observable& a, const Observable& b,
                           const State& rho) {
  check_object_dims(m, a, b);
  if (rho.dim() != m.dim_object)
    throw ValidationError("input state must live on the object space");

  UncertaintyReport rep;
  rep.epsilon = rms_noise(m, a, rho);
  rep.eta = rms_disturbance(m, b, rho);
  rep.sigma_a = std_dev(a, rho);
  rep.sigma_b = std_dev(b, rho);

  const Povm pi = derive_povm(m);
  rep.sigma_x = output_std(pi, rho);

  const Channel t = nonselective(derive_instrument(m));
  rep.sigma_b_post = std_dev(b, State(t.apply(rho.matrix)));

  const Observable n = mean_noise_operator(pi, a);
  const Observable d = mean_disturbance_operator(t, b);
  const cplx c_nb = trace_product(commutator(n.matrix, b.matrix), rho.matrix);
  const cplx c_ad = trace_product(commutator(a.matrix, d.matrix), rho.matrix);
  rep.cross_term_uvur = 0.5 * std::abs(c_nb + c_ad);
  rep.cross_term_sigma_x = 0.5 * std::abs(c_nb);
  rep.cross_term_post = 0.5 * std::abs(c_ad);
  rep.rhs = commutator_bound(a, b, rho);

  rep.flags = classify_from(n, d, a, b);
  const bool precise = povm_equals_spectral(pi, spectral_measure(a), tol::flag);

  rep.relations["heisenberg"] = make_relation(rep.epsilon * rep.eta, rep.rhs);
  rep.relations["uvur"] = make_relation(rep.epsilon * rep.eta + rep.cross_term_uvur, rep.rhs);
  rep.relations["gur"] = make_relation(
      rep.epsilon * rep.eta + rep.epsilon * rep.sigma_b + rep.sigma_a * rep.eta, rep.rhs);
  rep.relations["sigma_x"] =
      make_relation(rep.sigma_x * rep.eta + rep.cross_term_sigma_x, rep.rhs);
  rep.relations["post_measurement"] =
      make_relation(rep.epsilon * rep.sigma_b_post + rep.cross_term_post, rep.rhs);
  rep.relations["nondisturbing"] =
      make_relation(rep.epsilon * rep.sigma_b, rep.rhs, rep.flags.unbiased_disturbance);
  rep.relations["precise"] = make_relation(rep.sigma_a * rep.eta, rep.rhs, precise);
  return rep;
}

ConditionFlags classify_hur_conditions(const IndirectModel& m, const Observable& a,
                                       const Observable& b) {
  check_object_dims(m, a, b);
  const Observable n = mean_noise_operator(derive_povm(m), a);
  const Observable d = mean_disturbance_operator(nonselective(derive_instrument(m)), b);
  return classify_from(n, d, a, b);
}

ModelConditionFlags classify_model_conditions(const IndirectModel& m, const Observable& a,
                                              const Observable& b) {
  check_object_dims(m, a, b);
  const CMatrix eye_probe = CMatrix::Identity(m.dim_probe, m.dim_probe);
  const CMatrix a_in = tensor(a.matrix, eye_probe);
  const CMatrix b_in = tensor(b.matrix, eye_probe);
  const CMatrix nn = noise_operator(m, a).matrix;
  const CMatrix dd = disturbance_operator(m, b).matrix;

  const CMatrix eye_object = CMatrix::Identity(m.dim_object, m.dim_object);
  const auto probe_only = [&](const CMatrix& joint) {
    const CMatrix block = joint.topLeftCorner(m.dim_probe, m.dim_probe);
    return op_norm_hermitian(joint - tensor(eye_object, block)) <= tol::flag;
  };

  ModelConditionFlags f;
  f.noise_commutes_b_in = comm_norm(nn, b_in) <= tol::flag;
  f.disturbance_commutes_a_in = comm_norm(dd, a_in) <= tol::flag;
  f.noise_probe_only = probe_only(nn);
  f.disturbance_probe_only = probe_only(dd);
  return f;
}

bool implies_product_bound(const ConditionFlags& f) {
  return (f.n_commutes_b && f.d_commutes_a) ||
         (f.independent_noise && f.independent_disturbance) ||
         (f.unbiased_noise && f.unbiased_disturbance);
}

TriangleReport triangle_report(const Povm& pi, const Observable& a, const State& rho) {
  if (a.dim() != rho.dim()) throw ValidationError("observable and state dimensions differ");

  TriangleReport t;
  t.epsilon = distance(pi, a, rho);
  t.sigma_a = std_dev(a, rho);
  t.sigma_x = output_std(pi, rho);
  t.bias = std::abs(output_mean(pi, rho) - mean(a, rho));
  t.bounds["output_spread"] = make_relation(t.sigma_a + t.epsilon + t.bias, t.sigma_x);
  t.bounds["input_spread"] = make_relation(t.sigma_x + t.epsilon + t.bias, t.sigma_a);
  t.bounds["noise"] = make_relation(t.sigma_a + t.sigma_x + t.bias, t.epsilon);
  t.bounds["spread_gap"] =
      make_relation(t.epsilon + t.bias, std::abs(t.sigma_x - t.sigma_a));
  return t;
}

}  // namespace qmeter
