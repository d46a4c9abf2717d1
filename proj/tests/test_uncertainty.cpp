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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <qmeter/grid.hpp>
#include <qmeter/indirect_model.hpp>
#include <qmeter/instrument.hpp>
#include <qmeter/model_zoo.hpp>
#include <qmeter/operators.hpp>
#include <qmeter/povm.hpp>
#include <qmeter/sampling.hpp>
#include <qmeter/uncertainty.hpp>

#include "support.hpp"

using namespace qmeter;
using namespace qtest;

namespace {

IndirectModel random_model(sampling::Rng& rng, int d_obj, int d_probe, bool pure_probe = false) {
  State sigma = pure_probe ? State::pure(sampling::random_unit_vector(rng, d_probe))
                           : sampling::random_state(rng, d_probe);
  return IndirectModel(d_obj, d_probe, sigma,
                       sampling::random_unitary(rng, d_obj * d_probe),
                       sampling::random_observable(rng, d_probe));
}

State plus_y() {
  const cplx i1(0.0, 1.0);
  return State::pure(ket({1.0 / std::sqrt(2.0), i1 / std::sqrt(2.0)}));
}

const RelationResult& rel(const UncertaintyReport& r, const char* name) {
  return r.relations.at(name);
}

// The five unconditional rows; the product bound is allowed to fail.
void check_theorem_rows(const UncertaintyReport& r) {
  CHECK(rel(r, "uvur").satisfied);
  CHECK(rel(r, "gur").satisfied);
  CHECK(rel(r, "sigma_x").satisfied);
  CHECK(rel(r, "post_measurement").satisfied);
}

void check_report_arithmetic(const UncertaintyReport& r) {
  CHECK(r.relations.size() == 7);
  CHECK(r.epsilon >= 0.0);
  CHECK(r.eta >= 0.0);
  CHECK(r.sigma_a >= 0.0);
  CHECK(r.sigma_b >= 0.0);
  CHECK(r.sigma_x >= 0.0);
  CHECK(r.sigma_b_post >= 0.0);
  CHECK(r.cross_term_uvur >= 0.0);
  CHECK(r.cross_term_sigma_x >= 0.0);
  CHECK(r.cross_term_post >= 0.0);
  CHECK(std::isfinite(r.rhs));
  for (const auto& [name, row] : r.relations) {
    CHECK(std::isfinite(row.lhs));
    CHECK(row.rhs == r.rhs);
    CHECK(row.margin == row.lhs - row.rhs);
    CHECK(row.satisfied == (row.margin >= -tol::margin));
  }
}

bool same_flags(const ConditionFlags& u, const ConditionFlags& v) {
  return u.unbiased_noise == v.unbiased_noise &&
         u.unbiased_disturbance == v.unbiased_disturbance &&
         u.independent_noise == v.independent_noise &&
         u.independent_disturbance == v.independent_disturbance &&
         u.n_commutes_b == v.n_commutes_b && u.d_commutes_a == v.d_commutes_a;
}

}  // namespace

TEST_CASE("pointer-shift scheme keeps every relation near saturation") {
  CyclicGrid g(64, 1.0, 1.0);
  GridWavefunction probe = gaussian_state(g, 0.0, 4.0);
  State rho = State::pure(gaussian_state(g, 0.0, 2.0).amplitudes);
  const Observable x = position_op(g), p = momentum_op(g);
  const State probe_state = State::pure(probe.amplitudes);
  const double sq = std_dev(x, probe_state);
  const double sp = std_dev(p, probe_state);

  UncertaintyReport r = evaluate(von_neumann_model(g, probe), x, p, rho);
  check_report_arithmetic(r);

  // noise and disturbance are the probe spreads
  CHECK(r.epsilon == doctest::Approx(sq).epsilon(1e-6));
  CHECK(r.eta == doctest::Approx(sp).epsilon(1e-6));
  CHECK(r.rhs == doctest::Approx(0.5).epsilon(1e-6));

  // the readout adds probe spread in quadrature, and so does the momentum kick
  CHECK(r.sigma_x ==
        doctest::Approx(std::sqrt(r.sigma_a * r.sigma_a + sq * sq)).epsilon(1e-6));
  CHECK(r.sigma_b_post ==
        doctest::Approx(std::sqrt(r.sigma_b * r.sigma_b + sp * sp)).epsilon(1e-6));

  // a minimal-spread probe saturates the product bound yet never crosses it
  CHECK(rel(r, "heisenberg").satisfied);
  CHECK(std::abs(rel(r, "heisenberg").margin) < 1e-6);
  check_theorem_rows(r);
  CHECK(r.cross_term_uvur < 1e-8);
  CHECK_FALSE(rel(r, "nondisturbing").applicable);
  CHECK_FALSE(rel(r, "precise").applicable);

  // the lattice seam makes noise site-dependent near the wrap line, so the
  // structural flags stay off even though the continuum picture has
  // state-independent noise and disturbance
  CHECK_FALSE(r.flags.unbiased_noise);
  CHECK_FALSE(r.flags.independent_noise);
  CHECK_FALSE(r.flags.independent_disturbance);
  CHECK_FALSE(r.flags.n_commutes_b);
}

TEST_CASE("a two-peak probe clears the product bound strictly") {
  CyclicGrid g(64, 1.0, 1.0);
  CVector amps =
      gaussian_state(g, 4.0, 2.0).amplitudes + gaussian_state(g, -4.0, 2.0).amplitudes;
  amps /= amps.norm();
  GridWavefunction probe(g, amps);
  State rho = State::pure(gaussian_state(g, 0.0, 2.0).amplitudes);

  UncertaintyReport r =
      evaluate(von_neumann_model(g, probe), position_op(g), momentum_op(g), rho);
  CHECK(rel(r, "heisenberg").satisfied);
  CHECK(rel(r, "heisenberg").margin > 0.2);
  check_theorem_rows(r);
}

TEST_CASE("precise position readout breaks the product bound, not the theorems") {
  CyclicGrid g(64, 1.0, 1.0);
  GridWavefunction probe = gaussian_state(g, 0.0, 4.0);
  State rho = State::pure(gaussian_state(g, 0.0, 2.0).amplitudes);
  const Observable x = position_op(g), p = momentum_op(g);
  const State probe_state = State::pure(probe.amplitudes);
  const double sp = std_dev(p, probe_state);

  UncertaintyReport r = evaluate(sharp_position_model(g, probe), x, p, rho);
  check_report_arithmetic(r);

  CHECK(r.epsilon <= 1e-10);
  CHECK(r.eta ==
        doctest::Approx(std::sqrt(r.sigma_b * r.sigma_b + sp * sp)).epsilon(1e-8));
  CHECK(r.rhs == doctest::Approx(0.5).epsilon(1e-6));

  // zero times anything cannot reach the bound
  CHECK_FALSE(rel(r, "heisenberg").satisfied);
  CHECK(rel(r, "heisenberg").margin < -0.4);

  // the cross term carries the whole weight: both corrected rows sit on the edge
  check_theorem_rows(r);
  CHECK(std::abs(rel(r, "uvur").margin) <= 1e-9);
  CHECK(std::abs(rel(r, "post_measurement").margin) <= 1e-9);

  // a precise measurement certifies the spread-times-disturbance bound
  CHECK(rel(r, "precise").applicable);
  CHECK(rel(r, "precise").satisfied);

  // the object keeps nothing of its momentum profile: the output spread is
  // the probe's own momentum spread
  CHECK(r.sigma_b_post == doctest::Approx(sp).epsilon(1e-9));

  CHECK(r.flags.unbiased_noise);
  CHECK(r.flags.independent_noise);
  CHECK(r.flags.n_commutes_b);
  CHECK_FALSE(r.flags.unbiased_disturbance);
  CHECK_FALSE(r.flags.independent_disturbance);
  CHECK_FALSE(r.flags.d_commutes_a);
  CHECK_FALSE(implies_product_bound(r.flags));
}

TEST_CASE("projective update realizes the known qubit trade-off") {
  const Observable a{pauli_z()}, b{pauli_x()};
  const State rho = plus_y();
  IndirectModel m = realize_instrument(luders_instrument(a));

  UncertaintyReport r = evaluate(m, a, b, rho);
  check_report_arithmetic(r);

  CHECK(r.epsilon <= 1e-12);
  CHECK(r.eta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r.sigma_a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.sigma_x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.sigma_b_post == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_FALSE(rel(r, "heisenberg").satisfied);
  CHECK(rel(r, "heisenberg").margin == doctest::Approx(-1.0).epsilon(1e-9));
  check_theorem_rows(r);
  CHECK(std::abs(rel(r, "uvur").margin) <= 1e-9);
  CHECK(std::abs(rel(r, "post_measurement").margin) <= 1e-9);

  CHECK(rel(r, "precise").applicable);
  CHECK(rel(r, "precise").satisfied);
  CHECK(rel(r, "precise").lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK_FALSE(rel(r, "nondisturbing").applicable);

  CHECK(r.flags.unbiased_noise);
  CHECK(r.flags.independent_noise);
  CHECK(r.flags.n_commutes_b);
  CHECK_FALSE(r.flags.unbiased_disturbance);
  CHECK_FALSE(r.flags.independent_disturbance);
  CHECK_FALSE(r.flags.d_commutes_a);
}

TEST_CASE("reading the probe alone leaves the object untouched") {
  sampling::Rng rng(601);
  State sigma = sampling::random_state(rng, 3);
  Observable pointer = sampling::random_observable(rng, 3);
  IndirectModel m(2, 3, sigma, CMatrix::Identity(6, 6), pointer);
  const Observable a{pauli_z()}, b{pauli_x()};
  const State rho = plus_y();

  UncertaintyReport r = evaluate(m, a, b, rho);
  check_report_arithmetic(r);
  CHECK(r.eta <= 1e-12);

  // pointer statistics never mention the object, so the rms gap splits into
  // spread of a, pointer spread, and the offset between their means
  double xbar = 0.0, x2bar = 0.0;
  for (const auto& branch : spectral_measure(pointer).branches) {
    const double prob = trace_product(branch.projector, sigma.matrix).real();
    xbar += branch.value * prob;
    x2bar += branch.value * branch.value * prob;
  }
  const double mu = mean(a, rho);
  const double expected2 =
      r.sigma_a * r.sigma_a + (mu - xbar) * (mu - xbar) + (x2bar - xbar * xbar);
  CHECK(r.epsilon * r.epsilon == doctest::Approx(expected2).epsilon(1e-9));

  CHECK(rel(r, "nondisturbing").applicable);
  CHECK(rel(r, "nondisturbing").satisfied);
  CHECK_FALSE(rel(r, "heisenberg").satisfied);
  check_theorem_rows(r);

  CHECK(r.flags.unbiased_disturbance);
  CHECK(r.flags.independent_disturbance);
  CHECK(r.flags.d_commutes_a);
  CHECK_FALSE(r.flags.unbiased_noise);
  CHECK_FALSE(r.flags.independent_noise);
  CHECK_FALSE(r.flags.n_commutes_b);
  CHECK_FALSE(implies_product_bound(r.flags));
}

TEST_CASE("structural flags certify the product bound when they hold") {
  sampling::Rng rng(602);
  State sigma = sampling::random_state(rng, 3);
  Observable pointer = sampling::random_observable(rng, 3);
  IndirectModel m(2, 3, sigma, CMatrix::Identity(6, 6), pointer);
  const Observable b{pauli_x()};

  // pointer noise on a null observable is a probe property: scalar, so the
  // independence pair holds and the product bound is certified
  const Observable zero{CMatrix::Zero(2, 2)};
  ConditionFlags f = classify_hur_conditions(m, zero, b);
  CHECK(f.independent_noise);
  CHECK(f.independent_disturbance);
  CHECK(implies_product_bound(f));
  UncertaintyReport r = evaluate(m, zero, b, plus_y());
  CHECK(rel(r, "heisenberg").satisfied);
  CHECK(same_flags(r.flags, f));

  // the pointer mean is an offset, not a multiple of the identity scaling
  // with the observable, so the noise is independent yet biased
  CHECK_FALSE(f.unbiased_noise);

  // a pointer-shift readout of sigma_z with a tight centered probe is
  // unbiased; measuring the same observable it also leaves it undisturbed
  CyclicGrid g(16, 1.0, 1.0);
  const Observable a{pauli_z()};
  IndirectModel canon = canonical_model(a, gaussian_state(g, 0.0, 1.0));
  ConditionFlags fc = classify_hur_conditions(canon, a, b);
  CHECK(fc.unbiased_noise);
  CHECK(fc.independent_noise);
  CHECK(fc.n_commutes_b);
  CHECK_FALSE(fc.unbiased_disturbance);
  CHECK_FALSE(fc.independent_disturbance);
  CHECK_FALSE(fc.d_commutes_a);
  CHECK_FALSE(implies_product_bound(fc));

  ConditionFlags fz = classify_hur_conditions(canon, a, a);
  CHECK(fz.unbiased_noise);
  CHECK(fz.unbiased_disturbance);
  CHECK(implies_product_bound(fz));
  UncertaintyReport rz = evaluate(canon, a, a, plus_y());
  CHECK(rel(rz, "heisenberg").satisfied);
}

TEST_CASE("joint-space conditions imply the averaged ones") {
  sampling::Rng rng(603);
  State sigma = sampling::random_state(rng, 3);
  Observable pointer = sampling::random_observable(rng, 3);
  IndirectModel m(2, 3, sigma, CMatrix::Identity(6, 6), pointer);
  const Observable zero{CMatrix::Zero(2, 2)};
  const Observable a{pauli_z()}, b{pauli_x()};

  // no coupling and no object part: the noise operator is pure probe, the
  // disturbance operator vanishes
  ModelConditionFlags mz = classify_model_conditions(m, zero, b);
  CHECK(mz.noise_commutes_b_in);
  CHECK(mz.disturbance_commutes_a_in);
  CHECK(mz.noise_probe_only);
  CHECK(mz.disturbance_probe_only);

  // probe-only joint noise averages to a scalar for every object state
  ConditionFlags fz = classify_hur_conditions(m, zero, b);
  CHECK(fz.independent_noise);

  // with a nontrivial object observable the noise keeps an object part
  ModelConditionFlags ma = classify_model_conditions(m, a, b);
  CHECK_FALSE(ma.noise_commutes_b_in);
  CHECK_FALSE(ma.noise_probe_only);
  CHECK(ma.disturbance_commutes_a_in);
  CHECK(ma.disturbance_probe_only);
}

TEST_CASE("random schemes obey every theorem row") {
  sampling::Rng rng(604);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = rng.uniform_int(2, 4);
    const int dp = rng.uniform_int(2, 3);
    IndirectModel m = random_model(rng, d, dp, trial % 3 == 0);
    const Observable a = sampling::random_observable(rng, d);
    const Observable b = sampling::random_observable(rng, d);
    const State rho = sampling::random_state(rng, d);

    UncertaintyReport r = evaluate(m, a, b, rho);
    CHECK(rel(r, "uvur").margin >= -tol::margin);
    CHECK(rel(r, "gur").margin >= -tol::margin);
    CHECK(rel(r, "sigma_x").margin >= -tol::margin);
    CHECK(rel(r, "post_measurement").margin >= -tol::margin);

    // conditional rows and the certification never misfire
    if (implies_product_bound(r.flags)) CHECK(rel(r, "heisenberg").satisfied);
    if (rel(r, "nondisturbing").applicable) CHECK(rel(r, "nondisturbing").satisfied);
    if (rel(r, "precise").applicable) CHECK(rel(r, "precise").satisfied);

    // the nonselective output spread moves at most by the rms disturbance
    CHECK(r.sigma_b_post <= r.sigma_b + r.eta + tol::margin);
    CHECK(r.sigma_b_post >= r.sigma_b - r.eta - tol::margin);

    if (trial % 50 == 0) {
      check_report_arithmetic(r);
      CHECK(same_flags(r.flags, classify_hur_conditions(m, a, b)));
    }
  }
}

TEST_CASE("outcome spread and noise bound each other both ways") {
  sampling::Rng rng(605);
  const Observable a = sampling::random_observable(rng, 4);
  const State rho = sampling::random_state(rng, 4);

  // reading a itself: no gap, no bias, identical spreads; the gap is a
  // square root of a cancellation, so its floor is sqrt(machine epsilon)
  Povm exact = spectral_povm(a);
  TriangleReport t = triangle_report(exact, a, rho);
  CHECK(t.epsilon <= 1e-7);
  CHECK(t.bias <= 1e-9);
  CHECK(std::abs(t.sigma_x - t.sigma_a) <= 1e-9);
  for (const char* key : {"output_spread", "input_spread", "noise", "spread_gap"})
    CHECK(t.bounds.at(key).satisfied);

  // a constant readout: zero spread, gap carried by spread of a plus bias
  Povm constant({{1.7, identity(4)}});
  TriangleReport tc = triangle_report(constant, a, rho);
  CHECK(tc.sigma_x == 0.0);
  const double off = mean(a, rho) - 1.7;
  CHECK(tc.epsilon ==
        doctest::Approx(std::sqrt(t.sigma_a * t.sigma_a + off * off)).epsilon(1e-12));
  for (const char* key : {"output_spread", "input_spread", "noise", "spread_gap"})
    CHECK(tc.bounds.at(key).satisfied);

  // random measures: every bound holds with the stated margin
  for (int trial = 0; trial < 100; ++trial) {
    const int d = rng.uniform_int(2, 4);
    IndirectModel m = random_model(rng, d, rng.uniform_int(2, 3));
    const Observable obs = sampling::random_observable(rng, d);
    const State state = sampling::random_state(rng, d);
    TriangleReport tr = triangle_report(derive_povm(m), obs, state);
    for (const char* key : {"output_spread", "input_spread", "noise", "spread_gap"})
      CHECK(tr.bounds.at(key).margin >= -tol::margin);
    CHECK(tr.bias <= tr.epsilon + tol::margin);  // mean gap below rms gap
  }

  // the rms gap agrees between the measure route and the scheme route
  IndirectModel m = random_model(rng, 3, 2);
  const Observable obs = sampling::random_observable(rng, 3);
  const State state = sampling::random_state(rng, 3);
  TriangleReport tm = triangle_report(derive_povm(m), obs, state);
  UncertaintyReport rm = evaluate(m, obs, sampling::random_observable(rng, 3), state);
  CHECK(tm.epsilon == doctest::Approx(rm.epsilon).epsilon(1e-9));
}

TEST_CASE("mismatched dimensions are rejected") {
  sampling::Rng rng(606);
  IndirectModel m = random_model(rng, 2, 2);
  const Observable a2 = sampling::random_observable(rng, 2);
  const Observable a3 = sampling::random_observable(rng, 3);
  const State rho2 = sampling::random_state(rng, 2);
  const State rho3 = sampling::random_state(rng, 3);

  CHECK_THROWS_AS(evaluate(m, a3, a3, rho3), ValidationError);
  CHECK_THROWS_AS(evaluate(m, a2, a3, rho2), ValidationError);
  CHECK_THROWS_AS(evaluate(m, a2, a2, rho3), ValidationError);
  CHECK_THROWS_AS(classify_hur_conditions(m, a3, a2), ValidationError);
  CHECK_THROWS_AS(classify_model_conditions(m, a2, a3), ValidationError);
  CHECK_THROWS_AS(triangle_report(derive_povm(m), a2, rho3), ValidationError);
}
