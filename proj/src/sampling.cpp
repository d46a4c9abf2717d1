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

#include "qmeter/sampling.hpp"

#include <cmath>

namespace qmeter::sampling {

double Rng::uniform() {
  // 53 uniform mantissa bits
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

cplx Rng::normal_cplx() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) / std::sqrt(2.0);
}

CVector random_unit_vector(Rng& rng, int d) {
  CVector v(d);
  double norm = 0;
  do {
    for (int i = 0; i < d; ++i) v(i) = rng.normal_cplx();
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

CMatrix random_matrix(Rng& rng, int rows, int cols, double scale) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = scale * rng.normal_cplx();
  return m;
}

CMatrix random_hermitian(Rng& rng, int d, double scale) {
  CMatrix g = random_matrix(rng, d, d, scale);
  return (g + g.adjoint()) / 2.0;
}

CMatrix random_unitary(Rng& rng, int d) {
  CMatrix g = random_matrix(rng, d, d);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx diag = r(j, j);
    const double mag = std::abs(diag);
    q.col(j) *= (mag > 0) ? diag / mag : cplx(1.0, 0.0);
  }
  return q;
}

Observable random_observable(Rng& rng, int d, double scale) {
  return Observable(random_hermitian(rng, d, scale));
}

State random_state(Rng& rng, int d, int rank) {
  if (rank <= 0 || rank > d) rank = d;
  CMatrix g = random_matrix(rng, d, rank);
  CMatrix rho = g * g.adjoint();
  return State(rho / rho.trace().real());
}

namespace {

// Right-normalize a family of Ginibre blocks into a Kraus family.
std::vector<CMatrix> normalized_kraus(Rng& rng, int d, int count) {
  std::vector<CMatrix> raw;
  CMatrix total = CMatrix::Zero(d, d);
  for (int i = 0; i < count; ++i) {
    raw.push_back(random_matrix(rng, d, d));
    total += raw.back().adjoint() * raw.back();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(total);
  const CMatrix inv_root = es.operatorInverseSqrt();
  for (auto& k : raw) k = k * inv_root;
  return raw;
}

}  // namespace

Channel random_channel(Rng& rng, int d, int n_kraus) {
  return Channel(normalized_kraus(rng, d, n_kraus));
}

Instrument random_instrument(Rng& rng, int d, int n_outcomes, int kraus_per_outcome) {
  std::vector<CMatrix> all = normalized_kraus(rng, d, n_outcomes * kraus_per_outcome);
  std::vector<InstrumentOutcome> outs;
  for (int i = 0; i < n_outcomes; ++i) {
    std::vector<CMatrix> ops(all.begin() + i * kraus_per_outcome,
                             all.begin() + (i + 1) * kraus_per_outcome);
    outs.push_back({static_cast<double>(i) + rng.uniform(0.0, 0.4), std::move(ops)});
  }
  return Instrument(std::move(outs));
}

Povm random_povm(Rng& rng, int d, int n_outcomes) {
  std::vector<CMatrix> squares;
  CMatrix total = CMatrix::Zero(d, d);
  for (int i = 0; i < n_outcomes; ++i) {
    CMatrix g = random_matrix(rng, d, d);
    squares.push_back(g * g.adjoint());
    total += squares.back();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(total);
  CMatrix inv_root = es.operatorInverseSqrt();
  std::vector<PovmOutcome> outs;
  outs.reserve(n_outcomes);
  for (int i = 0; i < n_outcomes; ++i) {
    CMatrix f = inv_root * squares[i] * inv_root;
    outs.push_back({static_cast<double>(i) + rng.uniform(0.0, 0.4), (f + f.adjoint()) / 2.0});
  }
  return Povm(std::move(outs));
}

}  // namespace qmeter::sampling
