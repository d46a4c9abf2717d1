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

#include "qmeter/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qmeter {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double herm_deviation(const CMatrix& m) { return max_abs(m - m.adjoint()); }

bool is_hermitian(const CMatrix& m, double tolerance) {
  return m.rows() == m.cols() && herm_deviation(m) <= tolerance;
}

bool is_identity(const CMatrix& m, double tolerance) {
  return m.rows() == m.cols() &&
         max_abs(m - CMatrix::Identity(m.rows(), m.cols())) <= tolerance;
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

cplx trace_product(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

namespace {

Eigen::SelfAdjointEigenSolver<CMatrix> solve_hermitian(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw NumericError("hermitian eigensolver failed");
  return solver;
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw ValidationError(std::string(what) + ": matrix not square");
  if (!all_finite(m)) throw ValidationError(std::string(what) + ": non-finite entries");
}

}  // namespace

Observable::Observable(CMatrix m) : matrix(std::move(m)) {
  require_square(matrix, "observable");
  if (herm_deviation(matrix) > tol::herm)
    throw ValidationError("observable: matrix not hermitian");
}

State::State(CMatrix m) : matrix(std::move(m)) {
  require_square(matrix, "state");
  if (herm_deviation(matrix) > tol::herm) throw ValidationError("state: matrix not hermitian");
  if (std::abs(matrix.trace() - cplx(1.0, 0.0)) > tol::trace)
    throw ValidationError("state: trace differs from one");
  if (min_eigenvalue(matrix) < -tol::psd)
    throw ValidationError("state: negative eigenvalue");
}

State State::pure(const CVector& psi) {
  const double norm = psi.norm();
  if (norm <= 0 || !std::isfinite(norm)) throw ValidationError("state: null vector");
  CVector unit = psi / norm;
  return State(unit * unit.adjoint());
}

CMatrix SpectralMeasure::projection(const std::vector<int>& which) const {
  const int d = dim();
  CMatrix out = CMatrix::Zero(d, d);
  for (int idx : which) {
    if (idx < 0 || idx >= static_cast<int>(branches.size()))
      throw ValidationError("spectral measure: branch index out of range");
    out += branches[static_cast<std::size_t>(idx)].projector;
  }
  return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_trace_probe(const CMatrix& c, int dim_s, int dim_p) {
  require_square(c, "partial trace");
  if (dim_s <= 0 || dim_p <= 0 || c.rows() != Eigen::Index(dim_s) * dim_p)
    throw ValidationError("partial trace: dimensions do not factor the matrix");
  CMatrix out(dim_s, dim_s);
  for (int i = 0; i < dim_s; ++i)
    for (int j = 0; j < dim_s; ++j)
      out(i, j) = c.block(Eigen::Index(i) * dim_p, Eigen::Index(j) * dim_p, dim_p, dim_p).trace();
  return out;
}

CMatrix conditional_expectation(const CMatrix& c, const State& sigma, int dim_s) {
  require_square(c, "conditional expectation");
  const int dim_p = sigma.dim();
  if (dim_s <= 0 || c.rows() != Eigen::Index(dim_s) * dim_p)
    throw ValidationError("conditional expectation: dimensions do not factor the matrix");
  CMatrix out(dim_s, dim_s);
  for (int i = 0; i < dim_s; ++i)
    for (int j = 0; j < dim_s; ++j)
      out(i, j) = trace_product(
          c.block(Eigen::Index(i) * dim_p, Eigen::Index(j) * dim_p, dim_p, dim_p), sigma.matrix);
  return out;
}

SpectralMeasure spectral_measure(const Observable& a, double tol_cluster) {
  const int d = a.dim();
  Eigen::VectorXd values(d);
  CMatrix vectors(d, d);

  const Eigen::VectorXd diag = a.matrix.diagonal().real();
  if (max_abs(a.matrix - CMatrix(diag.cast<cplx>().asDiagonal())) == 0.0) {
    // exactly diagonal: sort basis indices directly so the stored entries
    // come back bit-exact (the eigensolver's internal rescaling can move
    // them by an ulp, which would break exact-value outcome addressing)
    std::vector<int> order(d);
    for (int k = 0; k < d; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&diag](int p, int q) { return diag(p) < diag(q); });
    vectors = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      vectors(order[k], k) = 1.0;
      values(k) = diag(order[k]);
    }
  } else {
    const auto solver = solve_hermitian(a.matrix);
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }

  SpectralMeasure sm;
  int start = 0;
  while (start < d) {
    int stop = start + 1;
    while (stop < d && values(stop) - values(stop - 1) <= tol_cluster) ++stop;
    CMatrix projector = CMatrix::Zero(d, d);
    double value = 0;
    for (int k = start; k < stop; ++k) {
      projector += vectors.col(k) * vectors.col(k).adjoint();
      value += values(k);
    }
    sm.branches.push_back({value / (stop - start), projector});
    start = stop;
  }
  return sm;
}

double mean(const Observable& a, const State& rho) {
  if (a.dim() != rho.dim()) throw ValidationError("mean: dimension mismatch");
  return trace_product(a.matrix, rho.matrix).real();
}

double std_dev(const Observable& a, const State& rho) {
  if (a.dim() != rho.dim()) throw ValidationError("std dev: dimension mismatch");
  const double first = trace_product(a.matrix, rho.matrix).real();
  const double second = trace_product(a.matrix * a.matrix, rho.matrix).real();
  return std::sqrt(std::max(0.0, second - first * first));
}

std::vector<std::pair<double, double>> born_distribution(const Observable& a, const State& rho) {
  if (a.dim() != rho.dim()) throw ValidationError("born distribution: dimension mismatch");
  std::vector<std::pair<double, double>> dist;
  for (const auto& br : spectral_measure(a).branches) {
    const double p = trace_product(br.projector, rho.matrix).real();
    dist.emplace_back(br.value, std::max(0.0, p));
  }
  return dist;
}

double commutator_bound(const Observable& a, const Observable& b, const State& rho) {
  if (a.dim() != b.dim() || a.dim() != rho.dim())
    throw ValidationError("commutator bound: dimension mismatch");
  return 0.5 * std::abs(trace_product(commutator(a.matrix, b.matrix), rho.matrix));
}

CMatrix psd_sqrt(const CMatrix& m) {
  require_square(m, "psd sqrt");
  if (herm_deviation(m) > tol::herm) throw ValidationError("psd sqrt: matrix not hermitian");
  const auto solver = solve_hermitian(m);
  const auto& values = solver.eigenvalues();
  if (values.minCoeff() < -tol::psd) throw NumericError("psd sqrt: matrix not positive");
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const double lambda = std::max(0.0, values(k));
    out += std::sqrt(lambda) * solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
  }
  return out;
}

double min_eigenvalue(const CMatrix& hermitian) {
  require_square(hermitian, "min eigenvalue");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("hermitian eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

}  // namespace qmeter
