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

#include <utility>
#include <vector>

#include "qmeter/types.hpp"

namespace qmeter {

// Hermitian matrix on a finite-dimensional space.
struct Observable {
  CMatrix matrix;

  Observable() = default;
  explicit Observable(CMatrix m);
  int dim() const { return static_cast<int>(matrix.rows()); }
};

// Density matrix: Hermitian, positive semidefinite, unit trace.
// Vector states enter through State::pure.
struct State {
  CMatrix matrix;

  State() = default;
  explicit State(CMatrix m);
  static State pure(const CVector& psi);
  int dim() const { return static_cast<int>(matrix.rows()); }
};

struct SpectralBranch {
  double value;
  CMatrix projector;
};

// Eigenvalue branches of a Hermitian matrix: projectors are mutually
// orthogonal idempotents summing to the identity, values strictly increasing.
struct SpectralMeasure {
  std::vector<SpectralBranch> branches;

  int dim() const {
    return branches.empty() ? 0 : static_cast<int>(branches.front().projector.rows());
  }
  // Sum of projectors whose branch index is listed in `which`.
  CMatrix projection(const std::vector<int>& which) const;
};

// Kronecker product, first factor = object system throughout the library.
CMatrix tensor(const CMatrix& a, const CMatrix& b);

// Trace over the second (probe) factor of a (dim_s*dim_p)-square matrix.
CMatrix partial_trace_probe(const CMatrix& c, int dim_s, int dim_p);

// E_sigma(C): trace over the probe of C (I (x) sigma).  Satisfies
// Tr[E_sigma(C) rho] = Tr[C (rho (x) sigma)] for every object state rho.
CMatrix conditional_expectation(const CMatrix& c, const State& sigma, int dim_s);

// Eigendecomposition with eigenvalues closer than tol_cluster merged into
// a single degenerate branch.
SpectralMeasure spectral_measure(const Observable& a, double tol_cluster = tol::cluster);

double mean(const Observable& a, const State& rho);
// Standard deviation; roundoff-negative variance is clamped to zero.
double std_dev(const Observable& a, const State& rho);

// (eigenvalue, probability) pairs, ascending in eigenvalue.
std::vector<std::pair<double, double>> born_distribution(const Observable& a, const State& rho);

// (1/2)|Tr([a, b] rho)|, the lower bound matched against std-dev products.
double commutator_bound(const Observable& a, const Observable& b, const State& rho);

// Hermitian square root with eigenvalues below zero clamped (guarded by
// tol::psd); shared by effect roots and state roots.
CMatrix psd_sqrt(const CMatrix& m);
double min_eigenvalue(const CMatrix& hermitian);

}  // namespace qmeter
