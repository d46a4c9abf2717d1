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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qmeter {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

// Raised when an object fails its construction invariants or an argument
// violates a documented precondition (dimension mismatch, non-Hermitian
// input, unknown outcome value, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on numerical failure inside an otherwise valid computation
// (negative radicand beyond tolerance, completion rank defect, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

namespace tol {
inline constexpr double herm = 1e-9;     // Hermiticity validation
inline constexpr double psd = 1e-9;      // eigenvalue floor for positivity
inline constexpr double trace = 1e-9;    // unit-trace validation
inline constexpr double prob = 1e-9;     // completeness and probability sums
inline constexpr double cluster = 1e-8;  // eigenvalue merging
inline constexpr double flag = 1e-8;     // norm threshold for condition flags
inline constexpr double margin = 1e-9;   // inequality margin in reports
}  // namespace tol

double max_abs(const CMatrix& m);
// max |M - M^dagger| entrywise
double herm_deviation(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tolerance = tol::herm);
bool is_identity(const CMatrix& m, double tolerance);
bool all_finite(const CMatrix& m);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
// Tr[a b], exact complex value
cplx trace_product(const CMatrix& a, const CMatrix& b);

}  // namespace qmeter
