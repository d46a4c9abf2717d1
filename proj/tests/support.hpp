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

#include <initializer_list>

#include <qmeter/operators.hpp>

namespace qtest {

using qmeter::CMatrix;
using qmeter::cplx;
using qmeter::CVector;

inline CMatrix identity(int d) { return CMatrix::Identity(d, d); }

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline CVector ket(std::initializer_list<cplx> entries) {
  CVector v(static_cast<int>(entries.size()));
  int i = 0;
  for (const auto& e : entries) v(i++) = e;
  return v;
}

// Independent Kronecker oracle: expand every index tuple explicitly.
inline CMatrix kron_oracle(const CMatrix& a, const CMatrix& b) {
  const int ar = static_cast<int>(a.rows()), ac = static_cast<int>(a.cols());
  const int br = static_cast<int>(b.rows()), bc = static_cast<int>(b.cols());
  CMatrix out(ar * br, ac * bc);
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < ac; ++j)
      for (int k = 0; k < br; ++k)
        for (int l = 0; l < bc; ++l) out(i * br + k, j * bc + l) = a(i, j) * b(k, l);
  return out;
}

// Independent probe-trace oracle: explicit sum over the probe basis.
inline CMatrix ptrace_oracle(const CMatrix& c, int ds, int dp) {
  CMatrix out = CMatrix::Zero(ds, ds);
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < ds; ++j)
      for (int k = 0; k < dp; ++k) out(i, j) += c(i * dp + k, j * dp + k);
  return out;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qtest
