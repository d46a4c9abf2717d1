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

#include "qmeter/grid.hpp"

#include <cmath>
#include <utility>

namespace qmeter {

CyclicGrid::CyclicGrid(int n_points, double step, double planck)
    : n(n_points), spacing(step), hbar(planck) {
  if (n < 4) throw ValidationError("grid needs at least 4 points");
  if (!(spacing > 0.0)) throw ValidationError("grid spacing must be positive");
  if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
}

double CyclicGrid::coordinate(int j) const {
  const double l = length();
  double x = std::fmod(j * spacing, l);
  if (x < 0) x += l;
  if (x > l / 2.0) x -= l;  // fold into (-L/2, L/2], keeping +L/2
  return x;
}

std::vector<double> CyclicGrid::coordinates() const {
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = coordinate(j);
  return v;
}

std::vector<double> CyclicGrid::momenta() const {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) {
    const int alias = (k < (n + 1) / 2) ? k : k - n;
    v[k] = hbar * 2.0 * M_PI * alias / (n * spacing);
  }
  return v;
}

GridWavefunction::GridWavefunction(CyclicGrid g, CVector amp)
    : grid(std::move(g)), amplitudes(std::move(amp)) {
  if (amplitudes.size() != grid.n) {
    throw ValidationError("wavefunction length does not match the grid");
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
    throw ValidationError("wavefunction must have unit norm");
  }
}

Observable position_op(const CyclicGrid& g) {
  CMatrix m = CMatrix::Zero(g.n, g.n);
  for (int j = 0; j < g.n; ++j) m(j, j) = g.coordinate(j);
  return Observable(m);
}

CMatrix dft_matrix(int n) {
  CMatrix f(n, n);
  const double root = std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const double phase = -2.0 * M_PI * k * j / n;
      f(k, j) = cplx(std::cos(phase), std::sin(phase)) / root;
    }
  }
  return f;
}

Observable momentum_op(const CyclicGrid& g) {
  const CMatrix f = dft_matrix(g.n);
  const std::vector<double> w = g.momenta();
  CMatrix diag = CMatrix::Zero(g.n, g.n);
  for (int k = 0; k < g.n; ++k) diag(k, k) = w[k];
  CMatrix p = f.adjoint() * diag * f;
  return Observable((p + p.adjoint()) / 2.0);
}

GridWavefunction gaussian_state(const CyclicGrid& g, double center, double width) {
  if (!(width > 0.0)) throw ValidationError("gaussian width must be positive");
  const double l = g.length();
  CVector amp(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double x = g.coordinate(j);
    double value = 0.0;
    for (int wrap = -3; wrap <= 3; ++wrap) {
      const double gap = x - center + wrap * l;
      value += std::exp(-gap * gap / (4.0 * width * width));
    }
    amp(j) = value;
  }
  const double norm = amp.norm();
  if (norm <= 0.0) throw NumericError("gaussian amplitudes vanished");
  return GridWavefunction(g, amp / norm);
}

}  // namespace qmeter
