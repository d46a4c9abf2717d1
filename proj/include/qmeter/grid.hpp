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

#include <vector>

#include "qmeter/operators.hpp"

namespace qmeter {

// Periodic position lattice: n points with the given spacing.  Coordinates
// are j*spacing folded into (-L/2, L/2] where L = n*spacing, so wrap-around
// arithmetic on indices is exact while values stay centered.
struct CyclicGrid {
  int n = 0;
  double spacing = 1.0;
  double hbar = 1.0;

  CyclicGrid() = default;
  explicit CyclicGrid(int n_points, double step = 1.0, double planck = 1.0);
  double length() const { return n * spacing; }
  double coordinate(int j) const;
  std::vector<double> coordinates() const;
  // One value per lattice index, hbar * 2*pi*k'/(n*spacing) with k' the
  // signed alias of k in [-n/2, n/2).
  std::vector<double> momenta() const;
};

struct GridWavefunction {
  CyclicGrid grid;
  CVector amplitudes;

  GridWavefunction() = default;
  GridWavefunction(CyclicGrid g, CVector amp);  // checks unit norm
};

// Diagonal in the lattice basis with the folded coordinates.
Observable position_op(const CyclicGrid& g);
// Diagonal in the discrete Fourier basis; built by DFT conjugation.
Observable momentum_op(const CyclicGrid& g);
// Forward DFT matrix, (k, j) entry exp(-2*pi*i*k*j/n)/sqrt(n).
CMatrix dft_matrix(int n);
// Wrapped (periodized) Gaussian, normalized on the lattice.
GridWavefunction gaussian_state(const CyclicGrid& g, double center, double width);

}  // namespace qmeter
