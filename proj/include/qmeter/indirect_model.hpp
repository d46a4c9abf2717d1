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

#include "qmeter/grid.hpp"
#include "qmeter/instrument.hpp"
#include "qmeter/operators.hpp"
#include "qmeter/povm.hpp"

namespace qmeter {

// Measurement scheme: probe state sigma, coupling unitary on object x probe,
// and a pointer observable read off the probe afterwards.  The object is the
// first tensor factor; joint basis index = i_object * dim_probe + i_probe.
//
// The coupling is stored either as a dense joint unitary or as a basis
// permutation (u |r> = |perm[r]>).  The permutation form keeps lattice
// models exact and lets every application run without materializing the
// joint matrix.
struct IndirectModel {
  int dim_object = 0;
  int dim_probe = 0;
  State probe_state;
  CMatrix unitary;               // dense form; empty when permutation is set
  std::vector<int> permutation;  // permutation form; empty when dense
  Observable probe_observable;
  double hbar = 1.0;

  IndirectModel() = default;
  IndirectModel(int d_object, int d_probe, State sigma, CMatrix u, Observable pointer,
                double planck = 1.0);
  static IndirectModel from_permutation(int d_object, int d_probe, State sigma,
                                        std::vector<int> perm, Observable pointer,
                                        double planck = 1.0);

  bool is_permutation() const { return !permutation.empty(); }
  int joint_dim() const { return dim_object * dim_probe; }
  // Materializes the permutation when needed; intended for small joint spaces.
  CMatrix dense_unitary() const;

  CVector apply_unitary(const CVector& v) const;
  CVector apply_unitary_adjoint(const CVector& v) const;
  // (A (x) I) v  and  (I (x) M) v without forming joint matrices.
  CVector apply_object(const CMatrix& a, const CVector& v) const;
  CVector apply_probe(const CMatrix& mm, const CVector& v) const;
  // Heisenberg-picture pointer after the coupling: U^dag (I (x) M) U v.
  CVector apply_pointer_out(const CVector& v) const;
  // Heisenberg-picture object observable after the coupling.
  CVector apply_object_out(const CMatrix& b, const CVector& v) const;
  // (pointer-out minus A-in) v  and  (B-out minus B-in) v.
  CVector apply_noise(const CMatrix& a, const CVector& v) const;
  CVector apply_disturbance(const CMatrix& b, const CVector& v) const;
};

// Measure the scheme induces on the object: one outcome per spectral branch
// of the pointer.
Povm derive_povm(const IndirectModel& m);
// State-update map of the scheme, in Kraus form.  Kraus blocks are indexed
// by (pointer branch, branch eigenvector, probe-state eigenvector).
Instrument derive_instrument(const IndirectModel& m);

// Dense joint-space forms; meant for small models (tests, spot checks).
Observable noise_operator(const IndirectModel& m, const Observable& a);
Observable disturbance_operator(const IndirectModel& m, const Observable& b);

// Root-mean-square gap between the pointer reading and a sharp reading of a,
// evaluated in rho (x) probe_state.
double rms_noise(const IndirectModel& m, const Observable& a, const State& rho);
// Root-mean-square change the coupling inflicts on b.
double rms_disturbance(const IndirectModel& m, const Observable& b, const State& rho);

// Build a scheme whose derived instrument reproduces the given one: pure
// probe, block isometry from the Kraus family completed to a unitary.
IndirectModel realize_instrument(const Instrument& ins);
// Scheme reproducing the measure's statistics (fixed-output instrument).
IndirectModel dilate_povm(const Povm& pi);
// Scheme whose nonselective channel is the given one; pointer is a projection.
IndirectModel dilate_channel(const Channel& ch);

// For a pure probe: compare the instrument dual against the compressed form
// V^dag (A (x) pointer-projectors) V with V psi = U (psi (x) xi).  Returns the
// largest entry gap.
double isometry_representation_check(const IndirectModel& m, const Observable& a,
                                     const std::vector<double>& subset);

// Pointer-shift coupling: the probe lattice is displaced by the eigenvalue
// of a, which must sit on the lattice (integer multiple of the spacing).
// The probe wavefunction carries the lattice; the pointer is its position.
IndirectModel canonical_model(const Observable& a, const GridWavefunction& probe);

}  // namespace qmeter
