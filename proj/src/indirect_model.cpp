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

#include "qmeter/indirect_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace qmeter {

namespace {

constexpr double kWeightCutoff = 1e-13;

// Eigenvalues clustered like spectral_measure, but keeping the eigenvector
// columns of each branch (needed for Kraus extraction).
struct PointerBranch {
  double value;
  std::vector<int> columns;
};

struct PointerDecomposition {
  CMatrix vectors;
  std::vector<PointerBranch> branches;
};

PointerDecomposition decompose_pointer(const CMatrix& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd vals(n);

  PointerDecomposition out;
  const Eigen::VectorXd diag = m.diagonal().real();
  if (max_abs(m - CMatrix(diag.cast<cplx>().asDiagonal())) == 0.0) {
    // exactly diagonal: sort basis indices directly so the stored entries
    // come back bit-exact (the eigensolver's internal rescaling can move
    // them by an ulp, which would break exact-value outcome addressing)
    std::vector<int> order(n);
    for (int c = 0; c < n; ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(),
                     [&diag](int a, int b) { return diag(a) < diag(b); });
    out.vectors = CMatrix::Zero(n, n);
    for (int c = 0; c < n; ++c) {
      out.vectors(order[c], c) = 1.0;
      vals(c) = diag(order[c]);
    }
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    if (es.info() != Eigen::Success) throw NumericError("pointer eigendecomposition failed");
    out.vectors = es.eigenvectors();
    vals = es.eigenvalues();
  }

  for (int c = 0; c < n; ++c) {
    // chain clustering, same convention as spectral_measure
    if (out.branches.empty() || vals(c) - vals(c - 1) > tol::cluster) {
      out.branches.push_back({0.0, {}});
    }
    out.branches.back().columns.push_back(c);
  }
  for (auto& b : out.branches) {
    double acc = 0.0;
    for (int c : b.columns) acc += vals(c);
    b.value = acc / static_cast<double>(b.columns.size());
  }
  return out;
}

struct WeightedVector {
  double weight;
  CVector vector;
};

std::vector<WeightedVector> weighted_eigenvectors(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  if (es.info() != Eigen::Success) throw NumericError("state eigendecomposition failed");
  std::vector<WeightedVector> out;
  for (int c = 0; c < es.eigenvalues().size(); ++c) {
    if (es.eigenvalues()(c) > kWeightCutoff) {
      out.push_back({es.eigenvalues()(c), es.eigenvectors().col(c)});
    }
  }
  return out;
}

CVector product_vector(const CVector& object, const CVector& probe) {
  CVector joint(object.size() * probe.size());
  for (int i = 0; i < object.size(); ++i) {
    joint.segment(i * probe.size(), probe.size()) = object(i) * probe;
  }
  return joint;
}

}  // namespace

IndirectModel::IndirectModel(int d_object, int d_probe, State sigma, CMatrix u,
                             Observable pointer, double planck)
    : dim_object(d_object),
      dim_probe(d_probe),
      probe_state(std::move(sigma)),
      unitary(std::move(u)),
      probe_observable(std::move(pointer)),
      hbar(planck) {
  if (dim_object < 1 || dim_probe < 1) throw ValidationError("model dimensions must be positive");
  if (probe_state.dim() != dim_probe) throw ValidationError("probe state dimension mismatch");
  if (probe_observable.dim() != dim_probe) {
    throw ValidationError("pointer observable dimension mismatch");
  }
  const int jd = joint_dim();
  if (unitary.rows() != jd || unitary.cols() != jd) {
    throw ValidationError("coupling unitary has the wrong joint dimension");
  }
  if (!all_finite(unitary)) throw ValidationError("coupling unitary has non-finite entries");
  if (max_abs(unitary.adjoint() * unitary - CMatrix::Identity(jd, jd)) > 1e-9) {
    throw ValidationError("coupling matrix is not unitary");
  }
  if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
}

IndirectModel IndirectModel::from_permutation(int d_object, int d_probe, State sigma,
                                              std::vector<int> perm, Observable pointer,
                                              double planck) {
  IndirectModel m;
  m.dim_object = d_object;
  m.dim_probe = d_probe;
  m.probe_state = std::move(sigma);
  m.probe_observable = std::move(pointer);
  m.hbar = planck;
  if (d_object < 1 || d_probe < 1) throw ValidationError("model dimensions must be positive");
  if (m.probe_state.dim() != d_probe) throw ValidationError("probe state dimension mismatch");
  if (m.probe_observable.dim() != d_probe) {
    throw ValidationError("pointer observable dimension mismatch");
  }
  if (!(planck > 0.0)) throw ValidationError("hbar must be positive");
  const int jd = d_object * d_probe;
  if (static_cast<int>(perm.size()) != jd) throw ValidationError("permutation length mismatch");
  std::vector<bool> seen(jd, false);
  for (int target : perm) {
    if (target < 0 || target >= jd || seen[target]) {
      throw ValidationError("permutation is not a bijection on the joint basis");
    }
    seen[target] = true;
  }
  m.permutation = std::move(perm);
  return m;
}

CMatrix IndirectModel::dense_unitary() const {
  if (!is_permutation()) return unitary;
  CMatrix u = CMatrix::Zero(joint_dim(), joint_dim());
  for (int r = 0; r < joint_dim(); ++r) u(permutation[r], r) = 1.0;
  return u;
}

CVector IndirectModel::apply_unitary(const CVector& v) const {
  if (!is_permutation()) return unitary * v;
  CVector out(v.size());
  for (int r = 0; r < v.size(); ++r) out(permutation[r]) = v(r);
  return out;
}

CVector IndirectModel::apply_unitary_adjoint(const CVector& v) const {
  if (!is_permutation()) return unitary.adjoint() * v;
  CVector out(v.size());
  for (int r = 0; r < v.size(); ++r) out(r) = v(permutation[r]);
  return out;
}

CVector IndirectModel::apply_object(const CMatrix& a, const CVector& v) const {
  CVector out(v.size());
  Eigen::Map<const CMatrix> in(v.data(), dim_probe, dim_object);
  Eigen::Map<CMatrix> mapped(out.data(), dim_probe, dim_object);
  mapped = in * a.transpose();
  return out;
}

CVector IndirectModel::apply_probe(const CMatrix& mm, const CVector& v) const {
  CVector out(v.size());
  Eigen::Map<const CMatrix> in(v.data(), dim_probe, dim_object);
  Eigen::Map<CMatrix> mapped(out.data(), dim_probe, dim_object);
  mapped = mm * in;
  return out;
}

CVector IndirectModel::apply_pointer_out(const CVector& v) const {
  return apply_unitary_adjoint(apply_probe(probe_observable.matrix, apply_unitary(v)));
}

CVector IndirectModel::apply_object_out(const CMatrix& b, const CVector& v) const {
  return apply_unitary_adjoint(apply_object(b, apply_unitary(v)));
}

CVector IndirectModel::apply_noise(const CMatrix& a, const CVector& v) const {
  return apply_pointer_out(v) - apply_object(a, v);
}

CVector IndirectModel::apply_disturbance(const CMatrix& b, const CVector& v) const {
  return apply_object_out(b, v) - apply_object(b, v);
}

Instrument derive_instrument(const IndirectModel& m) {
  const int d = m.dim_object;
  const int dp = m.dim_probe;
  const PointerDecomposition pointer = decompose_pointer(m.probe_observable.matrix);
  const std::vector<WeightedVector> probe = weighted_eigenvectors(m.probe_state.matrix);

  std::vector<InstrumentOutcome> outs;
  outs.reserve(pointer.branches.size());
  for (const auto& branch : pointer.branches) outs.push_back({branch.value, {}});

  for (const auto& pk : probe) {
    // columns of U (I (x) chi_k): the coupled image of each object basis state
    CMatrix coupled(d * dp, d);
    CVector basis = CVector::Zero(d);
    for (int col = 0; col < d; ++col) {
      basis(col) = 1.0;
      coupled.col(col) = m.apply_unitary(product_vector(basis, pk.vector));
      basis(col) = 0.0;
    }
    const double root = std::sqrt(pk.weight);
    for (std::size_t bi = 0; bi < pointer.branches.size(); ++bi) {
      for (int c : pointer.branches[bi].columns) {
        CMatrix kraus(d, d);
        for (int i = 0; i < d; ++i) {
          kraus.row(i) = root * (pointer.vectors.col(c).adjoint() * coupled.middleRows(i * dp, dp));
        }
        outs[bi].kraus.push_back(std::move(kraus));
      }
    }
  }
  return Instrument(std::move(outs));
}

Povm derive_povm(const IndirectModel& m) { return povm_of(derive_instrument(m)); }

Observable noise_operator(const IndirectModel& m, const Observable& a) {
  if (a.dim() != m.dim_object) throw ValidationError("noise_operator: dimension mismatch");
  const CMatrix joint_pointer = tensor(CMatrix::Identity(m.dim_object, m.dim_object),
                                       m.probe_observable.matrix);
  const int jd = m.joint_dim();
  CMatrix out(jd, jd);
  if (m.is_permutation()) {
    for (int p = 0; p < jd; ++p) {
      for (int q = 0; q < jd; ++q) out(p, q) = joint_pointer(m.permutation[p], m.permutation[q]);
    }
  } else {
    out = m.unitary.adjoint() * joint_pointer * m.unitary;
  }
  out -= tensor(a.matrix, CMatrix::Identity(m.dim_probe, m.dim_probe));
  return Observable((out + out.adjoint()) / 2.0);
}

Observable disturbance_operator(const IndirectModel& m, const Observable& b) {
  if (b.dim() != m.dim_object) throw ValidationError("disturbance_operator: dimension mismatch");
  const CMatrix joint_b = tensor(b.matrix, CMatrix::Identity(m.dim_probe, m.dim_probe));
  const int jd = m.joint_dim();
  CMatrix out(jd, jd);
  if (m.is_permutation()) {
    for (int p = 0; p < jd; ++p) {
      for (int q = 0; q < jd; ++q) out(p, q) = joint_b(m.permutation[p], m.permutation[q]);
    }
  } else {
    out = m.unitary.adjoint() * joint_b * m.unitary;
  }
  out -= joint_b;
  return Observable((out + out.adjoint()) / 2.0);
}

namespace {

double weighted_rms(const IndirectModel& m, const State& rho,
                    const std::function<CVector(const CVector&)>& apply) {
  const std::vector<WeightedVector> object = weighted_eigenvectors(rho.matrix);
  const std::vector<WeightedVector> probe = weighted_eigenvectors(m.probe_state.matrix);
  double acc = 0.0;
  for (const auto& ov : object) {
    for (const auto& pv : probe) {
      const CVector joint = product_vector(ov.vector, pv.vector);
      acc += ov.weight * pv.weight * apply(joint).squaredNorm();
    }
  }
  return std::sqrt(std::max(0.0, acc));
}

}  // namespace

double rms_noise(const IndirectModel& m, const Observable& a, const State& rho) {
  if (a.dim() != m.dim_object || rho.dim() != m.dim_object) {
    throw ValidationError("rms_noise: dimension mismatch");
  }
  return weighted_rms(m, rho, [&](const CVector& v) { return m.apply_noise(a.matrix, v); });
}

double rms_disturbance(const IndirectModel& m, const Observable& b, const State& rho) {
  if (b.dim() != m.dim_object || rho.dim() != m.dim_object) {
    throw ValidationError("rms_disturbance: dimension mismatch");
  }
  return weighted_rms(m, rho,
                      [&](const CVector& v) { return m.apply_disturbance(b.matrix, v); });
}

IndirectModel realize_instrument(const Instrument& ins) {
  const int d = ins.dim();
  // flatten the Kraus family, remembering which outcome owns each block
  std::vector<std::pair<int, const CMatrix*>> flat;
  const CMatrix zero = CMatrix::Zero(d, d);
  for (int i = 0; i < ins.size(); ++i) {
    if (ins.outcomes[i].kraus.empty()) {
      flat.emplace_back(i, &zero);
    } else {
      for (const auto& k : ins.outcomes[i].kraus) flat.emplace_back(i, &k);
    }
  }
  const int r = static_cast<int>(flat.size());
  const int jd = d * r;

  // block isometry: psi -> sum_t (K_t psi) (x) |t>
  CMatrix iso(jd, d);
  for (int t = 0; t < r; ++t) {
    for (int i = 0; i < d; ++i) {
      for (int col = 0; col < d; ++col) iso(i * r + t, col) = (*flat[t].second)(i, col);
    }
  }
  if (max_abs(iso.adjoint() * iso - CMatrix::Identity(d, d)) > 1e-6) {
    throw NumericError("Kraus family does not assemble into an isometry");
  }

  // unitary completion: the isometry columns occupy the probe-zero slots
  CMatrix u = CMatrix::Zero(jd, jd);
  std::vector<int> filled;
  for (int i = 0; i < d; ++i) {
    u.col(i * r) = iso.col(i);
    filled.push_back(i * r);
  }
  int candidate = 0;
  for (int i = 0; i < d; ++i) {
    for (int t = 1; t < r; ++t) {
      const int slot = i * r + t;
      bool done = false;
      while (candidate < jd && !done) {
        CVector w = CVector::Zero(jd);
        w(candidate) = 1.0;
        ++candidate;
        for (int pass = 0; pass < 2; ++pass) {
          for (int f : filled) w -= u.col(f).dot(w) * u.col(f);
        }
        const double norm = w.norm();
        if (norm > 1e-12) {
          u.col(slot) = w / norm;
          filled.push_back(slot);
          done = true;
        }
      }
      if (!done) throw NumericError("failed to complete the dilation isometry to a unitary");
    }
  }

  CVector ground = CVector::Zero(r);
  ground(0) = 1.0;
  CMatrix pointer = CMatrix::Zero(r, r);
  for (int t = 0; t < r; ++t) pointer(t, t) = ins.outcomes[flat[t].first].value;
  return IndirectModel(d, r, State::pure(ground), std::move(u), Observable(pointer));
}

IndirectModel dilate_povm(const Povm& pi) {
  const int d = pi.dim();
  std::vector<InstrumentOutcome> outs;
  CVector ground = CVector::Zero(d);
  ground(0) = 1.0;
  for (const auto& o : pi.outcomes) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(o.effect);
    if (es.info() != Eigen::Success) throw NumericError("effect eigendecomposition failed");
    std::vector<CMatrix> ops;
    for (int c = 0; c < d; ++c) {
      const double mu = es.eigenvalues()(c);
      if (mu > kWeightCutoff) {
        ops.push_back(std::sqrt(mu) * ground * es.eigenvectors().col(c).adjoint());
      }
    }
    outs.push_back({o.value, std::move(ops)});
  }
  return realize_instrument(Instrument(std::move(outs)));
}

IndirectModel dilate_channel(const Channel& ch) {
  return realize_instrument(Instrument({{0.0, ch.kraus}}));
}

double isometry_representation_check(const IndirectModel& m, const Observable& a,
                                     const std::vector<double>& subset) {
  Eigen::SelfAdjointEigenSolver<CMatrix> ps(m.probe_state.matrix);
  if (ps.info() != Eigen::Success) throw NumericError("probe eigendecomposition failed");
  const int top = static_cast<int>(ps.eigenvalues().size()) - 1;
  if (1.0 - ps.eigenvalues()(top) > 1e-9) {
    throw ValidationError("isometry representation needs a pure probe state");
  }
  const CVector xi = ps.eigenvectors().col(top);

  const int d = m.dim_object;
  const int dp = m.dim_probe;
  CMatrix v(m.joint_dim(), d);
  CVector basis = CVector::Zero(d);
  for (int col = 0; col < d; ++col) {
    basis(col) = 1.0;
    v.col(col) = m.apply_unitary(product_vector(basis, xi));
    basis(col) = 0.0;
  }

  // pointer projector for the subset, matched against stored branch values
  const PointerDecomposition pointer = decompose_pointer(m.probe_observable.matrix);
  CMatrix em = CMatrix::Zero(dp, dp);
  for (double x : subset) {
    const auto it = std::find_if(pointer.branches.begin(), pointer.branches.end(),
                                 [x](const PointerBranch& b) { return b.value == x; });
    if (it == pointer.branches.end()) {
      throw ValidationError("no pointer branch with the requested value");
    }
    for (int c : it->columns) {
      em += pointer.vectors.col(c) * pointer.vectors.col(c).adjoint();
    }
  }

  // (A (x) E) V, column by column, without a dense joint matrix
  CMatrix lifted(m.joint_dim(), d);
  for (int col = 0; col < d; ++col) {
    Eigen::Map<const CMatrix> in(v.col(col).data(), dp, d);
    CMatrix block = em * in * a.matrix.transpose();
    lifted.col(col) = Eigen::Map<const CVector>(block.data(), m.joint_dim());
  }
  const CMatrix compressed = v.adjoint() * lifted;
  const CMatrix dual = dual_apply(derive_instrument(m), subset, a.matrix);
  return max_abs(compressed - dual);
}

IndirectModel canonical_model(const Observable& a, const GridWavefunction& probe) {
  const CyclicGrid& grid = probe.grid;
  const int d = a.dim();
  const int n = grid.n;
  const State sigma = State::pure(probe.amplitudes);
  const Observable pointer = position_op(grid);

  const auto lattice_shift = [&grid](double eigenvalue) {
    const double steps = eigenvalue / grid.spacing;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9) {
      throw ValidationError("eigenvalue is not an integer multiple of the grid spacing");
    }
    int s = static_cast<int>(rounded) % grid.n;
    if (s < 0) s += grid.n;
    return s;
  };

  if (max_abs(a.matrix - CMatrix(a.matrix.diagonal().asDiagonal())) == 0.0) {
    // diagonal coupling observable: the whole unitary is one basis permutation
    std::vector<int> perm(d * n);
    for (int i = 0; i < d; ++i) {
      const int s = lattice_shift(a.matrix(i, i).real());
      for (int j = 0; j < n; ++j) perm[i * n + j] = i * n + (j + s) % n;
    }
    return IndirectModel::from_permutation(d, n, sigma, std::move(perm), pointer, grid.hbar);
  }

  CMatrix u = CMatrix::Zero(d * n, d * n);
  for (const auto& branch : spectral_measure(a).branches) {
    const int s = lattice_shift(branch.value);
    CMatrix shift = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) shift((j + s) % n, j) = 1.0;
    u += tensor(branch.projector, shift);
  }
  return IndirectModel(d, n, sigma, std::move(u), pointer, grid.hbar);
}

}  // namespace qmeter
