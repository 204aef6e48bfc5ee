// Copyright 2026 The urfock Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef URFOCK_INTERNAL_HPP
#define URFOCK_INTERNAL_HPP

#include <Eigen/SVD>

#include <array>
#include <vector>

#include "urfock/algebra.hpp"
#include "urfock/modeops.hpp"

namespace urfock {

using Spinor2 = Eigen::Vector2cd;
using Spinor4 = Eigen::Vector4cd;
using Vec4 = Eigen::Vector4d;

/// Ur-spinor (a + ib, c + id).
inline Spinor2 ur_spinor(double a, double b, double c, double d) {
  return Spinor2(cplx(a, b), cplx(c, d));
}

inline Eigen::Matrix2cd i_sigma2() {
  Eigen::Matrix2cd m;
  m << 0, 1, -1, 0;
  return m;
}

/// chi = (u ; i sigma^2 v*).
inline Spinor4 majorana_pair(const Spinor2& u, const Spinor2& v) {
  Spinor4 chi;
  chi.head<2>() = u;
  chi.tail<2>() = i_sigma2() * v.conjugate();
  return chi;
}

/// chi = 1/sqrt2 (phi ; i sigma^2 phi*).
inline Spinor4 majorana_single(const Spinor2& phi) {
  return majorana_pair(phi, phi) / std::sqrt(2.0);
}

/// V^mu = chibar gamma^mu chi with chibar = chi^dag gamma^0.
inline Vec4 spinor_to_vector(const Spinor4& chi) {
  static const DiracMatrices d = build_dirac();
  Vec4 v;
  for (int mu = 0; mu < 4; ++mu) {
    const cplx z = chi.adjoint() * d.gamma[0] * d.gamma[mu] * chi;
    v[mu] = z.real();
  }
  return v;
}

inline double minkowski_dot(const Vec4& x, const Vec4& y) {
  return x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
}

// ---------------------------------------------------------------------------
// Internal state Gamma = Omega (x) Phi, Phi = spin (x) isospin or the reverse.

enum class SpinSlot { first, second };

struct InternalState {
  Eigen::Matrix<cplx, 8, 1> gamma;
  SpinSlot spin = SpinSlot::first;
};

/// Permutation taking Gamma's storage order to (omega, spin, isospin).
inline Eigen::Matrix<double, 8, 8> internal_permutation(SpinSlot slot) {
  Eigen::Matrix<double, 8, 8> p = Eigen::Matrix<double, 8, 8>::Zero();
  for (int w = 0; w < 2; ++w)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int stored = 4 * w + 2 * a + b;
        const int s = slot == SpinSlot::first ? a : b;
        const int iso = slot == SpinSlot::first ? b : a;
        p(4 * w + 2 * s + iso, stored) = 1.0;
      }
  return p;
}

inline InternalState build_internal(const Spinor2& omega, const Spinor4& phi, SpinSlot slot = SpinSlot::first,
                                    double tol = 1e-12) {
  if (std::abs(omega.squaredNorm() - 1.0) > tol) throw ValidationError("Omega is not normalized");
  if (std::abs(phi.squaredNorm() - 1.0) > tol) throw ValidationError("Phi violates joint normalization");
  InternalState s;
  s.spin = slot;
  for (int w = 0; w < 2; ++w)
    for (int k = 0; k < 4; ++k) s.gamma[4 * w + k] = omega[w] * phi[k];
  return s;
}

/// Lifts a Dirac 4x4 (acting on Omega (x) spin) to the 8-dim internal space
/// with the isospin factor as a spectator.
inline Eigen::Matrix<cplx, 8, 8> lift_dirac(const Eigen::Matrix4cd& m, SpinSlot slot) {
  Eigen::Matrix<cplx, 8, 8> canon = Eigen::Matrix<cplx, 8, 8>::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int iso = 0; iso < 2; ++iso) canon(2 * i + iso, 2 * j + iso) = m(i, j);
  const Eigen::Matrix<cplx, 8, 8> p = internal_permutation(slot).cast<cplx>();
  return p.transpose() * canon * p;
}

// ---------------------------------------------------------------------------
// Operators on Fock (x) Dirac-4.

inline SpMat dense4_to_sparse(const Eigen::Matrix4cd& m) { return to_sparse(Mat(m)); }

/// H_D = -gamma^0 (gamma^1 Px + gamma^2 Py + gamma^3 Pz).
inline SpMat dirac_hamiltonian(const QuadratureSet& q) {
  const DiracMatrices d = build_dirac();
  SpMat h(q.space->dim() * 4, q.space->dim() * 4);
  for (int i = 1; i < 4; ++i) h += kron(q.P(i - 1), dense4_to_sparse(-d.gamma[0] * d.gamma[i]));
  return h;
}

/// H_D on Fock (x) Omega (x) Phi with the isospin spectator.
inline SpMat dirac_hamiltonian_internal(const QuadratureSet& q, SpinSlot slot) {
  const DiracMatrices d = build_dirac();
  SpMat h(q.space->dim() * 8, q.space->dim() * 8);
  for (int i = 1; i < 4; ++i)
    h += kron(q.P(i - 1), to_sparse(Mat(lift_dirac(-d.gamma[0] * d.gamma[i], slot))));
  return h;
}

/// Lambda = gamma^0 E - gamma^i P_i (dense; needs E).
inline Mat dirac_lambda(const QuadratureSet& q) {
  q.require_energy();
  const DiracMatrices d = build_dirac();
  SpMat acc = kron(to_sparse(q.E), dense4_to_sparse(d.gamma[0]));
  for (int i = 1; i < 4; ++i) acc -= kron(q.P(i - 1), dense4_to_sparse(d.gamma[i]));
  return Mat(acc);
}

/// Indices of Fock (x) Dirac-4 whose Fock label has total <= max_total.
inline std::vector<Index> extended_interior(const FockSpace& s, int max_total, int internal_dim = 4) {
  std::vector<Index> out;
  for (Index i = 0; i < s.dim(); ++i)
    if (s.total(i) <= max_total)
      for (int k = 0; k < internal_dim; ++k) out.push_back(i * internal_dim + k);
  return out;
}

struct DiracKernel {
  std::vector<Vec> states;  // orthonormal, Fock (x) Dirac-4
  RVec singular_values;     // ascending
  double smallest = 0.0;
  double largest = 0.0;
};

/// Numerical null space of Lambda from its SVD; `tol` is relative to the
/// largest singular value.
inline DiracKernel dirac_kernel(const QuadratureSet& q, double tol = 1e-8) {
  const Mat lam = dirac_lambda(q);
  Eigen::BDCSVD<Mat> svd(lam, Eigen::ComputeFullV);
  const RVec sv = svd.singularValues();  // descending
  DiracKernel k;
  k.singular_values = sv.reverse();
  k.smallest = sv[sv.size() - 1];
  k.largest = sv[0];
  const double cut = tol * std::max(k.largest, 1e-300);
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] < cut) k.states.push_back(svd.matrixV().col(i));
  return k;
}

}  // namespace urfock

#endif  // URFOCK_INTERNAL_HPP
