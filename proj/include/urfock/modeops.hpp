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

#ifndef URFOCK_MODEOPS_HPP
#define URFOCK_MODEOPS_HPP

#include <array>
#include <limits>
#include <optional>

#include "urfock/fock.hpp"

namespace urfock {

inline constexpr int kDenseEigenCap = 12;

/// Which occupation labels the index basis carries.
enum class Labels { abcd, xyzn };

/// Spectral data of E^2 = Px^2 + Py^2 + Pz^2. E^2 is real symmetric in both
/// label conventions, so a real eigensolver is used.
struct EnergySpectrum {
  RMat vectors;
  RVec e2;  // eigenvalues of E^2, clamped at zero
  RVec e;   // their square roots
};

struct QuadratureSet {
  SpacePtr space;
  Labels labels = Labels::abcd;
  std::array<SpMat, 4> Ai;  // A_x, A_y, A_z, A_n
  SpMat X, Y, Z, Px, Py, Pz;
  SpMat An_number;
  SpMat E2;
  std::optional<EnergySpectrum> spectrum;
  Mat E;  // dense, empty when the spectrum is unavailable

  bool has_energy() const { return spectrum.has_value(); }
  const SpMat& P(int axis) const { return axis == 0 ? Px : axis == 1 ? Py : Pz; }
  const SpMat& Q(int axis) const { return axis == 0 ? X : axis == 1 ? Y : Z; }

  void require_energy() const {
    if (!spectrum)
      throw CapabilityError("E needs n_max <= dense eigen cap (" + std::to_string(kDenseEigenCap) + ")");
  }
};

inline EnergySpectrum energy_spectrum(const SpMat& e2) {
  RMat d = Mat(e2).real();
  d = 0.5 * (d + d.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RMat> es(d);
  if (es.info() != Eigen::Success)
    throw NumericalError("E^2 eigendecomposition failed (dim " + std::to_string(d.rows()) + ")");
  EnergySpectrum s;
  s.vectors = es.eigenvectors();
  s.e2 = es.eigenvalues();
  // eigenvalues at round-off level are zero; their square roots would
  // otherwise inflate to ~1e-8
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, s.e2.cwiseAbs().maxCoeff());
  for (Index i = 0; i < s.e2.size(); ++i) {
    if (s.e2[i] < -1e-12) throw NumericalError("E^2 has a negative eigenvalue " + std::to_string(s.e2[i]));
    if (s.e2[i] < floor) s.e2[i] = 0.0;
  }
  s.e = s.e2.cwiseSqrt();
  return s;
}

/// X, Y, Z, P and E on a 4-mode space. With Labels::abcd the index labels
/// are N_A..N_D; with Labels::xyzn they are N_x..N_n.
inline QuadratureSet build_quadratures(SpacePtr space, Labels labels = Labels::abcd,
                                       int dense_cap = kDenseEigenCap) {
  if (space->n_modes() != 4) throw ValidationError("quadratures need a 4-mode space");
  QuadratureSet q;
  q.space = space;
  q.labels = labels;
  const FockSpace& s = *space;
  std::array<SpMat, 4> lad;
  for (int i = 0; i < 4; ++i) lad[i] = ladder(s, i, Kind::annihilate);
  if (labels == Labels::xyzn) {
    q.Ai = lad;
  } else {
    const RMat m = xyzn_matrix();
    for (int i = 0; i < 4; ++i) {
      q.Ai[i] = SpMat(s.dim(), s.dim());
      for (int j = 0; j < 4; ++j) q.Ai[i] += m(i, j) * lad[j];
    }
  }
  const double r = 1.0 / std::sqrt(2.0);
  std::array<SpMat, 3> xs, ps;
  for (int i = 0; i < 3; ++i) {
    SpMat ad = adjoint(q.Ai[i]);
    xs[i] = r * (q.Ai[i] + ad);
    ps[i] = (-I1 * r) * (q.Ai[i] - ad);
  }
  q.X = xs[0]; q.Y = xs[1]; q.Z = xs[2];
  q.Px = ps[0]; q.Py = ps[1]; q.Pz = ps[2];
  q.An_number = SpMat(adjoint(q.Ai[3]) * q.Ai[3]);
  q.E2 = SpMat(q.Px * q.Px) + SpMat(q.Py * q.Py) + SpMat(q.Pz * q.Pz);
  q.E2.prune(cplx(0.0), 1e-15);
  if (s.n_max() <= dense_cap) {
    q.spectrum = energy_spectrum(q.E2);
    const auto& sp = *q.spectrum;
    q.E = (sp.vectors * sp.e.asDiagonal() * sp.vectors.transpose()).cast<cplx>();
  }
  return q;
}

/// N = sum A_i^dag A_i over the index-basis modes.
inline SpMat total_number(const FockSpace& s) {
  SpMat n(s.dim(), s.dim());
  for (int i = 0; i < s.n_modes(); ++i) {
    SpMat a = ladder(s, i, Kind::annihilate);
    n += SpMat(adjoint(a) * a);
  }
  return n;
}

/// N = A_x^dag A_x + A_y^dag A_y + A_z^dag A_z + A_n^dag A_n.
inline SpMat total_number_xyzn(const QuadratureSet& q) {
  SpMat n(q.space->dim(), q.space->dim());
  for (int i = 0; i < 4; ++i) n += SpMat(adjoint(q.Ai[i]) * q.Ai[i]);
  return n;
}

/// E for mu = 0, P_mu otherwise (contravariant components).
inline StateVector apply_four_momentum(const QuadratureSet& q, const StateVector& st, int mu) {
  if (mu < 0 || mu > 3) throw ValidationError("mu must be in 0..3");
  if (mu == 0) {
    q.require_energy();
    return StateVector(st.space, q.E * st.amp);
  }
  return StateVector(st.space, q.P(mu - 1) * st.amp);
}

/// Matrix-free coefficient map of P_axis on a state with ABCD labels:
///   (P psi)(N) = -i/(2 sqrt2) sum_j m_j [ sqrt(N_j+1) psi(N+e_j) - sqrt(N_j) psi(N-e_j) ]
/// where m is the axis row of the xyzn matrix scaled by 2.
inline StateVector momentum_coefficients(const StateVector& st, int axis) {
  const FockSpace& s = *st.space;
  const RMat m = 2.0 * xyzn_matrix();
  const cplx pre = -I1 / (2.0 * std::sqrt(2.0));
  StateVector out(st.space);
  for (Index i = 0; i < s.dim(); ++i) {
    Occupation n = s.unrank(i);
    cplx acc = 0.0;
    for (int j = 0; j < 4; ++j) {
      n[j] += 1;
      acc += m(axis, j) * std::sqrt(n[j] * 1.0) * st.at(n);
      n[j] -= 2;
      if (n[j] >= 0) acc -= m(axis, j) * std::sqrt((n[j] + 1) * 1.0) * st.at(n);
      n[j] += 1;
    }
    out.amp[i] = pre * acc;
  }
  return out;
}

}  // namespace urfock

#endif  // URFOCK_MODEOPS_HPP
