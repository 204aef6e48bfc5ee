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

#ifndef URFOCK_DYNAMICS_HPP
#define URFOCK_DYNAMICS_HPP

#include <algorithm>
#include <numeric>

#include "urfock/modeops.hpp"
#include "urfock/spatial.hpp"

namespace urfock {

// ---------------------------------------------------------------------------
// Abstract alternatives: real truth-value vector phi of even length n,
// rotated pairwise by the antisymmetric generator H = sum_j omega_j kappa^j.

struct BlockRotationGenerator {
  RVec omegas;

  RMat matrix() const {
    const Index n = 2 * omegas.size();
    RMat h = RMat::Zero(n, n);
    for (Index j = 0; j < omegas.size(); ++j) {
      h(2 * j, 2 * j + 1) = omegas[j];
      h(2 * j + 1, 2 * j) = -omegas[j];
    }
    return h;
  }
};

struct GenericAlternativeState {
  Vec phi;  // complex pair form, phi~_j = phi_{2j-1} + i phi_{2j}

  static GenericAlternativeState from_real(const RVec& r) {
    if (r.size() % 2 != 0) throw ValidationError("real alternative length must be even");
    GenericAlternativeState s;
    s.phi.resize(r.size() / 2);
    for (Index j = 0; j < s.phi.size(); ++j) s.phi[j] = cplx(r[2 * j], r[2 * j + 1]);
    return s;
  }
  RVec to_real() const {
    RVec r(2 * phi.size());
    for (Index j = 0; j < phi.size(); ++j) {
      r[2 * j] = phi[j].real();
      r[2 * j + 1] = phi[j].imag();
    }
    return r;
  }
};

/// phi~(t) = exp(-i H~ t) phi~ with H~ = diag(omega).
inline GenericAlternativeState evolve_generic(const BlockRotationGenerator& g,
                                              const GenericAlternativeState& s, double t) {
  if (g.omegas.size() != s.phi.size()) throw ValidationError("generator and state sizes differ");
  GenericAlternativeState out = s;
  for (Index j = 0; j < s.phi.size(); ++j) out.phi[j] *= std::exp(-I1 * g.omegas[j] * t);
  return out;
}

/// d/dt phi = H phi in the real representation, solved blockwise.
inline RVec evolve_generic_real(const BlockRotationGenerator& g, const RVec& phi, double t) {
  if (phi.size() != 2 * g.omegas.size()) throw ValidationError("generator and state sizes differ");
  RVec out(phi.size());
  for (Index j = 0; j < g.omegas.size(); ++j) {
    const double c = std::cos(g.omegas[j] * t), s = std::sin(g.omegas[j] * t);
    out[2 * j] = c * phi[2 * j] + s * phi[2 * j + 1];
    out[2 * j + 1] = -s * phi[2 * j] + c * phi[2 * j + 1];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tensor-space evolution exp(-i E t) through the eigenbasis of E^2.

inline Vec evolve_amplitudes(const QuadratureSet& q, const Vec& amp, double t) {
  q.require_energy();
  if (t == 0.0) return amp;  // exact identity, keeps t=0 exports bit-for-bit
  const auto& sp = *q.spectrum;
  const Mat v = sp.vectors.cast<cplx>();
  Vec c = v.adjoint() * amp;
  for (Index k = 0; k < c.size(); ++k) c[k] *= std::exp(-I1 * sp.e[k] * t);
  return v * c;
}

inline StateVector evolve_fock(const QuadratureSet& q, const StateVector& st, double t) {
  return StateVector(st.space, evolve_amplitudes(q, st.amp, t));
}

/// Truncated Taylor series of exp(-i E t) built by repeated application of E.
inline StateVector evolve_series(const QuadratureSet& q, const StateVector& st, double t, int order) {
  StateVector term = st, acc = st;
  for (int k = 1; k <= order; ++k) {
    term = apply_four_momentum(q, term, 0);
    term.amp *= -I1 * t / static_cast<double>(k);
    acc.amp += term.amp;
  }
  return acc;
}

struct KleinGordonResult {
  double residual = 0.0;       // max |R| / max |Psi|
  double max_residual = 0.0;   // max |R| over interior grid points
  double max_field = 0.0;      // max |Psi(t)| over the grid
};

namespace detail {

// Dense (n+1)^3 coefficient cube from an xyzn-labelled amplitude vector.
inline std::vector<cplx> coeff_cube(const FockSpace& s, const Vec& amp) {
  const int k = s.n_max() + 1;
  std::vector<cplx> c(static_cast<size_t>(k) * k * k, 0.0);
  for (Index i = 0; i < s.dim(); ++i) {
    const Occupation& n = s.unrank(i);
    c[(static_cast<size_t>(n[0]) * k + n[1]) * k + n[2]] += amp[i];
  }
  return c;
}

}  // namespace detail

/// Finite-difference residual of (d_t^2 - laplacian) Psi on the grid.
///
/// The three time levels are mapped to wavefields; the centered time
/// difference and the 7-point Laplacian are combined in separable form. The
/// grid maximum is exact: slices whose upper bound cannot beat the running
/// maximum are skipped.
inline KleinGordonResult klein_gordon_residual(const QuadratureSet& q, const StateVector& st, double t,
                                               double dt, const Grid3& grid) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (q.labels != Labels::abcd) throw ValidationError("klein_gordon_residual expects ABCD labels");
  q.require_energy();
  const FockSpace& s = *q.space;
  const SpMat to_xyzn = mode_transform(s, xyzn_matrix().cast<cplx>());
  const Vec p0 = to_xyzn * evolve_amplitudes(q, st.amp, t);
  const Vec pp = to_xyzn * evolve_amplitudes(q, st.amp, t + dt);
  const Vec pm = to_xyzn * evolve_amplitudes(q, st.amp, t - dt);
  const Vec ptt = (pp + pm - 2.0 * p0) / (dt * dt);

  const int K = s.n_max() + 1;
  const auto c0 = detail::coeff_cube(s, p0);
  const auto ct = detail::coeff_cube(s, ptt);
  const RVec xs = grid.axis();
  const Index n = grid.n;
  const RMat T = hermite_table(s.n_max(), xs);
  RMat D2 = RMat::Zero(K, n);
  const double ih2 = 1.0 / (grid.h * grid.h);
  for (Index k = 1; k + 1 < n; ++k) D2.col(k) = (T.col(k + 1) + T.col(k - 1) - 2.0 * T.col(k)) * ih2;
  RVec tmax(K), dmax(K);
  for (int a = 0; a < K; ++a) {
    tmax[a] = T.row(a).cwiseAbs().maxCoeff();
    dmax[a] = D2.row(a).cwiseAbs().maxCoeff();
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::abs(xs[a]) < std::abs(xs[b]); });
  auto interior = [n](Index k) { return k > 0 && k + 1 < n; };

  double max_r = 0.0, max_psi = 0.0;
  std::vector<cplx> U(K * K), W(K * K), u(K), w(K);
  for (Index ix : order) {
    std::fill(U.begin(), U.end(), 0.0);
    std::fill(W.begin(), W.end(), 0.0);
    for (int a = 0; a < K; ++a)
      for (int b = 0; a + b < K; ++b)
        for (int d = 0; a + b + d < K; ++d) {
          const size_t ci = (static_cast<size_t>(a) * K + b) * K + d;
          U[b * K + d] += ct[ci] * T(a, ix) - c0[ci] * D2(a, ix);
          W[b * K + d] += c0[ci] * T(a, ix);
        }
    double bx_r = 0.0, bx_p = 0.0;
    for (int b = 0; b < K; ++b)
      for (int d = 0; b + d < K; ++d) {
        bx_r += std::abs(U[b * K + d]) * tmax[b] * tmax[d] +
                std::abs(W[b * K + d]) * (dmax[b] * tmax[d] + tmax[b] * dmax[d]);
        bx_p += std::abs(W[b * K + d]) * tmax[b] * tmax[d];
      }
    if (bx_r <= max_r && bx_p <= max_psi) continue;
    for (Index iy : order) {
      std::fill(u.begin(), u.end(), 0.0);
      std::fill(w.begin(), w.end(), 0.0);
      for (int b = 0; b < K; ++b)
        for (int d = 0; b + d < K; ++d) {
          u[d] += U[b * K + d] * T(b, iy) - W[b * K + d] * D2(b, iy);
          w[d] += W[b * K + d] * T(b, iy);
        }
      double by_r = 0.0, by_p = 0.0;
      for (int d = 0; d < K; ++d) {
        by_r += std::abs(u[d]) * tmax[d] + std::abs(w[d]) * dmax[d];
        by_p += std::abs(w[d]) * tmax[d];
      }
      if (by_r <= max_r && by_p <= max_psi) continue;
      const bool in_xy = interior(ix) && interior(iy);
      for (Index iz : order) {
        cplx psi = 0.0, r = 0.0;
        for (int d = 0; d < K; ++d) {
          psi += w[d] * T(d, iz);
          r += u[d] * T(d, iz) - w[d] * D2(d, iz);
        }
        max_psi = std::max(max_psi, std::abs(psi));
        if (in_xy && interior(iz)) max_r = std::max(max_r, std::abs(r));
      }
    }
  }
  KleinGordonResult res;
  res.max_residual = max_r;
  res.max_field = max_psi;
  res.residual = max_psi > 0.0 ? max_r / max_psi : 0.0;
  return res;
}

}  // namespace urfock

#endif  // URFOCK_DYNAMICS_HPP
