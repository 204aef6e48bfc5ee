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

#ifndef URFOCK_SPATIAL_HPP
#define URFOCK_SPATIAL_HPP

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <tuple>

#include "urfock/fock.hpp"

namespace urfock {

inline constexpr Index kGridPointCap = 4001;

/// Orthonormal Hermite function h_n(x) = pi^{-1/4} (2^n n!)^{-1/2} H_n(x) e^{-x^2/2},
/// evaluated with the normalized three-term recurrence.
inline double hermite_fn(int n, double x) {
  if (n < 0) throw ValidationError("hermite order must be >= 0");
  double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return h0;
  double h1 = std::sqrt(2.0) * x * h0;
  for (int k = 1; k < n; ++k) {
    double h2 = std::sqrt(2.0 / (k + 1)) * x * h1 - std::sqrt(static_cast<double>(k) / (k + 1)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

/// Table h_n(x_k) for n = 0..n_max, rows indexed by n.
inline RMat hermite_table(int n_max, const RVec& xs) {
  RMat t(n_max + 1, xs.size());
  for (Index k = 0; k < xs.size(); ++k) {
    const double x = xs[k];
    double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    t(0, k) = h0;
    if (n_max == 0) continue;
    double h1 = std::sqrt(2.0) * x * h0;
    t(1, k) = h1;
    for (int n = 1; n < n_max; ++n) {
      double h2 = std::sqrt(2.0 / (n + 1)) * x * h1 - std::sqrt(static_cast<double>(n) / (n + 1)) * h0;
      t(n + 1, k) = h2;
      h0 = h1;
      h1 = h2;
    }
  }
  return t;
}

/// Cubic grid with points -L, -L+h, ..., L on each axis.
struct Grid3 {
  double L = 8.0;
  double h = 0.05;
  Index n = 0;

  Grid3() = default;
  Grid3(double extent, double step, Index cap = kGridPointCap) : L(extent), h(step) {
    if (!(extent > 0.0) || !(step > 0.0)) throw ConfigError("grid extent and step must be positive");
    const double q = 2.0 * extent / step;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, q)) throw ConfigError("2L/h must be an integer");
    n = static_cast<Index>(r) + 1;
    if (n > cap) throw ConfigError("grid exceeds the point cap");
  }

  RVec axis() const {
    RVec x(n);
    for (Index k = 0; k < n; ++k) x[k] = -L + h * static_cast<double>(k);
    return x;
  }
  /// Trapezoid weights along one axis.
  RVec weights() const {
    RVec w = RVec::Constant(n, h);
    w[0] = w[n - 1] = 0.5 * h;
    return w;
  }
  bool operator==(const Grid3& o) const { return n == o.n && L == o.L && h == o.h; }
};

/// Spatial amplitudes after collapsing the n-mode coherently.
using SpatialCoeffs = std::map<std::tuple<int, int, int>, cplx>;

inline SpatialCoeffs collapse_xyzn(const StateVector& st) {
  SpatialCoeffs c;
  const FockSpace& s = *st.space;
  for (Index i = 0; i < s.dim(); ++i) {
    if (st.amp[i] == cplx(0.0)) continue;
    const Occupation& n = s.unrank(i);
    c[{n[0], n[1], n[2]}] += st.amp[i];
  }
  return c;
}

/// Psi(x,y,z) = sum c_{nx,ny,nz} h_nx(x) h_ny(y) h_nz(z) on a grid. The field
/// is kept in separable form; values are produced on demand.
struct WaveField {
  Grid3 grid;
  int n_max = 0;
  SpatialCoeffs coeffs;
  RMat table;  // hermite_table(n_max, grid.axis())

  cplx at(Index ix, Index iy, Index iz) const {
    cplx v = 0.0;
    for (const auto& [k, c] : coeffs) {
      const auto [a, b, d] = k;
      v += c * table(a, ix) * table(b, iy) * table(d, iz);
    }
    return v;
  }
  double x(Index k) const { return -grid.L + grid.h * static_cast<double>(k); }

  /// Trapezoid norm, identical to the 3-D sum through the product rule.
  double quadrature_norm() const;
};

inline WaveField state_to_wavefield(const StateVector& st_xyzn, const Grid3& grid) {
  WaveField f;
  f.grid = grid;
  f.n_max = st_xyzn.space->n_max();
  f.coeffs = collapse_xyzn(st_xyzn);
  f.table = hermite_table(f.n_max, grid.axis());
  return f;
}

/// Trapezoid <f|g>. The 3-D weights factorize, so the sum reduces exactly to
/// products of 1-D Gram matrices of the Hermite tables.
inline cplx quadrature_overlap(const WaveField& f, const WaveField& g) {
  if (!(f.grid == g.grid)) throw ValidationError("wavefields live on different grids");
  const RVec w = f.grid.weights();
  const RMat gram = f.table * w.asDiagonal() * g.table.transpose();
  cplx acc = 0.0;
  for (const auto& [kf, cf] : f.coeffs) {
    const auto [a, b, d] = kf;
    for (const auto& [kg, cg] : g.coeffs) {
      const auto [p, q, r] = kg;
      acc += std::conj(cf) * cg * gram(a, p) * gram(b, q) * gram(d, r);
    }
  }
  return acc;
}

inline double WaveField::quadrature_norm() const {
  return std::sqrt(std::max(0.0, quadrature_overlap(*this, *this).real()));
}

inline void write_wavefield(std::ostream& os, const WaveField& f) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# urfock wavefield v1 L=%.17g h=%.17g\n", f.grid.L, f.grid.h);
  os << buf;
  const Index n = f.grid.n;
  for (Index ix = 0; ix < n; ++ix)
    for (Index iy = 0; iy < n; ++iy)
      for (Index iz = 0; iz < n; ++iz) {
        const cplx v = f.at(ix, iy, iz);
        std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g %.17g %.17g\n", f.x(ix), f.x(iy), f.x(iz),
                      v.real(), v.imag());
        os << buf;
      }
}

}  // namespace urfock

#endif  // URFOCK_SPATIAL_HPP
