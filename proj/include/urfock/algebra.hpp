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

#ifndef URFOCK_ALGEBRA_HPP
#define URFOCK_ALGEBRA_HPP

#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "urfock/common.hpp"

namespace urfock {

// ---------------------------------------------------------------------------
// Octonions

/// The seven oriented lines of the multiplication table.
inline constexpr std::array<std::array<int, 3>, 7> kFanoLines{{
    {1, 2, 3}, {2, 4, 6}, {4, 3, 5}, {3, 6, 7}, {6, 5, 1}, {5, 7, 2}, {4, 7, 1}}};

/// The printed list of unit associator entries, kept verbatim for the report.
inline constexpr std::array<std::array<int, 4>, 7> kPrintedEps4{{
    {1, 2, 4, 7}, {1, 2, 6, 5}, {2, 3, 4, 5}, {2, 3, 7, 6}, {3, 1, 4, 6}, {3, 1, 5, 7}, {4, 5, 7, 6}}};

inline int perm_sign(std::vector<int> p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) s = -s;
    }
  return s;
}

struct FanoTable {
  // eps3[i][j][k], indices 1..7 (slot 0 unused)
  std::array<std::array<std::array<int, 8>, 8>, 8> eps3{};
  // eps4 derived from the associator: {e_i,e_j,e_k} = -2 eps4_ijkl e_l
  std::array<std::array<std::array<std::array<double, 8>, 8>, 8>, 8> eps4{};
};

struct Octonion {
  std::array<double, 8> r{};

  static Octonion unit(int i) {
    Octonion o;
    o.r[i] = 1.0;
    return o;
  }
  Octonion conj() const {
    Octonion o = *this;
    for (int i = 1; i < 8; ++i) o.r[i] = -o.r[i];
    return o;
  }
  double norm() const {
    double s = 0.0;
    for (double v : r) s += v * v;
    return std::sqrt(s);
  }
  Octonion operator+(const Octonion& o) const {
    Octonion x;
    for (int i = 0; i < 8; ++i) x.r[i] = r[i] + o.r[i];
    return x;
  }
  Octonion operator-(const Octonion& o) const {
    Octonion x;
    for (int i = 0; i < 8; ++i) x.r[i] = r[i] - o.r[i];
    return x;
  }
  Octonion operator*(double s) const {
    Octonion x;
    for (int i = 0; i < 8; ++i) x.r[i] = r[i] * s;
    return x;
  }
};

inline const std::array<std::array<std::array<int, 8>, 8>, 8>& eps3_table() {
  static const auto table = [] {
    std::array<std::array<std::array<int, 8>, 8>, 8> e{};
    for (const auto& l : kFanoLines) {
      const int p[3] = {l[0], l[1], l[2]};
      const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
      for (int k = 0; k < 6; ++k) e[p[perms[k][0]]][p[perms[k][1]]][p[perms[k][2]]] = k < 3 ? 1 : -1;
    }
    return e;
  }();
  return table;
}

/// e_i e_j = -delta_ij + eps3_ijk e_k, with e_0 the unit.
inline Octonion oct_mul(const Octonion& x, const Octonion& y) {
  const auto& e = eps3_table();
  Octonion z;
  z.r[0] = x.r[0] * y.r[0];
  for (int i = 1; i < 8; ++i) {
    z.r[i] += x.r[0] * y.r[i] + x.r[i] * y.r[0];
    z.r[0] -= x.r[i] * y.r[i];
  }
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j) {
      if (i == j || x.r[i] == 0.0 || y.r[j] == 0.0) continue;
      for (int k = 1; k < 8; ++k)
        if (e[i][j][k] != 0) z.r[k] += e[i][j][k] * x.r[i] * y.r[j];
    }
  return z;
}

inline Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z) {
  return oct_mul(oct_mul(x, y), z) - oct_mul(x, oct_mul(y, z));
}

struct Eps4Discrepancy {
  std::array<int, 4> idx;
  double printed;
  double computed;
};

struct Eps4Report {
  FanoTable table;
  std::vector<Eps4Discrepancy> discrepancies;  // sorted index quadruples only
  bool totally_antisymmetric = true;
};

/// Derives eps4 from the multiplication rule and compares it with the
/// printed list on every increasing quadruple i<j<k<l.
inline Eps4Report derive_eps4() {
  Eps4Report rep;
  rep.table.eps3 = eps3_table();
  auto& e4 = rep.table.eps4;
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j)
      for (int k = 1; k < 8; ++k) {
        Octonion a = associator(Octonion::unit(i), Octonion::unit(j), Octonion::unit(k));
        for (int l = 1; l < 8; ++l) e4[i][j][k][l] = -0.5 * a.r[l];
      }
  // printed table, extended by total antisymmetry
  std::array<std::array<std::array<std::array<double, 8>, 8>, 8>, 8> printed{};
  for (const auto& q : kPrintedEps4) {
    std::vector<int> p{0, 1, 2, 3};
    do {
      std::vector<int> idx{q[p[0]], q[p[1]], q[p[2]], q[p[3]]};
      printed[idx[0]][idx[1]][idx[2]][idx[3]] = perm_sign(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j)
      for (int k = 1; k < 8; ++k)
        for (int l = 1; l < 8; ++l) {
          const double v = e4[i][j][k][l];
          std::vector<int> p{0, 1, 2, 3};
          const int idx[4] = {i, j, k, l};
          do {
            const double w = e4[idx[p[0]]][idx[p[1]]][idx[p[2]]][idx[p[3]]];
            if (std::abs(w - perm_sign(p) * v) > 1e-12) rep.totally_antisymmetric = false;
          } while (std::next_permutation(p.begin(), p.end()));
          if (i < j && j < k && k < l && std::abs(v - printed[i][j][k][l]) > 1e-12)
            rep.discrepancies.push_back({{i, j, k, l}, printed[i][j][k][l], v});
        }
  return rep;
}

// ---------------------------------------------------------------------------
// G2 generator candidates as real 8x8 matrices assembled from 2x2 blocks.

namespace detail {

enum class B2 { zero, one, s1, s3, is2 };  // is2 = i sigma^2 = [[0,1],[-1,0]]

inline Eigen::Matrix2d block2(B2 b) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  switch (b) {
    case B2::zero: break;
    case B2::one: m << 1, 0, 0, 1; break;
    case B2::s1: m << 0, 1, 1, 0; break;
    case B2::s3: m << 1, 0, 0, -1; break;
    case B2::is2: m << 0, 1, -1, 0; break;
  }
  return m;
}

struct BlockEntry {
  int row, col;
  double sign;
  B2 kind;
};

inline RMat assemble(std::initializer_list<BlockEntry> entries) {
  RMat m = RMat::Zero(8, 8);
  for (const auto& e : entries) m.block<2, 2>(2 * e.row, 2 * e.col) = e.sign * block2(e.kind);
  return m;
}

}  // namespace detail

struct G2GeneratorSet {
  std::array<RMat, 7> L, R;
  /// L_1..L_7 followed by R_1..R_7.
  std::vector<RMat> all() const {
    std::vector<RMat> v(L.begin(), L.end());
    v.insert(v.end(), R.begin(), R.end());
    return v;
  }
};

/// The fourteen matrices exactly as printed. "-i sigma^2" is written as
/// sign -1 on is2.
inline G2GeneratorSet printed_g2() {
  using detail::assemble;
  using detail::B2;
  G2GeneratorSet g;
  g.L[0] = assemble({{0, 0, -1, B2::is2}, {1, 1, -1, B2::is2}, {2, 2, -1, B2::is2}, {3, 3, 1, B2::is2}});
  g.R[0] = assemble({{0, 0, -1, B2::is2}, {1, 1, 1, B2::is2}, {2, 2, 1, B2::is2}, {3, 3, -1, B2::is2}});
  g.L[1] = assemble({{0, 1, -1, B2::s3}, {1, 0, 1, B2::s3}, {2, 3, -1, B2::one}, {3, 2, 1, B2::one}});
  g.R[1] = assemble({{0, 1, -1, B2::one}, {1, 0, 1, B2::one}, {2, 3, 1, B2::one}, {3, 2, -1, B2::one}});
  g.L[2] = assemble({{0, 1, -1, B2::s1}, {1, 0, 1, B2::s1}, {2, 3, -1, B2::is2}, {3, 2, -1, B2::is2}});
  g.R[2] = assemble({{0, 1, -1, B2::is2}, {1, 0, -1, B2::is2}, {2, 3, 1, B2::is2}, {3, 2, 1, B2::is2}});
  g.L[3] = assemble({{0, 2, -1, B2::s3}, {1, 3, 1, B2::one}, {2, 0, 1, B2::s3}, {3, 1, -1, B2::one}});
  g.R[3] = assemble({{0, 2, -1, B2::one}, {1, 3, -1, B2::one}, {2, 0, 1, B2::one}, {3, 1, 1, B2::one}});
  g.L[4] = assemble({{0, 2, -1, B2::s1}, {1, 3, 1, B2::is2}, {2, 0, 1, B2::s1}, {3, 1, 1, B2::is2}});
  g.R[4] = assemble({{0, 2, -1, B2::is2}, {1, 3, -1, B2::is2}, {2, 0, -1, B2::is2}, {3, 1, -1, B2::is2}});
  g.L[5] = assemble({{0, 3, -1, B2::one}, {1, 2, -1, B2::s3}, {2, 1, 1, B2::s3}, {3, 0, 1, B2::one}});
  g.R[5] = assemble({{0, 3, -1, B2::s3}, {1, 2, 1, B2::s3}, {2, 1, -1, B2::s3}, {3, 0, 1, B2::s3}});
  g.L[6] = assemble({{0, 3, -1, B2::is2}, {1, 2, -1, B2::s1}, {2, 1, 1, B2::s1}, {3, 0, -1, B2::is2}});
  g.R[6] = assemble({{0, 3, -1, B2::s1}, {1, 2, 1, B2::s1}, {2, 1, -1, B2::s1}, {3, 0, 1, B2::s1}});
  return g;
}

struct G2ClosureReport {
  int rank_of_span = 0;
  double max_antisymmetry = 0.0;
  double closure_defect = 0.0;  // max over pairs of |[g_i,g_j] - proj_span([g_i,g_j])|
  int worst_i = -1, worst_j = -1;
  std::vector<double> derivation_defect;  // per generator, identifying Phi_R slots with r_0..r_7
};

inline G2ClosureReport g2_closure_report(const G2GeneratorSet& gens, double rank_tol = 1e-8) {
  G2ClosureReport rep;
  const auto g = gens.all();
  const int m = static_cast<int>(g.size());
  RMat stack(64, m);
  for (int i = 0; i < m; ++i) {
    stack.col(i) = Eigen::Map<const RVec>(g[i].data(), 64);
    rep.max_antisymmetry = std::max(rep.max_antisymmetry, max_abs(RMat(g[i] + g[i].transpose())));
  }
  Eigen::JacobiSVD<RMat> svd(stack, Eigen::ComputeThinU);
  const RVec sv = svd.singularValues();
  for (Index k = 0; k < sv.size(); ++k)
    if (sv[k] > rank_tol * sv[0]) ++rep.rank_of_span;
  const RMat basis = svd.matrixU().leftCols(rep.rank_of_span);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      RMat c = g[i] * g[j] - g[j] * g[i];
      RVec v = Eigen::Map<RVec>(c.data(), 64);
      const double d = (v - basis * (basis.transpose() * v)).cwiseAbs().maxCoeff();
      if (d > rep.closure_defect) {
        rep.closure_defect = d;
        rep.worst_i = i;
        rep.worst_j = j;
      }
    }
  // derivation property D(xy) = D(x)y + xD(y) on basis pairs
  for (int k = 0; k < m; ++k) {
    double worst = 0.0;
    auto apply = [&](const Octonion& x) {
      Eigen::Map<const RVec> xv(x.r.data(), 8);
      RVec y = g[k] * xv;
      Octonion o;
      for (int i = 0; i < 8; ++i) o.r[i] = y[i];
      return o;
    };
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const Octonion a = Octonion::unit(i), b = Octonion::unit(j);
        const Octonion lhs = apply(oct_mul(a, b));
        const Octonion rhs = oct_mul(apply(a), b) + oct_mul(a, apply(b));
        worst = std::max(worst, (lhs - rhs).norm());
      }
    rep.derivation_defect.push_back(worst);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Abstract 3 + 3 + 8 bracket algebra.
//
// Working basis (15 elements): g_k^l (k,l = 0..2) at 3k+l, a_m at 9+m,
// b^m at 12+m. The trace sum_k g_k^k is central; Jacobi residuals are
// reported both in the 15-dim span and modulo the trace.

struct StructureConstantTable {
  static constexpr int kDim = 15;
  // c[x][y] = coefficients of [x, y]
  std::array<std::array<RVec, kDim>, kDim> c;

  static int g(int k, int l) { return 3 * k + l; }
  static int a(int m) { return 9 + m; }
  static int b(int m) { return 12 + m; }

  RVec bracket(const RVec& x, const RVec& y) const {
    RVec r = RVec::Zero(kDim);
    for (int i = 0; i < kDim; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < kDim; ++j)
        if (y[j] != 0.0) r += x[i] * y[j] * c[i][j];
    }
    return r;
  }
};

inline int levi_civita3(int i, int j, int k) {
  return ((i - j) * (j - k) * (k - i)) / 2;
}

inline StructureConstantTable printed_structure_constants() {
  using T = StructureConstantTable;
  T t;
  for (auto& row : t.c)
    for (auto& v : row) v = RVec::Zero(T::kDim);
  auto d = [](int x, int y) { return x == y ? 1.0 : 0.0; };
  const double k = 2.0 / std::sqrt(3.0);
  auto set = [&](int x, int y, const RVec& v) {
    t.c[x][y] = v;
    t.c[y][x] = -v;
  };
  for (int k1 = 0; k1 < 3; ++k1)
    for (int l1 = 0; l1 < 3; ++l1) {
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          RVec v = RVec::Zero(T::kDim);
          v[T::g(k1, n)] += d(m, l1);
          v[T::g(m, l1)] -= d(k1, n);
          t.c[T::g(k1, l1)][T::g(m, n)] = v;
        }
      for (int m = 0; m < 3; ++m) {
        RVec v = RVec::Zero(T::kDim);
        v[T::a(k1)] += d(m, l1);
        v[T::a(m)] -= d(k1, l1) / 3.0;
        set(T::g(k1, l1), T::a(m), v);
        RVec w = RVec::Zero(T::kDim);
        w[T::b(l1)] -= d(k1, m);
        w[T::b(m)] += d(k1, l1) / 3.0;
        set(T::g(k1, l1), T::b(m), w);
      }
    }
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      RVec v = RVec::Zero(T::kDim);
      v[T::g(m, n)] = 1.0;
      set(T::a(m), T::b(n), v);
      RVec aa = RVec::Zero(T::kDim), bb = RVec::Zero(T::kDim);
      for (int l = 0; l < 3; ++l) {
        aa[T::b(l)] = -k * levi_civita3(m, n, l);
        bb[T::a(l)] = k * levi_civita3(m, n, l);
      }
      t.c[T::a(m)][T::a(n)] = aa;
      t.c[T::b(m)][T::b(n)] = bb;
    }
  return t;
}

struct JacobiReport {
  double max_residual = 0.0;             // in the 15-dim span
  double max_residual_mod_trace = 0.0;   // modulo the central trace
  double gl3_residual = 0.0;             // triples inside {g_k^l}
  double antisymmetry = 0.0;
  std::array<int, 3> worst{{-1, -1, -1}};
};

inline JacobiReport jacobi_check(const StructureConstantTable& t) {
  using T = StructureConstantTable;
  JacobiReport rep;
  RVec trace = RVec::Zero(T::kDim);
  for (int k = 0; k < 3; ++k) trace[T::g(k, k)] = 1.0;
  const RVec tn = trace.normalized();
  auto e = [](int i) { RVec v = RVec::Zero(T::kDim); v[i] = 1.0; return v; };
  for (int x = 0; x < T::kDim; ++x)
    for (int y = 0; y < T::kDim; ++y)
      rep.antisymmetry = std::max(rep.antisymmetry, (t.c[x][y] + t.c[y][x]).cwiseAbs().maxCoeff());
  for (int x = 0; x < T::kDim; ++x)
    for (int y = 0; y < T::kDim; ++y)
      for (int z = 0; z < T::kDim; ++z) {
        const RVec j = t.bracket(e(x), t.c[y][z]) + t.bracket(e(y), t.c[z][x]) + t.bracket(e(z), t.c[x][y]);
        const double r = j.cwiseAbs().maxCoeff();
        const double rq = (j - tn * tn.dot(j)).cwiseAbs().maxCoeff();
        if (r > rep.max_residual) {
          rep.max_residual = r;
          rep.worst = {x, y, z};
        }
        rep.max_residual_mod_trace = std::max(rep.max_residual_mod_trace, rq);
        if (x < 9 && y < 9 && z < 9) rep.gl3_residual = std::max(rep.gl3_residual, r);
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Pauli and Dirac matrices

inline std::array<Eigen::Matrix2cd, 4> pauli() {
  std::array<Eigen::Matrix2cd, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -I1, I1, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

struct DiracMatrices {
  std::array<Eigen::Matrix4cd, 4> gamma;
  std::array<Eigen::Matrix2cd, 4> sigma;
  Eigen::Matrix4d eta;
};

inline DiracMatrices build_dirac() {
  DiracMatrices d;
  d.sigma = pauli();
  d.gamma[0].setZero();
  d.gamma[0].block<2, 2>(0, 2) = Eigen::Matrix2cd::Identity();
  d.gamma[0].block<2, 2>(2, 0) = Eigen::Matrix2cd::Identity();
  for (int i = 1; i < 4; ++i) {
    d.gamma[i].setZero();
    d.gamma[i].block<2, 2>(0, 2) = -d.sigma[i];
    d.gamma[i].block<2, 2>(2, 0) = d.sigma[i];
  }
  d.eta = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  return d;
}

/// max |{g^mu, g^nu} - 2 eta^{mu nu} I| over all pairs.
inline double clifford_defect(const DiracMatrices& d) {
  double r = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      Eigen::Matrix4cd a = d.gamma[m] * d.gamma[n] + d.gamma[n] * d.gamma[m];
      a -= 2.0 * d.eta(m, n) * Eigen::Matrix4cd::Identity();
      r = std::max(r, max_abs(a));
    }
  return r;
}

}  // namespace urfock

#endif  // URFOCK_ALGEBRA_HPP
