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

#ifndef URFOCK_FOCK_HPP
#define URFOCK_FOCK_HPP

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "urfock/common.hpp"

namespace urfock {

using Occupation = std::vector<int>;

inline constexpr int kDefaultNMaxCap = 24;

/// Bosonic Fock space over `n_modes` modes truncated by total occupation.
///
/// Basis states are ordered lexicographically over (n_1, ..., n_k). Ranking
/// uses the hockey-stick identity on a binomial table, so rank() costs
/// O(n_modes) and unrank() is a table lookup.
class FockSpace {
 public:
  FockSpace(int n_max, int n_modes = 4, int cap = kDefaultNMaxCap)
      : n_max_(n_max), n_modes_(n_modes) {
    if (n_modes < 1) throw ConfigError("n_modes must be >= 1");
    if (n_max < 0 || n_max > cap)
      throw ConfigError("n_max=" + std::to_string(n_max) + " outside [0," + std::to_string(cap) + "]");
    const int top = n_max + n_modes + 2;
    binom_.assign(top + 1, std::vector<long long>(top + 1, 0));
    for (int n = 0; n <= top; ++n) {
      binom_[n][0] = 1;
      for (int k = 1; k <= n; ++k) binom_[n][k] = binom_[n - 1][k - 1] + binom_[n - 1][k];
    }
    dim_ = static_cast<Index>(binom_[n_max + n_modes][n_modes]);
    basis_.reserve(dim_);
    Occupation cur(n_modes, 0);
    enumerate(0, n_max, cur);
    totals_.resize(dim_);
    sectors_.assign(n_max + 1, {});
    for (Index i = 0; i < dim_; ++i) {
      totals_[i] = std::accumulate(basis_[i].begin(), basis_[i].end(), 0);
      sectors_[totals_[i]].push_back(i);
    }
  }

  int n_max() const { return n_max_; }
  int n_modes() const { return n_modes_; }
  Index dim() const { return dim_; }

  const Occupation& unrank(Index i) const { return basis_.at(i); }
  int total(Index i) const { return totals_[i]; }
  const std::vector<Index>& sector(int n) const { return sectors_.at(n); }

  /// Rank of an occupation vector, or -1 when it lies outside the space.
  Index rank(const Occupation& n) const {
    if (static_cast<int>(n.size()) != n_modes_) return -1;
    long long r = 0;
    int rem = n_max_;
    for (int i = 0; i < n_modes_; ++i) {
      if (n[i] < 0 || n[i] > rem) return -1;
      const int m = n_modes_ - i - 1;
      // sum over v < n_i of C(rem - v + m, m)
      r += binom_[rem + m + 1][m + 1] - binom_[rem - n[i] + m + 1][m + 1];
      rem -= n[i];
    }
    return static_cast<Index>(r);
  }

  /// Indices whose total occupation is at most `max_total`.
  std::vector<Index> interior(int max_total) const {
    std::vector<Index> out;
    for (Index i = 0; i < dim_; ++i)
      if (totals_[i] <= max_total) out.push_back(i);
    return out;
  }

  long long binomial(int n, int k) const { return binom_.at(n).at(k); }

 private:
  void enumerate(int pos, int rem, Occupation& cur) {
    if (pos == n_modes_) {
      basis_.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[pos] = v;
      enumerate(pos + 1, rem - v, cur);
    }
    cur[pos] = 0;
  }

  int n_max_;
  int n_modes_;
  Index dim_ = 0;
  std::vector<std::vector<long long>> binom_;
  std::vector<Occupation> basis_;
  std::vector<int> totals_;
  std::vector<std::vector<Index>> sectors_;
};

using SpacePtr = std::shared_ptr<const FockSpace>;

inline SpacePtr build_space(int n_max, int cap = kDefaultNMaxCap) {
  return std::make_shared<const FockSpace>(n_max, 4, cap);
}

/// Amplitudes over a ranked truncated basis.
struct StateVector {
  SpacePtr space;
  Vec amp;

  StateVector() = default;
  StateVector(SpacePtr s) : space(std::move(s)), amp(Vec::Zero(space->dim())) {}
  StateVector(SpacePtr s, Vec a) : space(std::move(s)), amp(std::move(a)) {
    if (amp.size() != space->dim()) throw ValidationError("amplitude length does not match space");
  }

  static StateVector basis(SpacePtr s, const Occupation& n) {
    StateVector v(s);
    Index r = s->rank(n);
    if (r < 0) throw ValidationError("occupation outside the truncated space");
    v.amp[r] = 1.0;
    return v;
  }
  static StateVector vacuum(SpacePtr s) { return basis(s, Occupation(s->n_modes(), 0)); }

  double norm() const { return amp.norm(); }
  bool finite() const { return amp.allFinite(); }
  cplx at(const Occupation& n) const {
    Index r = space->rank(n);
    return r < 0 ? cplx(0.0) : amp[r];
  }
};

enum class Kind { annihilate, create };

/// Plain ladder operator on occupation slot `mode` of the index basis.
/// Creator rows that would leave the truncated space are dropped, which
/// makes the creator the exact adjoint of the annihilator.
inline SpMat ladder(const FockSpace& s, int mode, Kind kind) {
  if (mode < 0 || mode >= s.n_modes()) throw ValidationError("mode index out of range");
  std::vector<Triplet> t;
  t.reserve(s.dim());
  for (Index j = 0; j < s.dim(); ++j) {
    Occupation n = s.unrank(j);
    if (kind == Kind::annihilate) {
      if (n[mode] == 0) continue;
      const double f = std::sqrt(static_cast<double>(n[mode]));
      n[mode] -= 1;
      t.emplace_back(s.rank(n), j, f);
    } else {
      const double f = std::sqrt(static_cast<double>(n[mode] + 1));
      n[mode] += 1;
      Index r = s.rank(n);
      if (r >= 0) t.emplace_back(r, j, f);
    }
  }
  SpMat m(s.dim(), s.dim());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Coefficients of A, B, C, D in terms of the raw modes a, b, c, d.
inline Mat abcd_from_raw() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat w = Mat::Zero(4, 4);
  w(0, 0) = r;   w(0, 1) = I1 * r;   // A = (a + i b)/sqrt2
  w(1, 2) = r;   w(1, 3) = I1 * r;   // B = (c + i d)/sqrt2
  w(2, 2) = r;   w(2, 3) = -I1 * r;  // C = (c - i d)/sqrt2
  w(3, 0) = -r;  w(3, 1) = I1 * r;   // D = (-a + i b)/sqrt2
  return w;
}

/// A..D (index 0..3) built as linear combinations of the raw ladders.
inline SpMat ladder_ABCD(const FockSpace& s, int mode, Kind kind) {
  if (s.n_modes() != 4) throw ValidationError("ladder_ABCD needs a 4-mode space");
  if (mode < 0 || mode > 3) throw ValidationError("mode index out of range");
  const Mat w = abcd_from_raw();
  SpMat acc(s.dim(), s.dim());
  for (int j = 0; j < 4; ++j)
    if (w(mode, j) != cplx(0.0)) acc += w(mode, j) * ladder(s, j, Kind::annihilate);
  return kind == Kind::annihilate ? acc : adjoint(acc);
}

/// The orthogonal matrix whose rows are A_x, A_y, A_z, A_n in terms of A..D.
inline RMat xyzn_matrix() {
  RMat m(4, 4);
  m << 1, 1, -1, -1,
       1, -1, 1, -1,
       1, -1, -1, 1,
       1, 1, 1, 1;
  return 0.5 * m;
}

inline SpMat number_operator(const FockSpace& s) {
  std::vector<Triplet> t;
  for (Index i = 0; i < s.dim(); ++i) t.emplace_back(i, i, static_cast<double>(s.total(i)));
  SpMat m(s.dim(), s.dim());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Principal logarithm of a unitary through its Schur form.
inline Mat unitary_log(const Mat& u) {
  Eigen::ComplexSchur<Mat> cs(u);
  const Mat& q = cs.matrixU();
  const Mat& t = cs.matrixT();
  Mat d = Mat::Zero(u.rows(), u.cols());
  for (Index k = 0; k < u.rows(); ++k) d(k, k) = I1 * std::arg(t(k, k));
  return q * d * q.adjoint();
}

inline void require_unitary(const Mat& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) throw ValidationError("mode matrix must be square");
  const double dev = max_abs(Mat(u.adjoint() * u - Mat::Identity(u.rows(), u.cols())));
  if (dev > tol) throw ValidationError("mode matrix is not unitary (deviation " + std::to_string(dev) + ")");
}

/// Fock-space unitary induced by a one-particle unitary u.
///
/// Convention: one-particle amplitudes transform as c -> u c, equivalently
/// U a_j^dag U^dag = sum_i u_ij a_i^dag and U^dag a_i U = sum_j u_ij a_j.
/// Built per number sector as exp(sum K_ij a_i^dag a_j) with K = log u,
/// so the result is unitary on the whole truncated space.
inline SpMat mode_transform(const FockSpace& s, const Mat& u) {
  if (u.rows() != s.n_modes()) throw ValidationError("mode matrix size does not match the space");
  require_unitary(u);
  const Mat k = unitary_log(u);
  const int m = s.n_modes();
  std::vector<SpMat> ann(m);
  for (int i = 0; i < m; ++i) ann[i] = ladder(s, i, Kind::annihilate);
  SpMat g(s.dim(), s.dim());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (std::abs(k(i, j)) > 0.0) g += k(i, j) * SpMat(adjoint(ann[i]) * ann[j]);
  std::vector<Triplet> t;
  for (int n = 0; n <= s.n_max(); ++n) {
    const auto& idx = s.sector(n);
    Mat block = restrict_to(g, idx);
    // iG is hermitian; exponentiate through its eigenbasis
    Mat h = I1 * block;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("sector eigendecomposition failed");
    Vec ph = (-I1 * es.eigenvalues().cast<cplx>()).array().exp();
    Mat ub = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b)
        if (std::abs(ub(a, b)) > 1e-300) t.emplace_back(idx[a], idx[b], ub(a, b));
  }
  SpMat out(s.dim(), s.dim());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

enum class BasisDirection { abcd_to_xyzn, xyzn_to_abcd };

inline StateVector change_basis_xyzn(const StateVector& st, BasisDirection dir) {
  const RMat m = xyzn_matrix();
  const Mat u = (dir == BasisDirection::abcd_to_xyzn ? m : RMat(m.transpose())).cast<cplx>();
  return StateVector(st.space, mode_transform(*st.space, u) * st.amp);
}

}  // namespace urfock

#endif  // URFOCK_FOCK_HPP
