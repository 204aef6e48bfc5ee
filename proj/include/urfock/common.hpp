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

#ifndef URFOCK_COMMON_HPP
#define URFOCK_COMMON_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace urfock {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<cplx>;

inline constexpr cplx I1{0.0, 1.0};

// Error taxonomy shared by every module. The CLI maps ConfigError and
// ValidationError to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

inline double max_abs(const SpMat& m) {
  double r = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

inline SpMat adjoint(const SpMat& m) { return SpMat(m.adjoint()); }

inline SpMat commutator(const SpMat& a, const SpMat& b) {
  return SpMat(a * b - b * a);
}

inline SpMat anticommutator(const SpMat& a, const SpMat& b) {
  return SpMat(a * b + b * a);
}

inline SpMat sparse_identity(Index n) {
  SpMat id(n, n);
  id.setIdentity();
  return id;
}

// Dense submatrix on a list of basis indices (rows and columns).
template <class M>
Mat restrict_to(const M& m, const std::vector<Index>& idx) {
  Mat d = Mat(m);
  Mat out(idx.size(), idx.size());
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) out(i, j) = d(idx[i], idx[j]);
  return out;
}

inline SpMat kron(const SpMat& a, const SpMat& b) {
  std::vector<Triplet> t;
  t.reserve(a.nonZeros() * b.nonZeros());
  for (Index i = 0; i < a.outerSize(); ++i)
    for (SpMat::InnerIterator ia(a, i); ia; ++ia)
      for (Index j = 0; j < b.outerSize(); ++j)
        for (SpMat::InnerIterator ib(b, j); ib; ++ib)
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
  SpMat r(a.rows() * b.rows(), a.cols() * b.cols());
  r.setFromTriplets(t.begin(), t.end());
  return r;
}

inline SpMat to_sparse(const Mat& m, double drop = 0.0) {
  std::vector<Triplet> t;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > drop) t.emplace_back(i, j, m(i, j));
  SpMat r(m.rows(), m.cols());
  r.setFromTriplets(t.begin(), t.end());
  return r;
}

}  // namespace urfock

#endif  // URFOCK_COMMON_HPP
