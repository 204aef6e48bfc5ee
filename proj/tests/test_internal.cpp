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

#include "catch_amalgamated.hpp"

#include "urfock/urfock.hpp"

using namespace urfock;
using Catch::Matchers::WithinAbs;

TEST_CASE("single ur gives a future null vector", "[internal]") {
  std::mt19937_64 rng(8);
  for (int n = 0; n < 100; ++n) {
    const Vec4 v = spinor_to_vector(majorana_single(checks::random_spinor(rng, true)));
    CHECK_THAT(minkowski_dot(v, v), WithinAbs(0.0, 1e-13));
    CHECK(v[0] > 0.0);
  }
}

TEST_CASE("u=(1,0) points along t+z", "[internal]") {
  const Vec4 v = spinor_to_vector(majorana_single(ur_spinor(1, 0, 0, 0)));
  CHECK_THAT(v[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(v[1], WithinAbs(0.0, 1e-15));
  CHECK_THAT(v[2], WithinAbs(0.0, 1e-15));
  CHECK_THAT(v[3], WithinAbs(1.0, 1e-15));
}

TEST_CASE("pair vector is timelike or null and scales quadratically", "[internal]") {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 50; ++n) {
    const Spinor2 u = checks::random_spinor(rng), v = checks::random_spinor(rng);
    const Vec4 w = spinor_to_vector(majorana_pair(u, v));
    CHECK(minkowski_dot(w, w) >= -1e-12);
    CHECK(w[0] >= 0.0);
    const Vec4 w2 = spinor_to_vector(majorana_pair(2.0 * u, 2.0 * v));
    CHECK((w2 - 4.0 * w).norm() < 1e-12 * w2.norm());
  }
}

TEST_CASE("internal state normalization", "[internal]") {
  const Spinor2 om(1.0 / std::sqrt(2.0), cplx(0, 1.0 / std::sqrt(2.0)));
  Spinor4 phi = Spinor4::Zero();
  phi[1] = 1.0;
  const auto s = build_internal(om, phi);
  CHECK_THAT(s.gamma.norm(), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(build_internal(Spinor2(1, 1), phi), ValidationError);
  CHECK_THROWS_AS(build_internal(om, Spinor4::Ones()), ValidationError);
}

TEST_CASE("isospin is a spectator of the lifted dirac matrices", "[internal]") {
  const auto d = build_dirac();
  for (SpinSlot slot : {SpinSlot::first, SpinSlot::second}) {
    const auto m = lift_dirac(d.gamma[2], slot);
    // the lift commutes with any operator acting on isospin only
    Eigen::Matrix<cplx, 8, 8> iso = Eigen::Matrix<cplx, 8, 8>::Zero();
    const Eigen::Matrix<cplx, 8, 8> p = internal_permutation(slot).cast<cplx>();
    for (int k = 0; k < 4; ++k) iso.block<2, 2>(2 * k, 2 * k) = pauli()[1];
    const Eigen::Matrix<cplx, 8, 8> iso_stored = p.transpose() * iso * p;
    CHECK(max_abs(Mat(m * iso_stored - iso_stored * m)) < 1e-15);
  }
}

TEST_CASE("swapping the spin tag changes the internal hamiltonian", "[internal]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s, Labels::abcd, -1);
  const SpMat a = dirac_hamiltonian_internal(q, SpinSlot::first);
  const SpMat b = dirac_hamiltonian_internal(q, SpinSlot::second);
  CHECK(max_abs(SpMat(a - b)) > 0.1);
  CHECK(max_abs(SpMat(a - adjoint(a))) < 1e-14);
}

TEST_CASE("H_D is hermitian and squares to E^2 on the interior", "[internal]") {
  auto s = build_space(4);
  const auto q = build_quadratures(s, Labels::abcd, -1);
  const SpMat h = dirac_hamiltonian(q);
  CHECK(max_abs(SpMat(h - adjoint(h))) < 1e-14);
  const SpMat diff = SpMat(SpMat(h * h) - kron(q.E2, sparse_identity(4)));
  CHECK(max_abs(restrict_to(diff, extended_interior(*s, 3))) < 1e-12);
}

TEST_CASE("dirac kernel vectors solve Lambda psi = 0", "[internal]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s);
  const auto k = dirac_kernel(q);
  const Mat lam = dirac_lambda(q);
  REQUIRE_FALSE(k.states.empty());
  for (const auto& v : k.states) {
    CHECK_THAT(v.norm(), WithinAbs(1.0, 1e-12));
    CHECK((lam * v).norm() < 1e-12 * k.largest);
  }
  CHECK(k.singular_values[0] == k.smallest);
}

TEST_CASE("kernel dimension does not depend on the mode labels", "[internal]") {
  auto s = build_space(2);
  const auto a = dirac_kernel(build_quadratures(s, Labels::abcd));
  const auto b = dirac_kernel(build_quadratures(s, Labels::xyzn));
  CHECK(a.states.size() == b.states.size());
  CHECK(max_abs(Mat((a.singular_values - b.singular_values).cast<cplx>())) < 1e-10);
}
