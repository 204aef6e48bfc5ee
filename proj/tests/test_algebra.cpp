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

#include <algorithm>

#include "urfock/urfock.hpp"

using namespace urfock;
using Catch::Matchers::WithinAbs;

namespace {

Octonion e(int i) { return Octonion::unit(i); }

bool same(const Octonion& a, const Octonion& b) { return (a - b).norm() == 0.0; }

}  // namespace

TEST_CASE("octonion unit products", "[algebra]") {
  CHECK(same(oct_mul(e(1), e(2)), e(3)));
  CHECK(same(oct_mul(e(2), e(1)), e(3) * -1.0));
  CHECK(same(oct_mul(e(1), e(1)), e(0) * -1.0));
  CHECK(same(oct_mul(e(0), e(5)), e(5)));
  for (const auto& l : kFanoLines) {
    CHECK(same(oct_mul(e(l[0]), e(l[1])), e(l[2])));
    CHECK(same(oct_mul(e(l[1]), e(l[2])), e(l[0])));
    CHECK(same(oct_mul(e(l[2]), e(l[0])), e(l[1])));
  }
}

TEST_CASE("every imaginary pair lies on exactly one line", "[algebra]") {
  for (int i = 1; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      int n = 0;
      for (const auto& l : kFanoLines) n += std::count(l.begin(), l.end(), i) && std::count(l.begin(), l.end(), j);
      CHECK(n == 1);
    }
}

TEST_CASE("eps3 is totally antisymmetric", "[algebra]") {
  const auto& t = eps3_table();
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j)
      for (int k = 1; k < 8; ++k) {
        CHECK(t[i][j][k] == -t[j][i][k]);
        CHECK(t[i][j][k] == -t[i][k][j]);
      }
}

TEST_CASE("alternative but not associative", "[algebra]") {
  CHECK(associator(e(3), e(3), e(5)).norm() == 0.0);
  CHECK(associator(e(5), e(3), e(3)).norm() == 0.0);
  CHECK(associator(e(1), e(2), e(4)).norm() == 2.0);
  CHECK(associator(e(1), e(2), e(3)).norm() == 0.0);  // quaternionic line
}

TEST_CASE("composition and conjugation on samples", "[algebra]") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  for (int n = 0; n < 200; ++n) {
    Octonion x, y;
    for (int i = 0; i < 8; ++i) {
      x.r[i] = nd(rng);
      y.r[i] = nd(rng);
    }
    CHECK_THAT(oct_mul(x, y).norm(), WithinAbs(x.norm() * y.norm(), 1e-12 * x.norm() * y.norm()));
    CHECK((oct_mul(x, y).conj() - oct_mul(y.conj(), x.conj())).norm() < 1e-12);
  }
}

TEST_CASE("derived eps4 differs from the printed list", "[algebra]") {
  const auto rep = derive_eps4();
  CHECK(rep.totally_antisymmetric);
  REQUIRE_FALSE(rep.discrepancies.empty());
  const bool has_1247 = std::any_of(rep.discrepancies.begin(), rep.discrepancies.end(), [](const auto& d) {
    return d.idx == std::array<int, 4>{1, 2, 4, 7};
  });
  CHECK(has_1247);
  // {e1,e2,e4} = (e1e2)e4 - e1(e2e4) = -2 eps4_124l e_l
  const Octonion a = associator(e(1), e(2), e(4));
  for (int l = 1; l < 8; ++l) CHECK(a.r[l] == -2.0 * rep.table.eps4[1][2][4][l]);
}

TEST_CASE("printed G2 generators are antisymmetric with rank 14", "[algebra]") {
  const auto g = printed_g2();
  const auto rep = g2_closure_report(g);
  CHECK(rep.max_antisymmetry == 0.0);
  CHECK(rep.rank_of_span == 14);
  CHECK(rep.derivation_defect.size() == 14);
  for (const RMat& m : g.all()) CHECK((m.array() != 0.0).count() == 8);
}

TEST_CASE("closure defect of a true subalgebra is zero", "[algebra]") {
  // so(2) x so(2) inside so(8): commuting rotations close trivially
  G2GeneratorSet g;
  for (int i = 0; i < 7; ++i) {
    g.L[i] = RMat::Zero(8, 8);
    g.R[i] = RMat::Zero(8, 8);
  }
  g.L[0](0, 1) = 1;
  g.L[0](1, 0) = -1;
  g.R[0](2, 3) = 1;
  g.R[0](3, 2) = -1;
  CHECK(g2_closure_report(g).closure_defect < 1e-14);
}

TEST_CASE("gl3 block satisfies jacobi; full table only modulo trace", "[algebra]") {
  const auto rep = jacobi_check(printed_structure_constants());
  CHECK(rep.antisymmetry == 0.0);
  CHECK(rep.gl3_residual < 1e-14);
  CHECK(rep.max_residual_mod_trace < 1e-12);
  CHECK(rep.max_residual > 0.1);
}

TEST_CASE("dirac matrices satisfy the clifford relation", "[algebra]") {
  const auto d = build_dirac();
  CHECK(clifford_defect(d) < 1e-14);
  CHECK(max_abs(Mat(d.gamma[0] - d.gamma[0].adjoint())) == 0.0);
  for (int i = 1; i < 4; ++i) CHECK(max_abs(Mat(d.gamma[i] + d.gamma[i].adjoint())) == 0.0);
}
