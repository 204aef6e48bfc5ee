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

TEST_CASE("one object reduces to plain bosons", "[manybody]") {
  ObjectRegistry reg(1, build_space(3));
  const auto g = build_green_components(reg);
  for (int r = 0; r < 4; ++r) CHECK(max_abs(SpMat(g.a(r) - ladder(*reg.space, r, Kind::annihilate))) == 0.0);
}

TEST_CASE("parabose relations at M=2", "[manybody]") {
  ObjectRegistry reg(2, build_space(2));
  const auto rep = parabose_report(build_green_components(reg));
  CHECK(rep.trilinear < 1e-10);
  CHECK(rep.pair_annihilators < 1e-10);
  CHECK(rep.pair_creators < 1e-10);
  CHECK(rep.same_object < 1e-10);
  CHECK(rep.mixed < 1e-12);
  CHECK(rep.sign_same < 1e-12);
  CHECK(rep.sign_mixed < 1e-12);
}

TEST_CASE("green components of different objects anticommute", "[manybody]") {
  ObjectRegistry reg(2, build_space(1));
  const auto g = build_green_components(reg);
  CHECK(max_abs(anticommutator(g.b[0][1], adjoint(g.b[1][2]))) < 1e-15);
  CHECK(max_abs(commutator(g.b[0][1], adjoint(g.b[1][2]))) > 0.5);
}

TEST_CASE("product dimension cap", "[manybody]") {
  CHECK_THROWS_AS(ObjectRegistry(3, build_space(4)), ConfigError);
  CHECK_THROWS_AS(ObjectRegistry(0, build_space(1)), ConfigError);
}

TEST_CASE("interaction keeps only equal labels", "[manybody]") {
  auto s = build_space(2);
  const cplx al(0.6, 0.0), be(0.0, 0.8), ga(0.28, 0.96), de(0.96, -0.28);
  StateVector p1(s), p2(s);
  p1.amp[s->rank({1, 0, 0, 0})] = al;
  p1.amp[s->rank({0, 1, 0, 0})] = be;
  p2.amp[s->rank({1, 0, 0, 0})] = ga;
  p2.amp[s->rank({0, 0, 1, 0})] = de;
  const auto out = interaction_apply(1.0, {p1, p2});
  CHECK(out.amp[out.diag_index(s->rank({1, 0, 0, 0}))] == al * ga);
  CHECK(out.amp.cwiseAbs().maxCoeff() == std::abs(al * ga));
  CHECK((out.amp.array() != cplx(0.0)).count() == 1);
  RVec w = RVec::Zero(s->dim());
  const auto zero = interaction_apply(w, {p1, p2});
  CHECK(zero.amp.norm() == 0.0);
}

TEST_CASE("free evolution keeps products unentangled", "[manybody]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s);
  std::mt19937_64 rng(10);
  const StateVector a = checks::random_state(s, rng), b = checks::random_state(s, rng);
  const auto ev = evolve_interacting(q, 0.0, product_state({a, b}), 1.3);
  const auto want = product_state({evolve_fock(q, a, 1.3), evolve_fock(q, b, 1.3)});
  CHECK(max_abs(Vec(ev.amp - want.amp)) < 1e-12);
  CHECK(schmidt_entropy(ev) < 1e-10);
}

TEST_CASE("interaction entangles and stays unitary", "[manybody]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s);
  std::mt19937_64 rng(11);
  const auto ps = product_state({checks::random_state(s, rng), checks::random_state(s, rng)});
  const auto ev = evolve_interacting(q, 1.0, ps, 1.0);
  CHECK_THAT(ev.norm(), WithinAbs(1.0, 1e-12));
  CHECK(schmidt_entropy(ev) > 0.01);
  CHECK(free_multibody_check(q, ev) < 1e-10);
}

TEST_CASE("schmidt entropy of a bell-like pair", "[manybody]") {
  auto s = build_space(1);
  MultiObjectState st{s, 2, Vec::Zero(s->dim() * s->dim())};
  st.amp[st.diag_index(0)] = 1.0 / std::sqrt(2.0);
  st.amp[st.diag_index(1)] = 1.0 / std::sqrt(2.0);
  CHECK_THAT(schmidt_entropy(st), WithinAbs(std::log(2.0), 1e-12));
}

TEST_CASE("layer-two fields are canonical", "[manybody]") {
  const auto l = build_layer_two(1, 2);
  const Index d = l.layer_one->dim();
  const auto inner = l.space->interior(1);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      SpMat c = commutator(l.field(a, Kind::annihilate), l.field(b, Kind::create));
      if (a == b) c -= sparse_identity(l.space->dim());
      CHECK(max_abs(restrict_to(c, inner)) < 1e-15);
    }
  CHECK_THROWS_AS(build_layer_two(3, 2), ConfigError);
}

TEST_CASE("second-quantized E acts as E on one-particle states", "[manybody]") {
  const auto l = build_layer_two(1, 2);
  const auto q = build_quadratures(l.layer_one);
  const SpMat e2q = second_quantize(l, q.E);
  const Index d = l.layer_one->dim();
  const auto& one = l.space->sector(1);
  REQUIRE(static_cast<Index>(one.size()) == d);
  const Mat m = Mat(e2q);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      Occupation oa(d, 0), ob(d, 0);
      oa[a] = 1;
      ob[b] = 1;
      CHECK(std::abs(m(l.space->rank(oa), l.space->rank(ob)) - q.E(a, b)) < 1e-14);
    }
}

TEST_CASE("propagator is causal with a projector kernel", "[manybody]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s, Labels::xyzn);
  const auto k = build_propagator(q);
  CHECK(k.labels.size() == 10);
  const std::array<double, 3> x{0.2, -0.1, 0.4}, y{-0.3, 0.5, 0.0};
  CHECK(propagator(k, x, y, 0.0, 1.0) == cplx(0.0));
  const cplx dd = propagator(k, x, x, 0.5, 0.5);
  CHECK(dd.real() > 0.0);
  CHECK_THAT(dd.imag(), WithinAbs(0.0, 1e-15));
  CHECK(std::abs(propagator(k, x, y, 0.0, 0.0) - std::conj(propagator(k, y, x, 0.0, 0.0))) < 1e-15);
  CHECK_THROWS_AS(build_propagator(build_quadratures(s, Labels::abcd)), ValidationError);
}

TEST_CASE("equal-time propagator reproduces sector fields", "[manybody]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s, Labels::xyzn);
  const auto k = build_propagator(q);
  const Grid3 g(8.0, 0.05);
  const WaveField f = state_to_wavefield(StateVector::basis(s, {1, 0, 1, 0}), g);
  const cplx got = propagator_apply(k, f, 0.0, 0.0, 150, 170, 160);
  CHECK(std::abs(got - f.at(150, 170, 160)) < 1e-3);
}

TEST_CASE("quantizer maps derivatives to i P", "[manybody]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s);
  std::mt19937_64 rng(12);
  const StateVector a = checks::random_state(s, rng), b = checks::random_state(s, rng);
  FieldExpression prod{{FieldTerm{2.0, {FieldFactor{0, {}}, FieldFactor{1, {}}}}}};
  CHECK(max_abs(Vec(quantize_expression(q, prod, {a, b}) - 2.0 * a.amp.cwiseProduct(b.amp))) < 1e-15);
  FieldExpression d1{{FieldTerm{1.0, {FieldFactor{0, {2}}}}}};
  const Vec want = I1 * apply_four_momentum(q, a, 2).amp;
  CHECK(max_abs(Vec(quantize_expression(q, d1, {a}) - want)) < 1e-15);
  FieldExpression bad{{FieldTerm{1.0, {FieldFactor{0, {1, 2, 3}}}}}};
  CHECK_THROWS_AS(quantize_expression(q, bad, {a}), ValidationError);
  FieldExpression oob{{FieldTerm{1.0, {FieldFactor{3, {}}}}}};
  CHECK_THROWS_AS(quantize_expression(q, oob, {a}), ValidationError);
  const auto lifted = diagonal_state(s, 2, a.amp);
  CHECK(lifted.amp[lifted.diag_index(4)] == a.amp[4]);
  CHECK_THAT(lifted.norm(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("electromagnetic demo pieces", "[manybody]") {
  auto s = build_space(1);
  const auto q = build_quadratures(s);
  std::mt19937_64 rng(14);
  const StateVector photon = checks::random_state(s, rng);
  Vec fermion(4 * s->dim());
  std::normal_distribution<double> nd;
  for (Index i = 0; i < fermion.size(); ++i) fermion[i] = cplx(nd(rng), nd(rng));
  const Spinor4 chi = majorana_single(ur_spinor(1, 0, 0, 0));
  const auto r = em_demo(q, photon, chi, fermion);
  CHECK(r.free.rows() == s->dim());
  CHECK((r.photon_vector - Vec4(1, 0, 0, 1)).norm() < 1e-15);
  // A = (1,0,0,1): -gamma^mu eta_mumu A^mu = -gamma^0 + gamma^3
  const auto d = build_dirac();
  const Eigen::Matrix4cd slash = -d.gamma[0] + d.gamma[3];
  for (Index n = 0; n < s->dim(); ++n) {
    const Spinor4 psi = fermion.segment<4>(4 * n);
    CHECK((r.coupling.row(n).transpose() - photon.amp[n] * slash * psi).norm() < 1e-14);
  }
  const auto zero = em_demo(q, StateVector(s), chi, fermion);
  CHECK(zero.coupling.norm() == 0.0);
  CHECK_THROWS_AS(em_demo(q, photon, chi, Vec::Zero(3)), ValidationError);
}
