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

#include <sstream>

#include "urfock/urfock.hpp"

using namespace urfock;
using Catch::Matchers::WithinAbs;

namespace {

std::array<GravitonState, 4> random_gravitons(SpacePtr s, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::array<GravitonState, 4> g;
  for (auto& gr : g)
    gr = build_graviton(checks::random_state(s, rng),
                        build_metric(checks::random_spinor(rng, true), checks::random_spinor(rng, true),
                                     checks::random_spinor(rng, true), checks::random_spinor(rng, true)));
  return g;
}

}  // namespace

TEST_CASE("unit spinors give the t+z metric", "[gravity]") {
  const Spinor2 e1(1.0, 0.0), z(0.0, 0.0);
  const SpinorMetric m = build_metric(e1, z, e1, z);
  for (int a : {0, 3})
    for (int b : {0, 3}) CHECK_THAT(m.g(a, b), WithinAbs(1.0, 1e-15));
  CHECK_THAT(m.g(1, 1), WithinAbs(0.0, 1e-15));
  CHECK(metric_rank(m.g) == 1);
  const SpinorMetric two = build_metric(e1, e1, e1, e1);
  CHECK_THAT(two.g(0, 0), WithinAbs(4.0, 1e-15));
}

TEST_CASE("metric is symmetric, rank <= 2 and swap invariant", "[gravity]") {
  std::mt19937_64 rng(15);
  for (int n = 0; n < 50; ++n) {
    const Spinor2 a = checks::random_spinor(rng), b = checks::random_spinor(rng), c = checks::random_spinor(rng),
                  d = checks::random_spinor(rng);
    const SpinorMetric m = build_metric(a, b, c, d);
    CHECK((m.g - m.g.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(metric_rank(m.g, 1e-10 * m.g.cwiseAbs().maxCoeff()) <= 2);
    const SpinorMetric s = build_metric(c, d, a, b);
    CHECK((s.g - m.g).cwiseAbs().maxCoeff() < 1e-13 * m.g.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("lowering uses eta twice", "[gravity]") {
  const SpinorMetric m = build_metric(Spinor2(1, 0), Spinor2(0, 1), Spinor2(0.3, 0.2), Spinor2(1, -1));
  const Mat4 l = m.lowered();
  CHECK_THAT(l(0, 1), WithinAbs(-m.g(0, 1), 1e-15));
  CHECK_THAT(l(2, 3), WithinAbs(m.g(2, 3), 1e-15));
}

TEST_CASE("printed long form differs only on the 11 and 22 components", "[gravity]") {
  const auto table = load_metric_longform(data_path("metric_longform_v1.txt"));
  std::mt19937_64 rng(16);
  const SpinorMetric m = build_metric(checks::random_spinor(rng), checks::random_spinor(rng),
                                      checks::random_spinor(rng), checks::random_spinor(rng));
  const Mat4 p = metric_from_longform(table, m, LongForm::printed);
  const Mat4 c = metric_from_longform(table, m, LongForm::corrected);
  const double scale = m.g.cwiseAbs().maxCoeff();
  CHECK((c - m.g).cwiseAbs().maxCoeff() < 1e-12 * scale);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if ((a == 1 && b == 1) || (a == 2 && b == 2)) continue;
      CHECK(std::abs(p(a, b) - m.g(a, b)) < 1e-12 * scale);
    }
  CHECK(std::abs(p(1, 1) - m.g(1, 1)) > 1e-6 * scale);
}

TEST_CASE("graviton state validation", "[gravity]") {
  auto s = build_space(1);
  const SpinorMetric m = build_metric(Spinor2(1, 0), Spinor2(0, 0), Spinor2(1, 0), Spinor2(0, 0));
  CHECK_THROWS_AS(build_graviton(StateVector(s), m), ValidationError);
  CHECK_NOTHROW(build_graviton(StateVector(s), m, false));
}

TEST_CASE("graviton components are scaled scalar fields", "[gravity]") {
  auto s = build_space(3);
  const auto q = build_quadratures(s);
  const SpinorMetric m = build_metric(Spinor2(1, 0), Spinor2(0, 0), Spinor2(1, 0), Spinor2(0, 0));
  const auto g = build_graviton(StateVector::vacuum(s), m);
  const Grid3 grid(4.0, 0.2);
  const WaveField f = graviton_wavefield(g, 0, 3, grid);
  const WaveField v = state_to_wavefield(change_basis_xyzn(StateVector::vacuum(s), BasisDirection::abcd_to_xyzn), grid);
  CHECK(std::abs(f.at(20, 18, 21) - v.at(20, 18, 21)) < 1e-15);
  const auto kg = graviton_klein_gordon(q, g, 0, 3, 0.0, 1e-3, grid);
  const auto plain = klein_gordon_residual(q, StateVector::vacuum(s), 0.0, 1e-3, grid);
  CHECK_THAT(kg.residual, WithinAbs(plain.residual, 1e-12));
  CHECK(graviton_wavefield(g, 1, 2, grid).at(3, 4, 5) == cplx(0.0));
}

TEST_CASE("ricci term list shape", "[gravity]") {
  const auto terms = ricci_terms();
  REQUIRE(terms.size() == 17);
  for (size_t t = 0; t < terms.size(); ++t) CHECK(terms[t].factors.size() == (t < 10 ? 2u : 4u));
  for (size_t t = 0; t < terms.size(); ++t) CHECK(std::abs(terms[t].coef) == (t < 13 ? 0.5 : 0.25));
}

TEST_CASE("ricci term list round trips", "[gravity]") {
  const auto terms = ricci_terms();
  std::istringstream in(serialize_ricci_terms(terms));
  const auto back = parse_ricci_terms(in);
  REQUIRE(back.size() == terms.size());
  for (size_t t = 0; t < terms.size(); ++t) {
    CHECK(back[t].coef == terms[t].coef);
    CHECK(back[t].factors == terms[t].factors);
  }
}

TEST_CASE("ricci term parser errors", "[gravity]") {
  CHECK_THROWS_AS(parse_ricci_factor("X:mn"), ValidationError);
  CHECK_THROWS_AS(parse_ricci_factor("U:mq"), ValidationError);
  CHECK_THROWS_AS(parse_ricci_factor("L:mn@rsk"), ValidationError);
  CHECK_THROWS_AS(load_ricci_terms("/nonexistent/ricci.txt"), ConfigError);
  const auto f = parse_ricci_factor("L:rl@nm");
  CHECK_FALSE(f.upper);
  CHECK(f.derivs == "nm");
}

TEST_CASE("flat metric has zero ricci tensor", "[gravity]") {
  MetricJet flat;
  flat.g = eta4();
  for (auto& m : flat.dg) m.setZero();
  for (auto& r : flat.ddg)
    for (auto& m : r) m.setZero();
  CHECK(ricci_from_terms(ricci_terms(), flat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("term list agrees with finite differences for a weak bump", "[gravity]") {
  BumpMetric bm;
  const Eigen::Vector4d x(0.1, -0.3, 0.25, 0.05);
  const Mat4 rt = ricci_from_terms(ricci_terms(), bm.jet(x));
  const Mat4 rf = ricci_finite_difference([&](const Eigen::Vector4d& y) { return bm.at(y); }, x, 0.05);
  CHECK((rt - rf).cwiseAbs().maxCoeff() < 0.05 * rf.cwiseAbs().maxCoeff());
}

TEST_CASE("finite difference oracle matches a conformally flat closed form", "[gravity]") {
  // g = e^{2 f} eta in 4-D: R_mn = -2 (d_m d_n f - d_m f d_n f) - eta_mn (box f + 2 (df)^2)
  const Eigen::Vector4d k(0.3, -0.2, 0.1, 0.4);
  auto metric = [&](const Eigen::Vector4d& y) -> Mat4 { return std::exp(2 * 0.01 * k.dot(y)) * eta4(); };
  const Eigen::Vector4d x(0.2, 0.1, -0.1, 0.3);
  const Mat4 rf = ricci_finite_difference(metric, x, 0.05);
  const Eigen::Vector4d df = 0.01 * k;
  const Mat4 e = eta4();
  const double sq = df.dot(e * df);
  Mat4 want = 2.0 * df * df.transpose() - e * (2.0 * sq);
  CHECK((rf - want).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("quantized evaluator is multilinear and zero on zero", "[gravity]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s);
  const auto terms = ricci_terms();
  auto g = random_gravitons(s, 18);
  const auto base = evaluate_quantized_ricci(terms, g, 1, 2, q);
  auto h = g;
  h[0].psi.amp *= cplx(0.0, 2.0);
  const auto scaled = evaluate_quantized_ricci(terms, h, 1, 2, q);
  for (size_t t = 0; t < terms.size(); ++t)
    CHECK(max_abs(Vec(scaled.per_term[t] - cplx(0.0, 2.0) * base.per_term[t])) < 1e-12);
  for (auto& gr : g) gr.psi.amp.setZero();
  CHECK(evaluate_quantized_ricci(terms, g, 0, 0, q).norm == 0.0);
  CHECK_THROWS_AS(evaluate_quantized_ricci(terms, g, 4, 0, q), ValidationError);
}

TEST_CASE("quantized ricci is measurably asymmetric", "[gravity]") {
  auto s = build_space(2);
  const auto q = build_quadratures(s);
  const auto g = random_gravitons(s, 19);
  std::array<GravitonState, 4> same{g[0], g[0], g[0], g[0]};
  const auto a = quantized_ricci_asymmetry(ricci_terms(), same, q);
  CHECK(a.max_value > 0.0);
  CHECK(a.relative() > 1e-3);
}
