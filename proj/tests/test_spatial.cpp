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

#include <numbers>
#include <sstream>

#include "urfock/urfock.hpp"

using namespace urfock;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("hermite functions, closed forms", "[spatial]") {
  const double c = std::pow(std::numbers::pi, -0.25);
  CHECK_THAT(hermite_fn(0, 0.0), WithinAbs(0.7511255444649425, 1e-15));
  for (double x : {-1.3, 0.0, 0.4, 2.5}) {
    CHECK_THAT(hermite_fn(1, x), WithinAbs(c * std::sqrt(2.0) * x * std::exp(-x * x / 2), 1e-15));
    CHECK_THAT(hermite_fn(2, x), WithinAbs(c / std::sqrt(2.0) * (2 * x * x - 1) * std::exp(-x * x / 2), 1e-15));
  }
}

TEST_CASE("hermite parity", "[spatial]") {
  for (int n = 0; n <= 10; ++n)
    for (double x : {0.3, 1.7, 4.1}) CHECK_THAT(hermite_fn(n, -x), WithinAbs((n % 2 ? -1 : 1) * hermite_fn(n, x), 1e-14));
}

TEST_CASE("hermite functions are orthonormal on the grid", "[spatial]") {
  Grid3 g(8.0, 0.01, 1u << 20);
  const RMat t = hermite_table(12, g.axis());
  const RMat gram = t * g.weights().asDiagonal() * t.transpose();
  CHECK(max_abs(Mat((gram - RMat::Identity(13, 13)).cast<cplx>())) < 1e-8);
}

TEST_CASE("grid validation", "[spatial]") {
  CHECK(Grid3(1.0, 0.5).n == 5);
  CHECK_THROWS_AS(Grid3(1.0, 0.3), ConfigError);
  CHECK_THROWS_AS(Grid3(1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(Grid3(8.0, 0.001, 100), ConfigError);
}

TEST_CASE("vacuum maps to the 3-D Gaussian", "[spatial]") {
  auto s = build_space(2);
  const Grid3 g(2.0, 0.5);
  const WaveField f = state_to_wavefield(StateVector::vacuum(s), g);
  for (Index i : {Index(0), Index(2), Index(4)})
    for (Index k : {Index(1), Index(3)}) {
      const double r2 = f.x(i) * f.x(i) + f.x(k) * f.x(k) + f.x(2) * f.x(2);
      CHECK_THAT(f.at(i, k, 2).real(), WithinAbs(std::pow(std::numbers::pi, -0.75) * std::exp(-r2 / 2), 1e-15));
    }
}

TEST_CASE("the n-mode does not enter the spatial field", "[spatial]") {
  auto s = build_space(4);
  const Grid3 g(3.0, 0.5);
  const WaveField a = state_to_wavefield(StateVector::basis(s, {1, 0, 2, 0}), g);
  const WaveField b = state_to_wavefield(StateVector::basis(s, {1, 0, 2, 1}), g);
  const WaveField c = state_to_wavefield(StateVector::basis(s, {0, 0, 0, 3}), g);
  const WaveField v = state_to_wavefield(StateVector::vacuum(s), g);
  for (Index i = 0; i < g.n; i += 3) {
    CHECK(a.at(i, 2, 5) == b.at(i, 2, 5));
    CHECK(c.at(i, 2, 5) == v.at(i, 2, 5));
  }
}

TEST_CASE("parity of the wavefield follows N_x", "[spatial]") {
  auto s = build_space(3);
  const Grid3 g(3.0, 0.25);
  const WaveField f = state_to_wavefield(StateVector::basis(s, {1, 2, 0, 0}), g);
  for (Index i = 0; i < g.n; i += 4) {
    const Index m = g.n - 1 - i;
    CHECK_THAT(std::abs(f.at(i, 3, 7) + f.at(m, 3, 7)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(f.at(5, i, 7) - f.at(5, m, 7)), WithinAbs(0.0, 1e-15));
  }
}

TEST_CASE("trapezoid norm of a random spatial state", "[spatial]") {
  auto s = build_space(5);
  std::mt19937_64 rng(3);
  StateVector st = checks::random_state(s, rng);
  for (Index i = 0; i < s->dim(); ++i)
    if (s->unrank(i)[3] != 0) st.amp[i] = 0.0;
  st.amp.normalize();
  const WaveField f = state_to_wavefield(st, Grid3(8.0, 0.05));
  CHECK_THAT(f.quadrature_norm(), WithinRel(1.0, 1e-6));
}

TEST_CASE("wavefield export is deterministic text", "[spatial]") {
  auto s = build_space(1);
  const Grid3 g(1.0, 0.5);
  const WaveField f = state_to_wavefield(StateVector::vacuum(s), g);
  std::ostringstream a, b;
  write_wavefield(a, f);
  write_wavefield(b, f);
  const std::string text = a.str();
  CHECK(text == b.str());
  CHECK(text.rfind("# urfock wavefield v1", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 125);
}
