// Copyright 2026 The Approach Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "approach/game_model.h"

#include <cmath>
#include <random>

#include "approach/errors.h"
#include "approach/lp.h"
#include "doctest.h"

namespace approach {
namespace {

TargetSet UnitSquare() {
  return TargetSet::MakePolytope({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 0, 1, 0});
}

TEST_CASE("payoff: examples") {
  CHECK(Payoff(VectorGame::Scalar({{2.0}}), MixedAction({1.0}), MixedAction({1.0}))[0] ==
        2.0);
  const VectorGame pennies = VectorGame::Scalar({{1, -1}, {-1, 1}});
  CHECK(std::abs(Payoff(pennies, MixedAction({0.5, 0.5}), MixedAction({0.3, 0.7}))[0]) <=
        1e-15);
  const VectorGame sel({{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}});
  const Vec g = Payoff(sel, MixedAction::Pure(2, 0), MixedAction::Pure(2, 1));
  CHECK(g == Vec{0.0, 1.0});
}

TEST_CASE("payoff: dimension mismatch and malformed games") {
  const VectorGame pennies = VectorGame::Scalar({{1, -1}, {-1, 1}});
  CHECK_THROWS_AS(Payoff(pennies, MixedAction::Uniform(3), MixedAction::Uniform(2)),
                  ConfigError);
  CHECK_THROWS_AS(VectorGame({}), ConfigError);
  CHECK_THROWS_AS(VectorGame({{{1.0}, {1.0, 2.0}}}), ConfigError);
  CHECK_THROWS_AS(VectorGame::Scalar({{1.0, 2.0}, {3.0}}), ConfigError);
  CHECK_THROWS_AS(VectorGame::Scalar({{std::nan("")}}), ConfigError);
}

TEST_CASE("game: kappa is raised to the largest entry norm") {
  const VectorGame g({{{3, 4}, {0, 1}}}, 1.0);
  CHECK(g.kappa() == 5.0);
  const VectorGame h({{{3, 4}}}, 7.0);
  CHECK(h.kappa() == 7.0);
}

MixedAction RandomMixed(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  Vec w(n);
  for (double& v : w) v = e(rng);
  return MixedAction::Normalized(w);
}

TEST_CASE("payoff: norm bound and bilinearity on random samples") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int a = 1 + trial % 4, b = 1 + (trial / 4) % 3, d = 1 + trial % 3;
    std::vector<std::vector<Vec>> p(a, std::vector<Vec>(b, Vec(d)));
    for (auto& row : p) {
      for (auto& v : row) {
        for (double& c : v) c = unif(rng);
      }
    }
    const VectorGame game(p);
    const MixedAction x = RandomMixed(rng, a), x2 = RandomMixed(rng, a);
    const MixedAction y = RandomMixed(rng, b);
    CHECK(Norm(Payoff(game, x, y)) <= game.kappa() + 1e-12);
    const double lambda = 0.5 * (unif(rng) + 1.0);
    Vec mix(a);
    for (int i = 0; i < a; ++i) mix[i] = lambda * x[i] + (1 - lambda) * x2[i];
    const Vec lhs = Payoff(game, MixedAction::Normalized(mix), y);
    const Vec g1 = Payoff(game, x, y), g2 = Payoff(game, x2, y);
    for (int k = 0; k < d; ++k) {
      CHECK(std::abs(lhs[k] - (lambda * g1[k] + (1 - lambda) * g2[k])) <= 1e-12);
    }
  }
}

TEST_CASE("target: distance and projection examples") {
  const TargetSet h = TargetSet::MakeHalfSpace({1.0}, 0.0);
  const Vec g07 = {0.7};
  CHECK(h.Distance(g07) == doctest::Approx(0.7));
  CHECK(h.Project(g07)[0] == doctest::Approx(0.0));

  const TargetSet ball = TargetSet::MakeBall({0, 0}, 1.0);
  const Vec g34 = {3, 4};
  CHECK(ball.Distance(g34) == doctest::Approx(4.0));
  const Vec pb = ball.Project(g34);
  CHECK(pb[0] == doctest::Approx(0.6));
  CHECK(pb[1] == doctest::Approx(0.8));

  const TargetSet sq = UnitSquare();
  const Vec g2 = {2, 0.5};
  CHECK(sq.Distance(g2) == doctest::Approx(1.0));
  const Vec ps = sq.Project(g2);
  CHECK(ps[0] == doctest::Approx(1.0));
  CHECK(ps[1] == doctest::Approx(0.5));
  const Vec corner = {2, 3};
  CHECK(sq.Distance(corner) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("target: support examples") {
  const Vec u11 = {1, 1};
  CHECK(*UnitSquare().Support(u11) == doctest::Approx(2.0));
  const TargetSet seg = TargetSet::MakePolytope({{1}, {-1}}, {1, 1});
  const Vec um = {-1};
  CHECK(*seg.Support(um) == doctest::Approx(1.0));
  const TargetSet tri =
      TargetSet::MakePolytope({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, 1}, {{0, 0}, {1, 0}, {0, 1}});
  const Vec u12 = {1, 2};
  CHECK(*tri.Support(u12) == doctest::Approx(2.0));
  // Same triangle without the vertex list goes through the LP.
  const TargetSet tri_lp = TargetSet::MakePolytope({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, 1});
  CHECK(*tri_lp.Support(u12) == doctest::Approx(2.0));
}

TEST_CASE("target: unbounded support is signalled") {
  const TargetSet h = TargetSet::MakeHalfSpace({1.0, 0.0}, 2.0);
  const Vec along = {3.0, 0.0}, across = {0.0, 1.0}, back = {-1.0, 0.0};
  CHECK(*h.Support(along) == doctest::Approx(6.0));
  CHECK_FALSE(h.Support(across).has_value());
  CHECK_FALSE(h.Support(back).has_value());
  const TargetSet quadrant = TargetSet::MakePolytope({{-1, 0}, {0, -1}}, {0, 0});
  CHECK_FALSE(quadrant.Support(along).has_value());
  CHECK(*quadrant.Support(back) == doctest::Approx(0.0));
}

TEST_CASE("target: invalid sets fail fast") {
  CHECK_THROWS_AS(TargetSet::MakePolytope({{1}, {-1}}, {0, -1}), InfeasibleError);
  CHECK_THROWS_AS(TargetSet::MakeUnion({}), InfeasibleError);
  CHECK_THROWS_AS(TargetSet::MakeBall({0}, -1.0), ConfigError);
  CHECK_THROWS_AS(TargetSet::MakeHalfSpace({0.0}, 1.0), ConfigError);
  CHECK_THROWS_AS(TargetSet::MakePolytope({{1, 0}}, {1, 2}), ConfigError);
  CHECK_THROWS_AS(TargetSet::MakeUnion({TargetSet::MakeBall({0}, 1.0),
                                        TargetSet::MakeBall({0, 0}, 1.0)}),
                  ConfigError);
}

TEST_CASE("target: union uses the nearest member, lowest index on ties") {
  const TargetSet u = TargetSet::MakeUnion(
      {TargetSet::MakeBall({-2.0}, 0.5), TargetSet::MakeBall({2.0}, 0.5)});
  const Vec mid = {0.0}, right = {1.0};
  CHECK(u.Distance(mid) == doctest::Approx(1.5));
  CHECK(u.Project(mid)[0] == doctest::Approx(-1.5));
  CHECK(u.Project(right)[0] == doctest::Approx(1.5));
}

TEST_CASE("target: consistency and 1-Lipschitz distance on random points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  const std::vector<TargetSet> sets = {
      TargetSet::MakeHalfSpace({1.0, -2.0}, 0.5),
      TargetSet::MakeBall({0.5, -0.5}, 1.2),
      UnitSquare(),
      TargetSet::MakePolytope({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, 1}),
      TargetSet::MakeUnion({UnitSquare(), TargetSet::MakeBall({-2, -2}, 0.5)}),
  };
  for (const TargetSet& e : sets) {
    for (int trial = 0; trial < 200; ++trial) {
      const Vec g = {unif(rng), unif(rng)};
      const Vec h = {unif(rng), unif(rng)};
      const Vec p = e.Project(g);
      CHECK(std::abs(Distance(g, p) - e.Distance(g)) <= 1e-9);
      CHECK(e.Distance(p) <= 1e-9);
      CHECK(std::abs(e.Distance(g) - e.Distance(h)) <= Distance(g, h) + 1e-12);
    }
  }
}

TEST_CASE("target: polytope projection against a fine grid oracle") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  const TargetSet tri = TargetSet::MakePolytope({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, 1});
  for (int trial = 0; trial < 20; ++trial) {
    const Vec g = {unif(rng), unif(rng)};
    double best = kInfinity;
    const int steps = 400;
    for (int p = 0; p <= steps; ++p) {
      for (int q = 0; p + q <= steps; ++q) {
        const Vec z = {static_cast<double>(p) / steps, static_cast<double>(q) / steps};
        best = std::min(best, Distance(g, z));
      }
    }
    CHECK(std::abs(tri.Distance(g) - best) <= 2.0 / steps);
    CHECK(tri.Distance(g) <= best + 1e-12);
  }
}

}  // namespace
}  // namespace approach
