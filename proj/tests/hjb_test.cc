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

#include "approach/hjb.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "approach/errors.h"
#include "approach/lp.h"
#include "doctest.h"

namespace approach {
namespace {

const Matrix kExample = {{3, 1}, {0, 2}};

SchemeConfig Config(double s0, int steps, int nodes, int resolution) {
  SchemeConfig c;
  c.s0 = s0;
  c.steps = steps;
  c.nodes = {nodes};
  c.action_resolution = resolution;
  return c;
}

TEST_CASE("hamiltonian: examples") {
  const Vec g = {0.4};
  const Vec p1 = {1.0};
  const Vec p0 = {0.0};
  const Vec pm = {-2.0};
  const VectorGame one = VectorGame::Scalar({{1.5}});
  CHECK(Hamiltonian(one, 0.5, g, p1) == doctest::Approx((1.5 - 0.4) / 0.5));
  CHECK(Hamiltonian(one, 0.25, g, pm) == doctest::Approx(-2.0 * (1.5 - 0.4) / 0.25));
  const VectorGame pennies = VectorGame::Scalar({{1, -1}, {-1, 1}});
  CHECK(Hamiltonian(pennies, 0.5, g, p0) == 0.0);
  // Oracle: the matching-pennies value is 0.
  CHECK(MatrixGameValue({{1, -1}, {-1, 1}}).value == doctest::Approx(0.0));
  CHECK(Hamiltonian(pennies, 0.5, g, p1) == doctest::Approx(-0.8));
  CHECK_THROWS_AS(Hamiltonian(pennies, 0.0, g, p1), ConfigError);
  CHECK_THROWS_AS(Hamiltonian(pennies, -1.0, g, p1), ConfigError);
}

TEST_CASE("hamiltonian: Isaacs certificate and positive homogeneity") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 3;
    std::vector<std::vector<Vec>> p(3, std::vector<Vec>(2, Vec(d)));
    for (auto& row : p) {
      for (auto& v : row) {
        for (double& c : v) c = unif(rng);
      }
    }
    const VectorGame game(p);
    Vec dir(d), g(d);
    for (int k = 0; k < d; ++k) {
      dir[k] = unif(rng);
      g[k] = unif(rng);
    }
    const GameSolution sol = MatrixGameValue(game.Scalarize(dir));
    CHECK(sol.upper - sol.lower <= 1e-8);
    const double s = 0.1 + 0.4 * (unif(rng) + 1.0);
    const double h = Hamiltonian(game, s, g, dir);
    const double lambda = 0.5 + 2.0 * (unif(rng) + 1.0);
    Vec scaled = dir;
    for (double& v : scaled) v *= lambda;
    CHECK(std::abs(Hamiltonian(game, s, g, scaled) - lambda * h) <= 1e-8);
  }
}

TEST_CASE("scheme: configuration validation") {
  const VectorGame game = VectorGame::Scalar(kExample);
  SchemeConfig c = Config(0.05, 10, 11, 3);
  CHECK_THROWS_AS(ResolveSchemeConfig(c, game), ConfigError);  // ds = 0.095 > s0
  c.steps = 19;
  CHECK_NOTHROW(ResolveSchemeConfig(c, game));
  c.box = Box{{0.5}, {3.0}};
  CHECK_THROWS_AS(ResolveSchemeConfig(c, game), ConfigError);
  c.box = Box{{0.0}, {3.0}};
  c.nodes = {11, 11};
  CHECK_THROWS_AS(ResolveSchemeConfig(c, game), ConfigError);
  c.nodes = {11};
  c.action_resolution = 1;
  CHECK_THROWS_AS(ResolveSchemeConfig(c, game), ConfigError);
  c.action_resolution = 3;
  c.s0 = 0.0;
  CHECK_THROWS_AS(ResolveSchemeConfig(c, game), ConfigError);
  const SchemeConfig def = ResolveSchemeConfig(SchemeConfig{}, VectorGame::Scalar({{1.0}}));
  CHECK(def.box->lo[0] == 0.0);
  CHECK(def.box->hi[0] == 2.0);
  CHECK(def.nodes == std::vector<int>{101});
}

TEST_CASE("solve: single action closed form") {
  const VectorGame game = VectorGame::Scalar({{1.0}});
  const TargetSet target = TargetSet::MakeBall({1.0}, 0.0);
  SchemeConfig c = Config(0.05, 100, 101, 2);
  c.box = Box{{0.0}, {2.0}};
  const ValueGrid vg = SolveValue(game, target, c);
  const Vec g0 = {0.0};
  CHECK(std::abs(vg.Evaluate(0.5, g0) - 0.5) <= 0.02);
  double err = 0.0;
  for (int k = 0; k < vg.num_slices(); ++k) {
    for (int i = 0; i < vg.num_nodes(); ++i) {
      const double g = vg.NodePoint(i)[0];
      err = std::max(err, std::abs(vg.slice(k)[i] - vg.s(k) * std::abs(g - 1.0)));
    }
  }
  CHECK(err <= 0.02);
  const std::span<const double> terminal = vg.slice(vg.num_slices() - 1);
  for (int i = 0; i < vg.num_nodes(); ++i) {
    CHECK(terminal[i] == target.Distance(vg.NodePoint(i)));
  }
  const ValueEstimate e = ValueAtZero(vg);
  CHECK(std::abs(e.estimate) <= 0.05);
  CHECK(e.spread <= 0.05 * 2.0 + 1e-12);
  const Vec g1 = {1.0};
  CHECK(DppOperator(game, 2).StepAt(vg, 0.3, g1, Order::kMinMax).outer == 0);
}

// Half-line oracle: V(s, g) = max(0, s g + (1 - s) v - c).
double HalfLine(double s, double g, double v, double c) {
  return std::max(0.0, s * g + (1.0 - s) * v - c);
}

TEST_CASE("solve: scalar half-line targets match the closed form") {
  const VectorGame game = VectorGame::Scalar(kExample);
  const double v = MatrixGameValue(kExample).value;
  REQUIRE(v == doctest::Approx(1.5));
  // kappa = 3 here: a fine lattice is needed for a decisive verdict.
  const SchemeConfig c = Config(0.005, 199, 401, 11);
  {
    const ValueGrid vg = SolveValue(game, TargetSet::MakeHalfSpace({1.0}, 2.0), c);
    const Vec g = {1.0};
    CHECK(std::abs(vg.Evaluate(0.5, g) - HalfLine(0.5, 1.0, v, 2.0)) <= 0.03);
    const ValueEstimate e = ValueAtZero(vg);
    CHECK(std::abs(e.estimate) <= 0.05);
    CHECK(Classify(e) == Verdict::kApproachable);
  }
  {
    const ValueGrid vg = SolveValue(game, TargetSet::MakeHalfSpace({1.0}, 1.0), c);
    const ValueEstimate e = ValueAtZero(vg);
    CHECK(std::abs(e.estimate - 0.5) <= 0.05);
    CHECK(Classify(e) == Verdict::kExcludable);
    double err = 0.0;
    for (int k = 0; k < vg.num_slices(); k += 7) {
      for (int i = 0; i < vg.num_nodes(); ++i) {
        const double g = vg.NodePoint(i)[0];
        err = std::max(err, std::abs(vg.slice(k)[i] - HalfLine(vg.s(k), g, v, 1.0)));
      }
    }
    CHECK(err <= 0.05);
  }
}

TEST_CASE("verdict thresholds") {
  CHECK(Classify({0.0, 0.0, 0.0, 0.1}) == Verdict::kApproachable);
  CHECK(Classify({0.5, 0.0, 0.0, 0.1}) == Verdict::kExcludable);
  CHECK(Classify({0.1, 0.0, 0.0, 0.05}) == Verdict::kInconclusive);
}

TEST_CASE("isaacs gap examples") {
  const TargetSet zero = TargetSet::MakeBall({0.0}, 0.0);
  CHECK(IsaacsGap(VectorGame::Scalar({{0.3}}), zero, Config(0.05, 100, 101, 33)) == 0.0);
  CHECK(IsaacsGap(VectorGame::Scalar({{1, -1}, {-1, 1}}), zero,
                  Config(0.05, 100, 101, 33)) <= 0.05);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix m(2, Vec(2));
    for (auto& row : m) {
      for (double& x : row) x = unif(rng);
    }
    CHECK(IsaacsGap(VectorGame::Scalar(m), zero, Config(0.05, 100, 101, 33)) <= 0.05);
  }
}

TEST_CASE("solve: one-step identity is bitwise") {
  const VectorGame game({{{1, 0}, {0, 1}}, {{0, 1}, {1, 0.5}}});
  const TargetSet target = TargetSet::MakeBall({0.5, 0.5}, 0.1);
  SchemeConfig c;
  c.s0 = 0.1;
  c.steps = 12;
  c.nodes = {9, 11};
  c.action_resolution = 5;
  for (Order order : {Order::kMinMax, Order::kMaxMin}) {
    c.order = order;
    const ValueGrid vg = SolveValue(game, target, c);
    const DppOperator op(game, c.action_resolution);
    for (int k = 0; k + 1 < vg.num_slices(); k += 3) {
      for (int i = 0; i < vg.num_nodes(); i += 5) {
        const double v = op.Step(vg, k, vg.NodePoint(i), order).value;
        CHECK(v == vg.slice(k)[i]);
      }
    }
  }
}

TEST_CASE("solve: threads do not change the result") {
  const VectorGame game = VectorGame::Scalar(kExample);
  const TargetSet target = TargetSet::MakeBall({1.2}, 0.1);
  SchemeConfig c = Config(0.1, 20, 41, 9);
  const ValueGrid a = SolveValue(game, target, c);
  c.threads = 3;
  const ValueGrid b = SolveValue(game, target, c);
  for (int k = 0; k < a.num_slices(); ++k) {
    CHECK(std::equal(a.slice(k).begin(), a.slice(k).end(), b.slice(k).begin()));
  }
}

TEST_CASE("solve: monotone in the terminal data") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const VectorGame game({{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}, {{0.5, 0.2}, {0.1, 0.9}}});
  SchemeConfig c;
  c.s0 = 0.2;
  c.steps = 8;
  c.nodes = {9, 9};
  c.action_resolution = 4;
  for (int trial = 0; trial < 6; ++trial) {
    // Nested balls: E2 inside E1, so d(., E1) <= d(., E2).
    const Vec center = {unif(rng), unif(rng)};
    const double r2 = 0.2 * unif(rng);
    const double r1 = r2 + 0.3 * unif(rng);
    const Vec shift = {(r1 - r2) * 0.5, 0.0};
    Vec inner_center = center;
    inner_center[0] += shift[0];
    const ValueGrid v1 = SolveValue(game, TargetSet::MakeBall(center, r1), c);
    const ValueGrid v2 = SolveValue(game, TargetSet::MakeBall(inner_center, r2), c);
    for (int k = 0; k < v1.num_slices(); ++k) {
      for (int i = 0; i < v1.num_nodes(); ++i) CHECK(v1.slice(k)[i] <= v2.slice(k)[i]);
    }
  }
}

TEST_CASE("solve: value range and soft Lipschitz bounds") {
  const VectorGame game = VectorGame::Scalar(kExample);
  const TargetSet target = TargetSet::MakeBall({1.0}, 0.25);
  const ValueGrid vg = SolveValue(game, target, Config(0.05, 95, 121, 9));
  double max_loss = 0.0;
  const auto terminal = vg.slice(vg.num_slices() - 1);
  for (double v : terminal) max_loss = std::max(max_loss, v);
  const double slack = vg.Slack();
  const double kappa = vg.kappa();
  for (int k = 0; k < vg.num_slices(); ++k) {
    const auto v = vg.slice(k);
    for (int i = 0; i < vg.num_nodes(); ++i) {
      CHECK(v[i] >= 0.0);
      CHECK(v[i] <= max_loss);
      if (i + 1 < vg.num_nodes()) {
        CHECK(std::abs(v[i + 1] - v[i]) <=
              std::max(1.0, 2.0 * kappa) * vg.s(k) * vg.spacing()[0] + slack);
      }
      if (k + 1 < vg.num_slices()) {
        CHECK(std::abs(vg.slice(k + 1)[i] - v[i]) <= 2.0 * kappa * vg.ds() + slack);
      }
    }
  }
}

TEST_CASE("solve: refinement consistency") {
  // Kink of the terminal loss a third of a cell away from the nearest node
  // at every level, so interpolation error is visible and must shrink.
  const VectorGame game = VectorGame::Scalar({{1.0}});
  const TargetSet target = TargetSet::MakeBall({1.0}, 0.0);
  std::vector<ValueGrid> grids;
  for (int level = 0; level < 3; ++level) {
    const int f = 1 << level;
    SchemeConfig c = Config(0.2, 5 * f, 10 * f + 1, 2);
    c.box = Box{{0.0}, {30.0 / 13.0}};
    grids.push_back(SolveValue(game, target, c));
  }
  auto diff = [](const ValueGrid& coarse, const ValueGrid& fine) {
    double d = 0.0;
    for (int k = 0; k < coarse.num_slices(); ++k) {
      for (int i = 0; i < coarse.num_nodes(); ++i) {
        d = std::max(d, std::abs(coarse.slice(k)[i] - fine.slice(2 * k)[2 * i]));
      }
    }
    return d;
  };
  const double d01 = diff(grids[0], grids[1]);
  const double d12 = diff(grids[1], grids[2]);
  CHECK(d01 > 0.0);
  CHECK(d12 < d01);
}

TEST_CASE("dpp: state outside the box is rejected") {
  const VectorGame game = VectorGame::Scalar(kExample);
  const ValueGrid vg = SolveValue(game, TargetSet::MakeHalfSpace({1.0}, 2.0),
                                  Config(0.1, 9, 11, 3));
  const DppOperator op(game, 3);
  const Vec outside = {5.0};
  CHECK_THROWS_AS(op.StepAt(vg, 0.5, outside, Order::kMinMax), ConfigError);
  const Vec inside = {1.0};
  CHECK_THROWS_AS(op.StepAt(vg, 1.0, inside, Order::kMinMax), ConfigError);
}

}  // namespace
}  // namespace approach
