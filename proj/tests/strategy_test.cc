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

#include "approach/strategy.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "approach/errors.h"
#include "approach/lp.h"
#include "approach/simulator.h"
#include "doctest.h"

namespace approach {
namespace {

std::shared_ptr<const FeedbackPolicy> Policy(const VectorGame& game, const TargetSet& target,
                                             SchemeConfig c) {
  auto vg = std::make_shared<const ValueGrid>(SolveValue(game, target, c));
  return std::make_shared<const FeedbackPolicy>(game, vg);
}

SchemeConfig Config(double s0, int steps, int nodes, int resolution) {
  SchemeConfig c;
  c.s0 = s0;
  c.steps = steps;
  c.nodes = {nodes};
  c.action_resolution = resolution;
  return c;
}

TEST_CASE("feedback: single action") {
  const VectorGame game = VectorGame::Scalar({{0.3}});
  const auto policy = Policy(game, TargetSet::MakeBall({0.0}, 0.0), Config(0.1, 10, 11, 5));
  const Vec g = {0.0};
  CHECK(policy->Player1(0.37, g) == MixedAction({1.0}));
  CHECK(policy->Player2(0.37, g) == MixedAction({1.0}));
}

TEST_CASE("feedback: matching pennies equalizer at the origin") {
  const VectorGame game = VectorGame::Scalar({{1, -1}, {-1, 1}});
  const auto policy = Policy(game, TargetSet::MakeBall({0.0}, 0.0), Config(0.05, 100, 101, 11));
  const Vec g = {0.0};
  for (double s : {0.05, 0.2, 0.5, 0.9}) {
    CHECK(policy->Player1(s, g) == MixedAction({0.5, 0.5}));
  }
}

TEST_CASE("feedback: attains the recomputed grid minimax") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const VectorGame game({{{1, 0}, {0, 1}, {0.3, 0.3}}, {{0, 1}, {1, 0}, {0.8, -0.2}}});
  const TargetSet target = TargetSet::MakeBall({0.5, 0.4}, 0.2);
  SchemeConfig c;
  c.s0 = 0.1;
  c.steps = 10;
  c.nodes = {11, 11};
  c.action_resolution = 6;
  const auto policy = Policy(game, target, c);
  const ValueGrid& vg = policy->grid();
  const std::vector<MixedAction> xs = SimplexGrid(game.a(), c.action_resolution);
  const std::vector<MixedAction> ys = SimplexGrid(game.b(), c.action_resolution);
  for (int trial = 0; trial < 30; ++trial) {
    const double s = 0.1 + 0.85 * 0.5 * (unif(rng) + 1.0);
    Vec g(2);
    for (int k = 0; k < 2; ++k) {
      g[k] = vg.box().lo[k] + 0.5 * (unif(rng) + 1.0) * (vg.box().hi[k] - vg.box().lo[k]);
    }
    const double t = std::min(s + vg.ds(), 1.0);
    const double coef = (t - s) / t;
    auto worst = [&](const MixedAction& x) {
      double m = -kInfinity;
      for (const MixedAction& y : ys) {
        const Vec p = Payoff(game, x, y);
        Vec next(2);
        for (int k = 0; k < 2; ++k) next[k] = g[k] + coef * (p[k] - g[k]);
        m = std::max(m, vg.Evaluate(t, next));
      }
      return m;
    };
    double best = kInfinity;
    for (const MixedAction& x : xs) best = std::min(best, worst(x));
    CHECK(std::abs(worst(policy->Player1(s, g)) - best) <= 1e-12);
  }
}

TEST_CASE("control: validation and lookup") {
  CHECK_THROWS_AS(PiecewiseConstantControl({0.0, 0.0}, {MixedAction({1.0})}), ConfigError);
  CHECK_THROWS_AS(PiecewiseConstantControl({0.0, 1.0}, {}), ConfigError);
  const PiecewiseConstantControl c({0.0, 0.5, 1.0}, {MixedAction({1.0, 0.0}), MixedAction({0.0, 1.0})});
  CHECK(c.At(0.2)[0] == 1.0);
  CHECK(c.At(0.5)[1] == 1.0);
  CHECK(c.At(1.0)[1] == 1.0);
}

TEST_CASE("nadc: precondition on the delay") {
  const VectorGame game = VectorGame::Scalar({{1, -1}, {-1, 1}});
  const auto policy = Policy(game, TargetSet::MakeBall({0.0}, 0.0), Config(0.1, 19, 21, 5));
  CHECK_THROWS_AS(NadcStrategy(policy, 22), ConfigError);  // 1/22 < ds = 0.9/19
  CHECK_NOTHROW(NadcStrategy(policy, 21));
}

TEST_CASE("nadc: single action plays the unique action") {
  const VectorGame game = VectorGame::Scalar({{0.7}});
  const auto policy = Policy(game, TargetSet::MakeBall({0.0}, 0.0), Config(0.1, 10, 11, 5));
  const NadcStrategy nadc(policy, 10);
  const PiecewiseConstantControl y({0.0, 1.0}, {MixedAction({1.0})});
  const PiecewiseConstantControl x = nadc.Respond(y);
  for (const MixedAction& v : x.values()) CHECK(v == MixedAction({1.0}));
}

PiecewiseConstantControl RandomControl(std::mt19937_64& rng, int b, int pieces) {
  std::exponential_distribution<double> e(1.0);
  Vec breaks = {0.0};
  std::vector<MixedAction> values;
  for (int i = 1; i <= pieces; ++i) {
    breaks.push_back(i == pieces ? 1.0 : static_cast<double>(i) / pieces);
    Vec w(b);
    for (double& v : w) v = e(rng);
    values.push_back(MixedAction::Normalized(w));
  }
  return PiecewiseConstantControl(breaks, values);
}

TEST_CASE("nadc: non-anticipation with delay (probe)") {
  std::mt19937_64 rng(43);
  const VectorGame game = VectorGame::Scalar({{3, 1}, {0, 2}});
  const auto policy = Policy(game, TargetSet::MakeHalfSpace({1.0}, 1.0), Config(0.1, 30, 61, 9));
  const int n_delay = 20;
  const NadcStrategy nadc(policy, n_delay);
  for (int trial = 0; trial < 10; ++trial) {
    const PiecewiseConstantControl y = RandomControl(rng, 2, 37);
    const PiecewiseConstantControl x = nadc.Respond(y);
    for (int m = nadc.first_boundary(); m < n_delay; ++m) {
      // Replace y after m/N by an arbitrary control.
      const double cut = static_cast<double>(m) / n_delay;
      const PiecewiseConstantControl z = RandomControl(rng, 2, 23);
      Vec breaks;
      std::vector<MixedAction> values;
      for (size_t i = 0; i + 1 < y.breakpoints().size() && y.breakpoints()[i] < cut; ++i) {
        breaks.push_back(y.breakpoints()[i]);
        values.push_back(y.values()[i]);
      }
      breaks.push_back(cut);
      values.push_back(z.At(cut));
      for (size_t i = 0; i < z.breakpoints().size(); ++i) {
        if (z.breakpoints()[i] > cut && z.breakpoints()[i] < 1.0) {
          breaks.push_back(z.breakpoints()[i]);
          values.push_back(z.values()[i]);
        }
      }
      breaks.push_back(1.0);
      const PiecewiseConstantControl y2(breaks, values);
      const PiecewiseConstantControl x2 = nadc.Respond(y2);
      for (double t = nadc.s0(); t < static_cast<double>(m + 1) / n_delay; t += 0.003) {
        CHECK(x.At(t) == x2.At(t));
      }
      CHECK(x.breakpoints() == x2.breakpoints());
    }
  }
}

TEST_CASE("nadc: piecewise constancy on the advertised breakpoints") {
  const VectorGame game = VectorGame::Scalar({{3, 1}, {0, 2}});
  const auto policy = Policy(game, TargetSet::MakeHalfSpace({1.0}, 1.0), Config(0.15, 20, 41, 9));
  const NadcStrategy nadc(policy, 10);
  CHECK(nadc.first_boundary() == 2);
  const PiecewiseConstantControl y({0.0, 1.0}, {MixedAction({0.25, 0.75})});
  const Vec expected = {0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const PiecewiseConstantControl x = nadc.Respond(y);
  const Vec& got = x.breakpoints();
  REQUIRE(got.size() == expected.size());
  for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expected[i]));
  CHECK(x.values().front() == nadc.x0());
}

TEST_CASE("nadc: matching pennies against a constant opponent") {
  const VectorGame game = VectorGame::Scalar({{1, -1}, {-1, 1}});
  const auto policy = Policy(game, TargetSet::MakeBall({0.0}, 0.0), Config(0.05, 100, 101, 11));
  const NadcStrategy nadc(policy, 20);
  const PiecewiseConstantControl y({0.0, 1.0}, {MixedAction({1.0, 0.0})});
  const PiecewiseConstantControl x = nadc.Respond(y);
  const ValueGrid& vg = policy->grid();
  const double slack = vg.Slack();
  double previous = kInfinity;
  for (size_t i = 0; i + 1 < x.breakpoints().size(); ++i) {
    const double t = x.breakpoints()[i];
    // Own weight on the second action never falls below the first.
    CHECK(x.values()[i][1] >= x.values()[i][0]);
    const Vec integral = IntegratePayoff(game, x, y, nadc.s0(), t);
    const Vec state = {(nadc.s0() * nadc.g0()[0] + integral[0]) / t};
    const double v = vg.Evaluate(t, state);
    CHECK(v <= previous + slack);
    previous = v;
  }
}

Matrix RandomMatrix(std::mt19937_64& rng, int a, int b) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix m(a, Vec(b));
  for (auto& row : m) {
    for (double& v : row) v = unif(rng);
  }
  return m;
}

TEST_CASE("to_repeated: single action averages exactly") {
  const VectorGame game = VectorGame::Scalar({{0.7}});
  const TargetSet target = TargetSet::MakeBall({0.7}, 0.0);
  const auto policy = Policy(game, target, Config(0.1, 10, 11, 3));
  const auto nadc = std::make_shared<const NadcStrategy>(policy, 10);
  for (int n : {1, 9, 10, 37, 200}) {
    const auto s = ToRepeated(nadc, n);
    CHECK(s->arbitrary() == (n < 10));
    const Trajectory t = Run(game, target, *s, Adversary::Stationary(MixedAction({1.0})), n, 0);
    CHECK(t.final_average()[0] == 0.7);
    CHECK(t.final_distance() == 0.0);
  }
}

TEST_CASE("to_repeated: replay equality and the 2 kappa N / n bound") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 12; ++trial) {
    const int a = 2 + trial % 2, b = 2 + (trial / 2) % 2;
    const VectorGame game = VectorGame::Scalar(RandomMatrix(rng, a, b));
    const TargetSet target = TargetSet::MakeHalfSpace({1.0}, 0.0);
    const auto policy = Policy(game, target, Config(0.1, 20, 41, 5));
    const int n_delay = 10 + trial % 4;
    const auto nadc = std::make_shared<const NadcStrategy>(policy, n_delay);
    const int n = 10 * n_delay + trial % n_delay;
    const auto strategy = ToRepeated(nadc, n);
    REQUIRE(strategy->k() == n / n_delay);
    const Adversary adv = Adversary::RandomSeeded(b, 100 + trial);
    const Trajectory t = Run(game, target, *strategy, adv, n, trial);
    std::vector<Stage> history;
    for (const StageRecord& r : t.stages) history.push_back({r.x, r.y});
    const PiecewiseConstantControl y = strategy->OpponentControl(history);
    const PiecewiseConstantControl x = nadc->Respond(y);
    // The repeated strategy played the NADC response on every stage.
    const int kn = strategy->k() * n_delay;
    for (int m = 1; m <= kn; ++m) {
      const double mid = 0.5 * (strategy->StageStart(m) + strategy->StageEnd(m));
      if (mid > nadc->s0()) CHECK(t.stages[m - 1].x == x.At(mid));
    }
    const Vec g0_star = strategy->InitialStateStar(history);
    const Vec endpoint = Endpoint(game, nadc->s0(), g0_star, x, y);
    CHECK(std::abs(t.stages[kn - 1].gbar[0] - endpoint[0]) <= 1e-12);
    CHECK(std::abs(t.final_average()[0] - endpoint[0]) <=
          2.0 * game.kappa() * n_delay / n + 1e-12);
  }
}

TEST_CASE("to_repeated: Act agrees with the incremental session") {
  std::mt19937_64 rng(53);
  const VectorGame game = VectorGame::Scalar(RandomMatrix(rng, 3, 2));
  const auto policy = Policy(game, TargetSet::MakeHalfSpace({1.0}, 0.0), Config(0.1, 20, 41, 5));
  const auto nadc = std::make_shared<const NadcStrategy>(policy, 10);
  const auto strategy = ToRepeated(nadc, 47);
  const Trajectory t = Run(game, TargetSet::MakeHalfSpace({1.0}, 0.0), *strategy,
                           Adversary::RandomSeeded(2, 5), 47, 1);
  std::vector<Stage> history;
  for (const StageRecord& r : t.stages) {
    CHECK(strategy->Act(history) == r.x);
    history.push_back({r.x, r.y});
  }
}

TEST_CASE("to_repeated: epsilon-optimality transfer on the single-action case") {
  const VectorGame game = VectorGame::Scalar({{1.0}});
  const TargetSet target = TargetSet::MakeBall({1.0}, 0.0);
  SchemeConfig c = Config(0.05, 100, 101, 2);
  c.box = Box{{0.0}, {2.0}};
  const auto policy = Policy(game, target, c);
  const ValueEstimate v0 = ValueAtZero(policy->grid());
  const auto nadc = std::make_shared<const NadcStrategy>(policy, 50);
  for (int n : {50, 120, 1000}) {
    const Trajectory t = Run(game, target, *ToRepeated(nadc, n),
                             Adversary::Stationary(MixedAction({1.0})), n, 0);
    CHECK(t.final_distance() <=
          v0.estimate + 2.0 * game.kappa() * 50 / n + policy->grid().Slack());
  }
}

}  // namespace
}  // namespace approach
