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

#include "approach/transport.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "approach/errors.h"
#include "approach/lp.h"
#include "doctest.h"

namespace approach {
namespace {

// W_2^2 on the line through the quantile functions: sweep the merged CDF
// levels of both measures.
double QuantileW2(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  auto sorted = [](const DiscreteMeasure& m) {
    std::vector<std::pair<double, double>> v;
    for (int i = 0; i < m.size(); ++i) v.push_back({m.support()[i][0], m.weights()[i]});
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto a = sorted(mu), b = sorted(nu);
  size_t i = 0, j = 0;
  double ra = a[0].second, rb = b[0].second, total = 0.0;
  while (i < a.size() && j < b.size()) {
    const double w = std::min(ra, rb);
    total += w * (a[i].first - b[j].first) * (a[i].first - b[j].first);
    ra -= w;
    rb -= w;
    if (ra <= 1e-15 && ++i < a.size()) ra = a[i].second;
    if (rb <= 1e-15 && ++j < b.size()) rb = b[j].second;
  }
  return total;
}

DiscreteMeasure RandomMeasure(std::mt19937_64& rng, int n, int dim) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> e(1.0);
  std::vector<Vec> support(n, Vec(dim));
  for (auto& p : support) {
    for (double& v : p) v = unif(rng);
  }
  Vec w(n);
  for (double& v : w) v = e(rng);
  return DiscreteMeasure(support, MixedAction::Normalized(w).weights());
}

TEST_CASE("measure: validation") {
  CHECK_THROWS_AS(DiscreteMeasure({}, {}), ConfigError);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0}, {0.0}}, {0.5, 0.5}), ConfigError);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0}, {1.0}}, {0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0}, {1.0}}, {-0.5, 1.5}), ConfigError);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0}, {1.0, 2.0}}, {0.5, 0.5}), ConfigError);
  CHECK_NOTHROW(DiscreteMeasure({{0.0}, {1.0}}, {0.0, 1.0}));
}

TEST_CASE("w2: examples") {
  const TransportResult a = W2(DiscreteMeasure::Dirac({0.0}), DiscreteMeasure::Dirac({1.0}));
  CHECK(a.cost == doctest::Approx(1.0));
  CHECK(a.plan.size() == 1);
  CHECK(a.plan[0][0] == doctest::Approx(1.0));
  CHECK(a.phi[0] == 0.0);

  const DiscreteMeasure dirac = DiscreteMeasure::Dirac({0.3, 0.4});
  const TransportResult b = W2(dirac, dirac);
  CHECK(b.cost == 0.0);
  CHECK(b.phi[0] == 0.0);
  CHECK(b.phistar[0] == 0.0);

  const DiscreteMeasure u = DiscreteMeasure::Uniform({{0.0}, {1.0}});
  const TransportResult c = W2(u, u);
  CHECK(std::abs(c.cost) <= 1e-12);
  for (double v : c.phi) CHECK(v == 0.0);
  for (double v : c.phistar) CHECK(v == 0.0);
  CHECK(Certify(u, u, c).duality_gap <= 1e-12);

  const TransportResult d = W2(u, DiscreteMeasure::Dirac({0.0}));
  CHECK(d.cost == doctest::Approx(0.5));
  CHECK_THROWS_AS(W2(u, dirac), ConfigError);
}

TEST_CASE("w2: agrees with the one-dimensional quantile formula") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const DiscreteMeasure mu = RandomMeasure(rng, 1 + trial % 9, 1);
    const DiscreteMeasure nu = RandomMeasure(rng, 1 + (trial / 3) % 11, 1);
    CHECK(std::abs(W2(mu, nu).cost - QuantileW2(mu, nu)) <= 1e-10);
  }
}

TEST_CASE("w2: certificates, normalization and Lipschitz potentials") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const DiscreteMeasure mu = RandomMeasure(rng, 1 + trial % 15, 2);
    const DiscreteMeasure nu = RandomMeasure(rng, 1 + (trial * 7) % 13, 2);
    const TransportResult r = W2(mu, nu);
    const TransportCertificate cert = Certify(mu, nu, r);
    CHECK(cert.duality_gap <= 1e-7);
    CHECK(cert.dual_violation <= 1e-9);
    CHECK(cert.slackness_residual <= 1e-8);
    CHECK(cert.marginal_residual <= 1e-10);
    CHECK(r.phi[r.anchor] == 0.0);
    double direct = 0.0;
    const Matrix c = SquaredCosts(mu.support(), nu.support());
    for (int i = 0; i < mu.size(); ++i) {
      for (int j = 0; j < nu.size(); ++j) direct += r.plan[i][j] * c[i][j];
    }
    CHECK(std::abs(direct - r.cost) <= 1e-12);
    std::vector<Vec> all = mu.support();
    all.insert(all.end(), nu.support().begin(), nu.support().end());
    const double diam = Diameter(all);
    for (int i = 0; i < mu.size(); ++i) {
      for (int k = 0; k < mu.size(); ++k) {
        CHECK(std::abs(r.phi[i] - r.phi[k]) <=
              2.0 * diam * Distance(mu.support()[i], mu.support()[k]) + 1e-9);
      }
    }
    // (phistar)* = phi on the mu support.
    const Vec back = Conjugate(r.phistar, nu.support(), mu.support());
    for (int i = 0; i < mu.size(); ++i) CHECK(std::abs(back[i] - r.phi[i]) <= 1e-8);
  }
}

TEST_CASE("w2: symmetry and triangle inequality") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    const DiscreteMeasure a = RandomMeasure(rng, 2 + trial % 6, 2);
    const DiscreteMeasure b = RandomMeasure(rng, 2 + trial % 5, 2);
    const DiscreteMeasure c = RandomMeasure(rng, 2 + trial % 4, 2);
    const double ab = W2(a, b).cost, ba = W2(b, a).cost;
    CHECK(std::abs(ab - ba) <= 1e-9);
    const double bc = W2(b, c).cost, ac = W2(a, c).cost;
    CHECK(std::sqrt(ac) <= std::sqrt(ab) + std::sqrt(bc) + 1e-7);
  }
}

TEST_CASE("conjugate: examples and idempotence") {
  const std::vector<Vec> xs = {{0.0}, {1.0}, {3.0}};
  const std::vector<Vec> ys = {{0.5}, {2.0}};
  const Vec zero(3, 0.0);
  const Vec c0 = Conjugate(zero, xs, ys);
  CHECK(c0[0] == doctest::Approx(0.25));
  CHECK(c0[1] == doctest::Approx(1.0));
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vec phi(3);
    for (double& v : phi) v = unif(rng);
    const Vec once = Conjugate(phi, xs, ys);
    const Vec thrice = Conjugate(Conjugate(once, ys, xs), xs, ys);
    for (size_t j = 0; j < ys.size(); ++j) CHECK(std::abs(thrice[j] - once[j]) <= 1e-12);
  }
}

TEST_CASE("smooth_delta: examples and guarantees") {
  const DiscreteMeasure u = DiscreteMeasure::Uniform({{0.0}, {1.0}, {2.0}});
  const DiscreteMeasure su = SmoothDelta(u, 0.3);
  for (int i = 0; i < 3; ++i) CHECK(su.weights()[i] == doctest::Approx(1.0 / 3.0));

  const DiscreteMeasure d0({{0.0}, {1.0}}, {1.0, 0.0});
  const DiscreteMeasure s = SmoothDelta(d0, 0.5);
  CHECK(SmoothingWeight(d0, 0.5) == doctest::Approx(0.25));
  CHECK(s.weights()[0] == doctest::Approx(0.875));
  CHECK(s.weights()[1] == doctest::Approx(0.125));
  CHECK(W2(d0, s).cost == doctest::Approx(0.125));
  CHECK(W2(d0, s).cost <= 0.25);

  const DiscreteMeasure cap = SmoothDelta(d0, 2.0);
  CHECK(cap.weights()[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(SmoothDelta(d0, 0.0), ConfigError);
  CHECK_THROWS_AS(SmoothDelta(DiscreteMeasure::Dirac({1.0}), 0.1), ConfigError);

  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 40; ++trial) {
    const DiscreteMeasure mu = RandomMeasure(rng, 2 + trial % 8, 2);
    const double delta = 0.05 + 0.02 * trial;
    const DiscreteMeasure sm = SmoothDelta(mu, delta);
    const double lambda = SmoothingWeight(mu, delta);
    CHECK(std::sqrt(W2(mu, sm).cost) <= delta + 1e-9);
    for (double w : sm.weights()) CHECK(w >= lambda / mu.size() - 1e-15);
  }
}

TEST_CASE("projection: trivial cases") {
  const std::vector<Vec> grid = {{0.0}, {1.0}, {2.0}};
  const DiscreteMeasure theta(grid, {0.2, 0.5, 0.3});
  MeasureConstraints mean_le;  // mean <= 1.5
  mean_le.ub_rows = {{0.0, 1.0, 2.0}};
  mean_le.ub_bounds = {1.5};
  const ProjectionResult a = ProjectToMeasurePolytope(theta, grid, mean_le);
  CHECK(std::abs(a.cost) <= 1e-12);
  for (int j = 0; j < 3; ++j) CHECK(a.qstar.weights()[j] == doctest::Approx(theta.weights()[j]));

  const DiscreteMeasure nu(grid, {0.6, 0.1, 0.3});
  MeasureConstraints pin;
  pin.eq_rows = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  pin.eq_bounds = nu.weights();
  const ProjectionResult b = ProjectToMeasurePolytope(theta, grid, pin);
  CHECK(b.cost == doctest::Approx(W2(theta, nu).cost).epsilon(1e-12));

  MeasureConstraints impossible;
  impossible.ub_rows = {{0.0, 1.0, 2.0}};
  impossible.ub_bounds = {-0.5};
  CHECK_THROWS_AS(ProjectToMeasurePolytope(theta, grid, impossible), InfeasibleError);
}

TEST_CASE("projection: brute force over a weight lattice") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + trial % 3;
    std::vector<Vec> grid;
    for (int j = 0; j < m; ++j) grid.push_back({static_cast<double>(j) + 0.3 * unif(rng)});
    const DiscreteMeasure theta = RandomMeasure(rng, m, 1);
    MeasureConstraints c;
    Vec row(m);
    for (double& v : row) v = unif(rng) * 2.0 - 1.0;
    c.ub_rows = {row};
    c.ub_bounds = {0.5 * *std::min_element(row.begin(), row.end()) +
                   0.5 * *std::max_element(row.begin(), row.end())};
    const ProjectionResult r = ProjectToMeasurePolytope(DiscreteMeasure(grid, theta.weights()) ,
                                                        grid, c);
    // Oracle: every q with weights on a 1/100 lattice satisfying the row.
    const int steps = 100;
    double best = kInfinity;
    std::vector<int> k(m, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == m - 1) {
        k[pos] = left;
        Vec q(m);
        double lhs = 0.0;
        for (int j = 0; j < m; ++j) {
          q[j] = static_cast<double>(k[j]) / steps;
          lhs += row[j] * q[j];
        }
        if (lhs <= c.ub_bounds[0] + 1e-12) {
          best = std::min(best, QuantileW2(DiscreteMeasure(grid, theta.weights()),
                                           DiscreteMeasure(grid, MixedAction::Normalized(q).weights())));
        }
        return;
      }
      for (int v = 0; v <= left; ++v) {
        k[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, steps);
    CHECK(r.cost <= best + 1e-9);
    CHECK(best - r.cost <= 0.05);
    double lhs = 0.0;
    for (int j = 0; j < m; ++j) lhs += row[j] * r.qstar.weights()[j];
    CHECK(lhs <= c.ub_bounds[0] + 1e-9);
  }
}

}  // namespace
}  // namespace approach
