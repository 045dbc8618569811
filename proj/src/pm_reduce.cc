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

#include "approach/pm_reduce.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "approach/errors.h"
#include "approach/lp.h"
#include "approach/parallel.h"

namespace approach {

namespace {

constexpr double kFiberTolerance = 1e-10;

// Gaussian elimination with partial pivoting; false if singular.
bool SolveDense(Matrix g, Vec r, Vec& out) {
  const int n = static_cast<int>(r.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int k = c + 1; k < n; ++k) {
      if (std::abs(g[k][c]) > std::abs(g[piv][c])) piv = k;
    }
    if (std::abs(g[piv][c]) < 1e-12) return false;
    std::swap(g[piv], g[c]);
    std::swap(r[piv], r[c]);
    for (int k = c + 1; k < n; ++k) {
      const double f = g[k][c] / g[c][c];
      for (int l = c; l < n; ++l) g[k][l] -= f * g[c][l];
      r[k] -= f * r[c];
    }
  }
  out.assign(n, 0.0);
  for (int c = n - 1; c >= 0; --c) {
    double s = r[c];
    for (int l = c + 1; l < n; ++l) s -= g[c][l] * out[l];
    out[c] = s / g[c][c];
  }
  return true;
}

bool SamePoint(const Vec& a, const Vec& b, double tol) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace

SignalStructure::SignalStructure(std::vector<Vec> signals) : signals_(std::move(signals)) {
  if (signals_.empty()) throw ConfigError("signals: at least one action is required");
  if (signals_[0].empty()) throw ConfigError("signals: signal dimension must be >= 1");
  for (const Vec& s : signals_) {
    if (s.size() != signals_[0].size()) throw ConfigError("signals: ragged signal vectors");
    for (double v : s) {
      if (!std::isfinite(v)) throw ConfigError("signals: entries must be finite");
    }
  }
}

Vec SignalStructure::Observe(const MixedAction& y) const {
  if (y.size() != b()) throw ConfigError("signals: action has the wrong size");
  Vec mu(k(), 0.0);
  for (int j = 0; j < b(); ++j) {
    for (int r = 0; r < k(); ++r) mu[r] += y[j] * signals_[j][r];
  }
  return mu;
}

std::vector<Vec> SignalStructure::Alphabet() const {
  std::vector<Vec> out;
  for (const Vec& s : signals_) {
    if (std::none_of(out.begin(), out.end(), [&](const Vec& o) { return o == s; })) {
      out.push_back(s);
    }
  }
  return out;
}

FiberPolytope FiberVertices(const SignalStructure& s, std::span<const double> mu) {
  const int b = s.b();
  const int k = s.k();
  if (static_cast<int>(mu.size()) != k) throw ConfigError("fiber: signal has the wrong dimension");
  if (b > 20) throw ConfigError("fiber: at most 20 actions are supported");
  // Rows of [S; 1] and right-hand side [mu; 1].
  const int rows = k + 1;
  Vec rhs(mu.begin(), mu.end());
  rhs.push_back(1.0);
  auto column = [&](int j, int r) { return r < k ? s.signal(j)[r] : 1.0; };
  double scale = 1.0;
  for (int j = 0; j < b; ++j) {
    for (int r = 0; r < k; ++r) scale = std::max(scale, std::abs(s.signal(j)[r]));
  }

  FiberPolytope out{Vec(mu.begin(), mu.end()), {}};
  std::vector<Vec> found;
  for (unsigned mask = 1; mask < (1u << b); ++mask) {
    std::vector<int> support;
    for (int j = 0; j < b; ++j) {
      if (mask & (1u << j)) support.push_back(j);
    }
    const int m = static_cast<int>(support.size());
    if (m > rows) continue;
    Matrix gram(m, Vec(m, 0.0));
    Vec proj(m, 0.0);
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        for (int r = 0; r < rows; ++r) gram[p][q] += column(support[p], r) * column(support[q], r);
      }
      for (int r = 0; r < rows; ++r) proj[p] += column(support[p], r) * rhs[r];
    }
    Vec coef;
    if (!SolveDense(gram, proj, coef)) continue;
    if (*std::min_element(coef.begin(), coef.end()) < -kFiberTolerance) continue;
    double residual = 0.0;
    for (int r = 0; r < rows; ++r) {
      double v = -rhs[r];
      for (int p = 0; p < m; ++p) v += column(support[p], r) * coef[p];
      residual = std::max(residual, std::abs(v));
    }
    if (residual > kFiberTolerance * scale) continue;
    Vec y(b, 0.0);
    for (int p = 0; p < m; ++p) y[support[p]] = std::max(coef[p], 0.0);
    if (std::any_of(found.begin(), found.end(),
                    [&](const Vec& f) { return SamePoint(f, y, kFiberTolerance); })) {
      continue;
    }
    found.push_back(y);
  }
  if (found.empty()) throw InfeasibleError("fiber: signal is not achievable");
  std::sort(found.begin(), found.end());
  for (Vec& y : found) out.vertices.push_back(MixedAction::Normalized(std::move(y)));
  return out;
}

double FiberSupport(const VectorGame& game, const MixedAction& x,
                    const FiberPolytope& fiber, std::span<const double> u) {
  if (static_cast<int>(u.size()) != game.d()) throw ConfigError("fiber: direction has the wrong dimension");
  double best = -kInfinity;
  for (const MixedAction& y : fiber.vertices) best = std::max(best, Dot(u, Payoff(game, x, y)));
  return best;
}

std::vector<Vec> EtildePolytope::GridPoints() const {
  std::vector<Vec> out;
  out.reserve(size());
  for (const MixedAction& x : xs) {
    for (const Vec& mu : signals) {
      Vec p = x.weights();
      p.insert(p.end(), mu.begin(), mu.end());
      out.push_back(std::move(p));
    }
  }
  return out;
}

EtildePolytope BuildEtilde(const VectorGame& game, const TargetSet& target,
                           std::vector<MixedAction> xs, const SignalStructure& s,
                           std::vector<Vec> signals, int threads) {
  if (target.dim() != game.d()) throw ConfigError("etilde: target dimension differs from the game");
  if (s.b() != game.b()) throw ConfigError("etilde: signals must cover every action of player 2");
  if (xs.empty()) throw ConfigError("etilde: empty action grid");
  for (const MixedAction& x : xs) {
    if (x.size() != game.a()) throw ConfigError("etilde: grid action has the wrong size");
  }
  const auto poly = target.AsPolytope();
  if (!poly) throw ConfigError("etilde: target must be a half-space or polytope");
  if (signals.empty()) signals = s.Alphabet();

  EtildePolytope et;
  et.xs = std::move(xs);
  et.signals = std::move(signals);
  for (const Vec& mu : et.signals) et.fibers.push_back(FiberVertices(s, mu));
  et.normals = poly->normals;
  for (const Vec& u : et.normals) {
    const auto h = target.Support(u);
    if (!h) throw ConfigError("etilde: target is unbounded in a facet direction");
    et.bounds.push_back(*h);
  }
  const int facets = static_cast<int>(et.normals.size());
  const int nz = static_cast<int>(et.signals.size());
  const int cells = et.size();
  et.rows.assign(facets, Vec(cells, 0.0));
  ParallelFor(facets * cells, threads, [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      const int k = t / cells;
      const int c = t % cells;
      et.rows[k][c] = FiberSupport(game, et.xs[c / nz], et.fibers[c % nz], et.normals[k]);
    }
  });

  LpProblem lp(cells);
  for (int k = 0; k < facets; ++k) lp.AddLessEqual(LpRow::Dense(et.rows[k]), et.bounds[k]);
  lp.AddEqual(LpRow::Dense(Vec(cells, 1.0)), 1.0);
  et.empty = SolveLp(lp).status == LpStatus::kInfeasible;
  return et;
}

Vec GridWeights(const EtildePolytope& et, const DiscreteMeasure& q) {
  const std::vector<Vec> grid = et.GridPoints();
  if (q.dim() != static_cast<int>(grid[0].size())) {
    throw ConfigError("etilde: measure lives in the wrong dimension");
  }
  Vec w(grid.size(), 0.0);
  for (int i = 0; i < q.size(); ++i) {
    const auto it = std::find_if(grid.begin(), grid.end(), [&](const Vec& g) {
      return SamePoint(g, q.support()[i], 1e-12);
    });
    if (it == grid.end()) throw ConfigError("etilde: measure support point is not on the grid");
    w[it - grid.begin()] += q.weights()[i];
  }
  return w;
}

bool EtildeMembership(const EtildePolytope& et, const DiscreteMeasure& q) {
  const Vec w = GridWeights(et, q);
  for (size_t k = 0; k < et.rows.size(); ++k) {
    if (Dot(et.rows[k], w) > et.bounds[k] + 1e-9) return false;
  }
  return true;
}

MeasureConstraints ToMeasureConstraints(const EtildePolytope& et) {
  MeasureConstraints c;
  c.ub_rows = et.rows;
  c.ub_bounds = et.bounds;
  return c;
}

}  // namespace approach
