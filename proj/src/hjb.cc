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
#include <limits>
#include <string>

#include "approach/errors.h"
#include "approach/lp.h"
#include "approach/parallel.h"

namespace approach {

const char* OrderName(Order order) {
  return order == Order::kMinMax ? "minmax" : "maxmin";
}

Order ParseOrder(const std::string& name) {
  if (name == "minmax") return Order::kMinMax;
  if (name == "maxmin") return Order::kMaxMin;
  throw ConfigError("order must be 'minmax' or 'maxmin', got '" + name + "'");
}

SchemeConfig ResolveSchemeConfig(const SchemeConfig& config, const VectorGame& game) {
  SchemeConfig out = config;
  const int d = game.d();
  if (!std::isfinite(out.s0) || out.s0 <= 0.0 || out.s0 >= 1.0) {
    throw ConfigError("scheme: s0 must lie in (0, 1)");
  }
  if (out.steps < 1) throw ConfigError("scheme: steps must be positive");
  const double ds = (1.0 - out.s0) / out.steps;
  if (ds > out.s0 * (1.0 + 1e-12)) {
    throw ConfigError("scheme: time step " + std::to_string(ds) +
                      " exceeds s0 = " + std::to_string(out.s0) +
                      "; increase steps");
  }
  if (out.action_resolution < 2) {
    throw ConfigError("scheme: action_resolution must be at least 2");
  }
  if (out.nodes.empty()) out.nodes.assign(d, 101);
  if (static_cast<int>(out.nodes.size()) != d) {
    throw ConfigError("scheme: nodes must list one count per payoff dimension");
  }
  for (int n : out.nodes) {
    if (n < 2) throw ConfigError("scheme: at least 2 nodes per dimension");
  }
  const Box hull = PayoffBoundingBox(game);
  if (!out.box) {
    Box box = hull;
    for (int k = 0; k < d; ++k) {
      if (box.hi[k] - box.lo[k] <= 0.0) {
        box.lo[k] -= 1.0;
        box.hi[k] += 1.0;
      }
    }
    out.box = box;
  }
  const Box& box = *out.box;
  if (static_cast<int>(box.lo.size()) != d || static_cast<int>(box.hi.size()) != d) {
    throw ConfigError("scheme: box dimension does not match the game");
  }
  for (int k = 0; k < d; ++k) {
    if (!std::isfinite(box.lo[k]) || !std::isfinite(box.hi[k]) || box.lo[k] >= box.hi[k]) {
      throw ConfigError("scheme: box must have finite bounds with lo < hi");
    }
    const double tol = 1e-12 * std::max(1.0, box.hi[k] - box.lo[k]);
    if (hull.lo[k] < box.lo[k] - tol || hull.hi[k] > box.hi[k] + tol) {
      throw ConfigError("scheme: box does not contain every payoff vector");
    }
  }
  return out;
}

ValueGrid::ValueGrid(const SchemeConfig& config, double kappa)
    : config_(config), kappa_(kappa) {
  if (!config_.box || config_.nodes.empty()) {
    throw ConfigError("value grid: configuration is not resolved");
  }
  ds_ = (1.0 - config_.s0) / config_.steps;
  const int d = dim();
  strides_.assign(d, 1);
  num_nodes_ = 1;
  for (int k = d - 1; k >= 0; --k) {
    strides_[k] = num_nodes_;
    num_nodes_ *= config_.nodes[k];
  }
  spacing_.resize(d);
  for (int k = 0; k < d; ++k) {
    spacing_[k] = (box().hi[k] - box().lo[k]) / (config_.nodes[k] - 1);
  }
  values_.assign(num_slices(), Vec(num_nodes_, 0.0));
}

double ValueGrid::s(int k) const {
  return k == config_.steps ? 1.0 : config_.s0 + k * ds_;
}

Vec ValueGrid::NodePoint(int flat) const {
  Vec g(dim());
  for (int k = 0; k < dim(); ++k) {
    const int i = (flat / strides_[k]) % config_.nodes[k];
    g[k] = i == config_.nodes[k] - 1 ? box().hi[k] : box().lo[k] + i * spacing_[k];
  }
  return g;
}

std::span<const double> ValueGrid::slice(int k) const { return values_.at(k); }
std::span<double> ValueGrid::mutable_slice(int k) { return values_.at(k); }

bool ValueGrid::Contains(std::span<const double> g, double tol) const {
  if (static_cast<int>(g.size()) != dim()) return false;
  for (int k = 0; k < dim(); ++k) {
    if (!(g[k] >= box().lo[k] - tol && g[k] <= box().hi[k] + tol)) return false;
  }
  return true;
}

double ValueGrid::Interpolate(int k, std::span<const double> g) const {
  const Vec& v = values_[k];
  const int d = dim();
  if (d == 1) {
    const int n = config_.nodes[0];
    double z = (g[0] - box().lo[0]) / spacing_[0];
    z = std::clamp(z, 0.0, static_cast<double>(n - 1));
    const int i = std::min(static_cast<int>(z), n - 2);
    const double t = z - i;
    return (1.0 - t) * v[i] + t * v[i + 1];
  }
  int cell[8];
  double frac[8];
  std::vector<int> cell_big;
  Vec frac_big;
  int* ci = cell;
  double* fr = frac;
  if (d > 8) {
    cell_big.resize(d);
    frac_big.resize(d);
    ci = cell_big.data();
    fr = frac_big.data();
  }
  int base = 0;
  for (int j = 0; j < d; ++j) {
    const int n = config_.nodes[j];
    double z = (g[j] - box().lo[j]) / spacing_[j];
    z = std::clamp(z, 0.0, static_cast<double>(n - 1));
    ci[j] = std::min(static_cast<int>(z), n - 2);
    fr[j] = z - ci[j];
    base += ci[j] * strides_[j];
  }
  double acc = 0.0;
  for (int mask = 0; mask < (1 << d); ++mask) {
    double w = 1.0;
    int idx = base;
    for (int j = 0; j < d; ++j) {
      if (mask & (1 << j)) {
        w *= fr[j];
        idx += strides_[j];
      } else {
        w *= 1.0 - fr[j];
      }
    }
    if (w != 0.0) acc += w * v[idx];
  }
  return acc;
}

double ValueGrid::Evaluate(double s, std::span<const double> g) const {
  const int steps = config_.steps;
  if (s >= 1.0) return Interpolate(steps, g);
  if (s <= config_.s0) return Interpolate(0, g);
  int k = std::min(static_cast<int>((s - config_.s0) / ds_), steps - 1);
  while (k > 0 && this->s(k) > s) --k;
  while (k + 1 < steps && this->s(k + 1) <= s) ++k;
  const double w = (s - this->s(k)) / (this->s(k + 1) - this->s(k));
  const double lo = Interpolate(k, g);
  if (w <= 0.0) return lo;
  return (1.0 - w) * lo + w * Interpolate(k + 1, g);
}

double ValueGrid::Slack() const {
  return 2.0 * (*std::max_element(spacing_.begin(), spacing_.end()) + ds_);
}

namespace {

std::vector<int> VerticesFirst(const std::vector<MixedAction>& grid) {
  std::vector<int> first, rest;
  for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
    const Vec& w = grid[i].weights();
    (std::find(w.begin(), w.end(), 1.0) != w.end() ? first : rest).push_back(i);
  }
  first.insert(first.end(), rest.begin(), rest.end());
  return first;
}

}  // namespace

DppOperator::DppOperator(const VectorGame& game, int action_resolution)
    : d_(game.d()),
      xs_(SimplexGrid(game.a(), action_resolution)),
      ys_(SimplexGrid(game.b(), action_resolution)),
      x_visit_(VerticesFirst(xs_)),
      y_visit_(VerticesFirst(ys_)) {
  const int nx = static_cast<int>(xs_.size());
  const int ny = static_cast<int>(ys_.size());
  payoffs_.resize(static_cast<size_t>(nx) * ny * d_);
  for (int xi = 0; xi < nx; ++xi) {
    for (int yi = 0; yi < ny; ++yi) {
      const Vec g = Payoff(game, xs_[xi], ys_[yi]);
      std::copy(g.begin(), g.end(), payoffs_.begin() + (static_cast<size_t>(xi) * ny + yi) * d_);
    }
  }
}

template <typename NextValue>
StepOptimum DppOperator::Optimize(const NextValue& next, double c,
                                  std::span<const double> g, Order order,
                                  int warm) const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int nx = static_cast<int>(xs_.size());
  const int ny = static_cast<int>(ys_.size());
  double point_buf[8];
  Vec point_big;
  double* point = point_buf;
  if (d_ > 8) {
    point_big.resize(d_);
    point = point_big.data();
  }
  const std::span<const double> point_span(point, d_);
  auto eval = [&](int xi, int yi) {
    const double* p = &payoffs_[(static_cast<size_t>(xi) * ny + yi) * d_];
    for (int k = 0; k < d_; ++k) point[k] = g[k] + c * (p[k] - g[k]);
    return next(point_span);
  };
  const bool minmax = order == Order::kMinMax;
  const int n_outer = minmax ? nx : ny;
  const std::vector<int>& visit = minmax ? y_visit_ : x_visit_;
  // sign = +1: outer minimizes the inner max; sign = -1: outer maximizes the
  // inner min. Work with sign * value so both cases minimize.
  const double sign = minmax ? 1.0 : -1.0;
  int hint = -1;
  // Inner optimum of outer index o, abandoned once it cannot beat `bound`.
  auto inner = [&](int o, double bound, bool strict) {
    double m = -kInf;
    int arg = -1;
    auto visit_one = [&](int i) {
      const double v = sign * (minmax ? eval(o, i) : eval(i, o));
      if (v > m) {
        m = v;
        arg = i;
      }
      return strict ? m >= bound : m > bound;
    };
    bool stop = hint >= 0 && visit_one(hint);
    if (!stop) {
      for (int i : visit) {
        if (i == hint) continue;
        if (visit_one(i)) break;
      }
    }
    hint = arg;
    return m;
  };
  double best = kInf;
  int best_o = -1;
  if (warm >= 0 && warm < n_outer) {
    best = inner(warm, kInf, true);
    best_o = warm;
  }
  for (int o = 0; o < n_outer; ++o) {
    if (o == warm) continue;
    const bool ties_win = best_o >= 0 && o < best_o;
    const double v = inner(o, best, !ties_win);
    if (ties_win ? v <= best : v < best) {
      best = v;
      best_o = o;
    }
  }
  return {sign * best, best_o};
}

StepOptimum DppOperator::Step(const ValueGrid& vg, int k, std::span<const double> g,
                              Order order, int warm) const {
  if (k < 0 || k >= vg.num_slices() - 1) throw ConfigError("dpp: slice out of range");
  const double s = vg.s(k);
  const double t = vg.s(k + 1);
  const double c = (t - s) / t;
  auto next = [&](std::span<const double> p) { return vg.Interpolate(k + 1, p); };
  return Optimize(next, c, g, order, warm);
}

StepOptimum DppOperator::StepAt(const ValueGrid& vg, double s, std::span<const double> g,
                                Order order) const {
  const double s0 = vg.config().s0;
  if (!(s >= s0 - 1e-12 && s < 1.0)) {
    throw ConfigError("dpp: time " + std::to_string(s) + " outside [s0, 1)");
  }
  if (!vg.Contains(g)) throw ConfigError("dpp: state outside the grid box");
  const int steps = vg.num_slices() - 1;
  const int k = static_cast<int>(std::lround((s - s0) / vg.ds()));
  if (k >= 0 && k < steps && std::abs(vg.s(k) - s) <= 1e-12) {
    return Step(vg, k, g, order);
  }
  s = std::max(s, s0);
  const double t = std::min(s + vg.ds(), 1.0);
  const double c = (t - s) / t;
  auto next = [&](std::span<const double> p) { return vg.Evaluate(t, p); };
  return Optimize(next, c, g, order, -1);
}

ValueGrid SolveValue(const VectorGame& game, const TargetSet& target,
                     const SchemeConfig& config) {
  if (target.dim() != game.d()) {
    throw ConfigError("target dimension does not match the payoff dimension");
  }
  const SchemeConfig cfg = ResolveSchemeConfig(config, game);
  ValueGrid vg(cfg, game.kappa());
  std::span<double> terminal = vg.mutable_slice(cfg.steps);
  for (int i = 0; i < vg.num_nodes(); ++i) terminal[i] = target.Distance(vg.NodePoint(i));
  const DppOperator op(game, cfg.action_resolution);
  for (int k = cfg.steps - 1; k >= 0; --k) {
    std::span<double> out = vg.mutable_slice(k);
    ParallelFor(vg.num_nodes(), cfg.threads, [&](int begin, int end) {
      int warm = -1;
      for (int i = begin; i < end; ++i) {
        const StepOptimum r = op.Step(vg, k, vg.NodePoint(i), cfg.order, warm);
        out[i] = r.value;
        warm = r.outer;
      }
    });
  }
  return vg;
}

double Hamiltonian(const VectorGame& game, double s, std::span<const double> g,
                   std::span<const double> p) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw ConfigError("hamiltonian: s must be positive");
  }
  if (static_cast<int>(g.size()) != game.d()) {
    throw ConfigError("hamiltonian: state has the wrong dimension");
  }
  const GameSolution sol = MatrixGameValue(game.Scalarize(p));
  return (sol.value - Dot(p, g)) / s;
}

ValueEstimate ValueAtZero(const ValueGrid& vg) {
  const std::span<const double> v = vg.slice(0);
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double x : v) {
    sum += x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  ValueEstimate e;
  e.estimate = sum / v.size();
  e.spread = hi - lo;
  e.slack = vg.Slack();
  e.bound = 2.0 * vg.kappa() * vg.config().s0 + e.spread + e.slack;
  return e;
}

const char* VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kApproachable:
      return "weakly approachable";
    case Verdict::kExcludable:
      return "weakly excludable";
    case Verdict::kInconclusive:
      break;
  }
  return "inconclusive: refine";
}

Verdict Classify(const ValueEstimate& e, double tol) {
  if (e.estimate + e.bound <= tol) return Verdict::kApproachable;
  if (e.estimate - e.bound >= tol) return Verdict::kExcludable;
  return Verdict::kInconclusive;
}

double IsaacsGap(const VectorGame& game, const TargetSet& target,
                 const SchemeConfig& config) {
  SchemeConfig upper_cfg = config;
  upper_cfg.order = Order::kMinMax;
  SchemeConfig lower_cfg = config;
  lower_cfg.order = Order::kMaxMin;
  const ValueGrid upper = SolveValue(game, target, upper_cfg);
  const ValueGrid lower = SolveValue(game, target, lower_cfg);
  double gap = 0.0;
  for (int k = 0; k < upper.num_slices(); ++k) {
    const auto u = upper.slice(k);
    const auto l = lower.slice(k);
    for (size_t i = 0; i < u.size(); ++i) gap = std::max(gap, std::abs(u[i] - l[i]));
  }
  return gap;
}

}  // namespace approach
