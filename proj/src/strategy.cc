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
#include <string>

#include "approach/errors.h"

namespace approach {

FeedbackPolicy::FeedbackPolicy(const VectorGame& game,
                               std::shared_ptr<const ValueGrid> grid)
    : game_(game),
      grid_(std::move(grid)),
      op_(game, grid_->config().action_resolution) {
  if (grid_->dim() != game.d()) {
    throw ConfigError("feedback: value grid dimension does not match the game");
  }
}

MixedAction FeedbackPolicy::Player1(double s, std::span<const double> g) const {
  return op_.xs()[op_.StepAt(*grid_, s, g, Order::kMinMax).outer];
}

MixedAction FeedbackPolicy::Player2(double s, std::span<const double> g) const {
  return op_.ys()[op_.StepAt(*grid_, s, g, Order::kMaxMin).outer];
}

PiecewiseConstantControl::PiecewiseConstantControl(Vec breakpoints,
                                                   std::vector<MixedAction> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size()) {
    throw ConfigError("control: need one value per piece and at least one piece");
  }
  for (size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw ConfigError("control: breakpoints must increase strictly");
    }
  }
  for (const MixedAction& v : values_) {
    if (v.size() != values_[0].size()) {
      throw ConfigError("control: values have mixed action counts");
    }
  }
}

const MixedAction& PiecewiseConstantControl::At(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  int i = static_cast<int>(it - breakpoints_.begin()) - 1;
  i = std::clamp(i, 0, static_cast<int>(values_.size()) - 1);
  return values_[i];
}

Vec IntegratePayoff(const VectorGame& game, const PiecewiseConstantControl& x,
                    const PiecewiseConstantControl& y, double a, double b) {
  Vec total(game.d(), 0.0);
  if (!(a < b)) return total;
  Vec cuts = {a, b};
  for (double t : x.breakpoints()) {
    if (t > a && t < b) cuts.push_back(t);
  }
  for (double t : y.breakpoints()) {
    if (t > a && t < b) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = cuts[i + 1] - cuts[i];
    const Vec g = Payoff(game, x.At(cuts[i]), y.At(cuts[i]));
    for (int k = 0; k < game.d(); ++k) total[k] += w * g[k];
  }
  return total;
}

Vec Endpoint(const VectorGame& game, double s0, std::span<const double> g0,
             const PiecewiseConstantControl& x, const PiecewiseConstantControl& y) {
  Vec g = IntegratePayoff(game, x, y, s0, 1.0);
  for (int k = 0; k < game.d(); ++k) g[k] += s0 * g0[k];
  return g;
}

NadcStrategy::NadcStrategy(std::shared_ptr<const FeedbackPolicy> policy, int n_delay,
                           std::optional<Vec> g0)
    : policy_(std::move(policy)), n_(n_delay), x0_(MixedAction::Pure(1, 0)) {
  const ValueGrid& vg = policy_->grid();
  if (n_ < 1) throw ConfigError("nadc: N must be positive");
  if (1.0 / n_ < vg.ds() * (1.0 - 1e-12)) {
    throw ConfigError("nadc: delay 1/N = " + std::to_string(1.0 / n_) +
                      " is finer than the value-grid time step " +
                      std::to_string(vg.ds()));
  }
  s0_ = vg.config().s0;
  m_star_ = static_cast<int>(std::ceil(s0_ * n_ - 1e-9));
  if (g0) {
    g0_ = *g0;
  } else {
    g0_.resize(vg.dim());
    for (int k = 0; k < vg.dim(); ++k) g0_[k] = 0.5 * (vg.box().lo[k] + vg.box().hi[k]);
  }
  if (!vg.Contains(g0_, 0.0)) throw ConfigError("nadc: g0 lies outside the grid box");
  x0_ = policy_->Player1(s0_, g0_);
}

MixedAction NadcStrategy::ActionAt(int j, std::span<const double> integral) const {
  if (j < m_star_ || j >= n_) throw ConfigError("nadc: interval index out of range");
  const double t = static_cast<double>(j) / n_;
  Vec g(g0_.size());
  for (size_t k = 0; k < g.size(); ++k) g[k] = (s0_ * g0_[k] + integral[k]) / t;
  return policy_->Player1(t, g);
}

PiecewiseConstantControl NadcStrategy::Respond(const PiecewiseConstantControl& y) const {
  if (y.breakpoints().front() > s0_ || y.breakpoints().back() < 1.0) {
    throw ConfigError("nadc: opponent control must cover [s0, 1]");
  }
  const VectorGame& game = policy_->game();
  Vec breaks = {s0_};
  std::vector<MixedAction> values;
  Vec integral(game.d(), 0.0);
  auto add_piece = [&](double a, double b, const MixedAction& x) {
    const PiecewiseConstantControl piece({a, b}, {x});
    const Vec part = IntegratePayoff(game, piece, y, a, b);
    for (int k = 0; k < game.d(); ++k) integral[k] += part[k];
    breaks.push_back(b);
    values.push_back(x);
  };
  const double first = static_cast<double>(m_star_) / n_;
  if (first > s0_) add_piece(s0_, first, x0_);
  for (int j = m_star_; j < n_; ++j) {
    const double b = j + 1 == n_ ? 1.0 : static_cast<double>(j + 1) / n_;
    add_piece(static_cast<double>(j) / n_, b, ActionAt(j, integral));
  }
  return PiecewiseConstantControl(std::move(breaks), std::move(values));
}

namespace {

class ForwardingSession : public StrategySession {
 public:
  explicit ForwardingSession(const RepeatedStrategy& s) : s_(s) {}
  MixedAction Next(std::span<const Stage> history) override { return s_.Act(history); }

 private:
  const RepeatedStrategy& s_;
};

}  // namespace

std::unique_ptr<StrategySession> RepeatedStrategy::NewSession() const {
  return std::make_unique<ForwardingSession>(*this);
}

NadcRepeatedStrategy::NadcRepeatedStrategy(std::shared_ptr<const NadcStrategy> nadc, int n)
    : nadc_(std::move(nadc)), n_(n) {
  if (n_ < 1) throw ConfigError("repeated strategy: horizon must be positive");
  k_ = n_ / nadc_->N();
  r_ = n_ - k_ * nadc_->N();
}

double NadcRepeatedStrategy::StageStart(int m) const {
  return static_cast<double>(m - 1) / (static_cast<double>(k_) * nadc_->N());
}

double NadcRepeatedStrategy::StageEnd(int m) const {
  return static_cast<double>(m) / (static_cast<double>(k_) * nadc_->N());
}

// Replay of the opponent's stages as a continuous control, one NADC interval
// at a time.
class NadcSession : public StrategySession {
 public:
  explicit NadcSession(const NadcRepeatedStrategy& s)
      : s_(s), integral_(s.nadc().g0().size(), 0.0) {}

  MixedAction Next(std::span<const Stage> history) override {
    const NadcStrategy& nadc = s_.nadc();
    const int m = static_cast<int>(history.size()) + 1;
    const int k = s_.k();
    if (s_.arbitrary() || m <= k * nadc.first_boundary() || m > k * nadc.N()) {
      return nadc.x0();
    }
    const int j = (m - 1) / k;
    while (nadc.first_boundary() + static_cast<int>(actions_.size()) <= j) {
      const int next = nadc.first_boundary() + static_cast<int>(actions_.size());
      while (stages_done_ < next * k) Accumulate(history, ++stages_done_);
      actions_.push_back(nadc.ActionAt(next, integral_));
    }
    return actions_[j - nadc.first_boundary()];
  }

 private:
  const MixedAction& Own(int i) const {
    const int k = s_.k();
    if (i <= k * s_.nadc().first_boundary()) return s_.nadc().x0();
    return actions_[(i - 1) / k - s_.nadc().first_boundary()];
  }

  void Accumulate(std::span<const Stage> history, int i) {
    const double end = s_.StageEnd(i);
    const double s0 = s_.nadc().s0();
    if (end <= s0) return;
    const double w = end - std::max(s_.StageStart(i), s0);
    const Vec g = Payoff(s_.nadc().policy().game(), Own(i), history[i - 1].y);
    for (size_t c = 0; c < g.size(); ++c) integral_[c] += w * g[c];
  }

  const NadcRepeatedStrategy& s_;
  Vec integral_;
  int stages_done_ = 0;
  std::vector<MixedAction> actions_;
};

MixedAction NadcRepeatedStrategy::Act(std::span<const Stage> history) const {
  NadcSession session(*this);
  return session.Next(history);
}

std::unique_ptr<StrategySession> NadcRepeatedStrategy::NewSession() const {
  return std::make_unique<NadcSession>(*this);
}

PiecewiseConstantControl NadcRepeatedStrategy::OpponentControl(
    std::span<const Stage> history) const {
  const int kn = k_ * nadc_->N();
  if (k_ == 0 || static_cast<int>(history.size()) < kn) {
    throw ConfigError("repeated strategy: history shorter than kN stages");
  }
  Vec breaks(kn + 1);
  std::vector<MixedAction> values;
  for (int m = 1; m <= kn; ++m) {
    breaks[m - 1] = StageStart(m);
    values.push_back(history[m - 1].y);
  }
  breaks[kn] = 1.0;
  return PiecewiseConstantControl(std::move(breaks), std::move(values));
}

Vec NadcRepeatedStrategy::InitialStateStar(std::span<const Stage> history) const {
  const PiecewiseConstantControl y = OpponentControl(history);
  const double s0 = nadc_->s0();
  const PiecewiseConstantControl x({0.0, s0}, {nadc_->x0()});
  Vec g = IntegratePayoff(nadc_->policy().game(), x, y, 0.0, s0);
  for (double& v : g) v /= s0;
  return g;
}

std::shared_ptr<const NadcRepeatedStrategy> ToRepeated(
    std::shared_ptr<const NadcStrategy> nadc, int n) {
  return std::make_shared<NadcRepeatedStrategy>(std::move(nadc), n);
}

}  // namespace approach
