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

#ifndef APPROACH_STRATEGY_H_
#define APPROACH_STRATEGY_H_

#include <memory>
#include <span>
#include <vector>

#include "approach/game_model.h"
#include "approach/hjb.h"
#include "approach/mixed_action.h"

namespace approach {

// Grid-optimal feedback actions read off a solved value grid.
class FeedbackPolicy {
 public:
  FeedbackPolicy(const VectorGame& game, std::shared_ptr<const ValueGrid> grid);

  // argmin over the x grid of max over the y grid of V(t, g + c (xAy - g)),
  // ties to the lexicographically smallest x. s in [s0, 1), g in the box.
  MixedAction Player1(double s, std::span<const double> g) const;
  // argmax over the y grid of min over the x grid, same tie rule.
  MixedAction Player2(double s, std::span<const double> g) const;

  const ValueGrid& grid() const { return *grid_; }
  const VectorGame& game() const { return game_; }
  const DppOperator& op() const { return op_; }

 private:
  VectorGame game_;
  std::shared_ptr<const ValueGrid> grid_;
  DppOperator op_;
};

// Piecewise-constant control on [breakpoints.front(), breakpoints.back()]:
// values[i] on [breakpoints[i], breakpoints[i + 1]).
class PiecewiseConstantControl {
 public:
  // Throws ConfigError unless breakpoints increase strictly and there is one
  // value per piece.
  PiecewiseConstantControl(Vec breakpoints, std::vector<MixedAction> values);

  const Vec& breakpoints() const { return breakpoints_; }
  const std::vector<MixedAction>& values() const { return values_; }
  // Value at t; the right end belongs to the last piece.
  const MixedAction& At(double t) const;

 private:
  Vec breakpoints_;
  std::vector<MixedAction> values_;
};

// Integral of x(t) A y(t) over [a, b], summed piece by piece over the merged
// breakpoints.
Vec IntegratePayoff(const VectorGame& game, const PiecewiseConstantControl& x,
                    const PiecewiseConstantControl& y, double a, double b);

// g(1) = s0 g0 + integral over [s0, 1] of x A y.
Vec Endpoint(const VectorGame& game, double s0, std::span<const double> g0,
             const PiecewiseConstantControl& x, const PiecewiseConstantControl& y);

// Non-anticipative piecewise-constant strategy with delay 1/N built on the
// player-1 feedback of a value grid. On [j/N, (j+1)/N], j >= m* = ceil(s0 N),
// it plays the feedback at the state reached from (s0, g0) by exact replay of
// the opponent control on [s0, j/N]; on [s0, m*/N) it plays
// x0 = feedback(s0, g0).
class NadcStrategy {
 public:
  // g0 defaults to the centroid of the grid box. Throws ConfigError if
  // 1/N < ds of the grid.
  NadcStrategy(std::shared_ptr<const FeedbackPolicy> policy, int n_delay,
               std::optional<Vec> g0 = std::nullopt);

  int N() const { return n_; }
  double s0() const { return s0_; }
  int first_boundary() const { return m_star_; }
  const Vec& g0() const { return g0_; }
  const MixedAction& x0() const { return x0_; }
  const FeedbackPolicy& policy() const { return *policy_; }

  // Action on [j/N, (j+1)/N] given the integral of x A y over [s0, j/N].
  MixedAction ActionAt(int j, std::span<const double> integral) const;
  // Full response on [s0, 1] to an opponent control on [s0, 1].
  PiecewiseConstantControl Respond(const PiecewiseConstantControl& y) const;

 private:
  std::shared_ptr<const FeedbackPolicy> policy_;
  int n_;
  double s0_;
  int m_star_;
  Vec g0_;
  MixedAction x0_;
};

struct Stage {
  MixedAction x;
  MixedAction y;
};

class StrategySession {
 public:
  virtual ~StrategySession() = default;
  // Action for stage history.size() + 1. Histories passed to one session
  // must extend each other.
  virtual MixedAction Next(std::span<const Stage> history) = 0;
};

class RepeatedStrategy {
 public:
  virtual ~RepeatedStrategy() = default;
  virtual int num_actions() const = 0;
  // Deterministic function of the history.
  virtual MixedAction Act(std::span<const Stage> history) const = 0;
  // Incremental evaluator for one run; the default forwards to Act().
  virtual std::unique_ptr<StrategySession> NewSession() const;
};

class StationaryStrategy : public RepeatedStrategy {
 public:
  explicit StationaryStrategy(MixedAction x) : x_(std::move(x)) {}
  int num_actions() const override { return x_.size(); }
  MixedAction Act(std::span<const Stage>) const override { return x_; }

 private:
  MixedAction x_;
};

// The n-stage strategy induced by an NADC strategy: with k = floor(n/N),
// r = n - kN, stage m occupies [(m-1)/(kN), m/(kN)); the first k m* and the
// last r stages play x0, stage m in between plays the NADC action at time
// (m-1)/(kN) against the opponent's stage actions read as a control.
class NadcRepeatedStrategy : public RepeatedStrategy {
 public:
  NadcRepeatedStrategy(std::shared_ptr<const NadcStrategy> nadc, int n);

  int num_actions() const override { return nadc_->x0().size(); }
  MixedAction Act(std::span<const Stage> history) const override;
  std::unique_ptr<StrategySession> NewSession() const override;

  int horizon() const { return n_; }
  int k() const { return k_; }
  int r() const { return r_; }
  // n < N: the construction does not apply and x0 is played throughout.
  bool arbitrary() const { return k_ == 0; }
  const NadcStrategy& nadc() const { return *nadc_; }

  // Time interval [(m-1)/(kN), m/(kN)) of stage m.
  double StageStart(int m) const;
  double StageEnd(int m) const;
  // Opponent stages 1..kN as a control on [0, 1].
  PiecewiseConstantControl OpponentControl(std::span<const Stage> history) const;
  // g0* = (1/s0) integral over [0, s0] of x0 A y.
  Vec InitialStateStar(std::span<const Stage> history) const;

 private:
  friend class NadcSession;
  std::shared_ptr<const NadcStrategy> nadc_;
  int n_;
  int k_;
  int r_;
};

std::shared_ptr<const NadcRepeatedStrategy> ToRepeated(
    std::shared_ptr<const NadcStrategy> nadc, int n);

}  // namespace approach

#endif  // APPROACH_STRATEGY_H_
