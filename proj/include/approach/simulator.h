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

#ifndef APPROACH_SIMULATOR_H_
#define APPROACH_SIMULATOR_H_

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "approach/game_model.h"
#include "approach/hjb.h"
#include "approach/strategy.h"

namespace approach {

struct StageRecord {
  int m;
  MixedAction x;
  MixedAction y;
  Vec g;
  Vec gbar;
  double dist;
};

struct Trajectory {
  int n = 0;
  uint64_t seed = 0;
  std::vector<StageRecord> stages;

  const Vec& final_average() const { return stages.back().gbar; }
  double final_distance() const { return stages.back().dist; }
};

// Player-2 behaviour. Every kind is a deterministic function of the seed and
// the history.
class Adversary {
 public:
  // Cycles through the sequence.
  static Adversary Fixed(std::vector<MixedAction> sequence);
  static Adversary Stationary(MixedAction y);
  // Grid-optimal player-2 feedback at (max(m/n, s0), average payoff so far),
  // from a grid solved in kMaxMin order for the same target.
  static Adversary BestResponse(std::shared_ptr<const FeedbackPolicy> policy);
  // Uniform random points of the simplex, drawn from a generator seeded by
  // (adversary seed, run seed, stage).
  static Adversary RandomSeeded(int num_actions, uint64_t seed);

  MixedAction Act(std::span<const Stage> history, std::span<const double> gbar,
                  int horizon, uint64_t run_seed) const;
  std::string name() const;

 private:
  struct FixedRep {
    std::vector<MixedAction> sequence;
  };
  struct StationaryRep {
    MixedAction y;
  };
  struct BestResponseRep {
    std::shared_ptr<const FeedbackPolicy> policy;
  };
  struct RandomRep {
    int num_actions;
    uint64_t seed;
  };
  using Rep = std::variant<FixedRep, StationaryRep, BestResponseRep, RandomRep>;
  explicit Adversary(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

// Plays n stages. gbar follows gbar_m = gbar_{m-1} + (g_m - gbar_{m-1}) / m.
Trajectory Run(const VectorGame& game, const TargetSet& target,
               const RepeatedStrategy& player1, const Adversary& player2, int n,
               uint64_t seed);

// Columns m, x0.., y0.., g0.., gbar0.., dist.
void WriteTrajectoryCsv(const Trajectory& t, std::ostream& out);

// Value grids and strategies shared by a set of runs.
struct Pipeline {
  std::shared_ptr<const ValueGrid> player1_grid;
  std::shared_ptr<const FeedbackPolicy> player1;
  std::shared_ptr<const NadcStrategy> nadc;
  // Solved lazily by BuildPipeline only when requested.
  std::shared_ptr<const ValueGrid> player2_grid;
  std::shared_ptr<const FeedbackPolicy> player2;
};

Pipeline BuildPipeline(const VectorGame& game, const TargetSet& target,
                       const SchemeConfig& scheme, int n_delay, bool with_player2);

struct ScanRow {
  int n;
  double max_dist;
  std::string argmax_adversary;
};

// For each horizon, the worst final distance over the suite, player 1
// playing the NADC strategy of the pipeline. Runs execute concurrently.
std::vector<ScanRow> ConvergenceScan(const VectorGame& game, const TargetSet& target,
                                     const Pipeline& pipeline,
                                     const std::vector<Adversary>& suite,
                                     const std::vector<int>& horizons, uint64_t seed,
                                     int threads = 0);

void WriteScanCsv(const std::vector<ScanRow>& rows, std::ostream& out);

}  // namespace approach

#endif  // APPROACH_SIMULATOR_H_
