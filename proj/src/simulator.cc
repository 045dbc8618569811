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

#include "approach/simulator.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>

#include "approach/errors.h"
#include "approach/parallel.h"

namespace approach {

Adversary Adversary::Fixed(std::vector<MixedAction> sequence) {
  if (sequence.empty()) throw ConfigError("adversary: fixed sequence is empty");
  return Adversary(FixedRep{std::move(sequence)});
}

Adversary Adversary::Stationary(MixedAction y) { return Adversary(StationaryRep{std::move(y)}); }

Adversary Adversary::BestResponse(std::shared_ptr<const FeedbackPolicy> policy) {
  if (!policy) throw ConfigError("adversary: best response needs a value grid");
  return Adversary(BestResponseRep{std::move(policy)});
}

Adversary Adversary::RandomSeeded(int num_actions, uint64_t seed) {
  if (num_actions < 1) throw ConfigError("adversary: no actions");
  return Adversary(RandomRep{num_actions, seed});
}

MixedAction Adversary::Act(std::span<const Stage> history, std::span<const double> gbar,
                           int horizon, uint64_t run_seed) const {
  const int m = static_cast<int>(history.size());
  if (const auto* f = std::get_if<FixedRep>(&rep_)) {
    return f->sequence[m % f->sequence.size()];
  }
  if (const auto* s = std::get_if<StationaryRep>(&rep_)) return s->y;
  if (const auto* b = std::get_if<BestResponseRep>(&rep_)) {
    const ValueGrid& vg = b->policy->grid();
    const double s = std::max(static_cast<double>(m) / horizon, vg.config().s0);
    if (m == 0) {
      Vec center(vg.dim());
      for (int k = 0; k < vg.dim(); ++k) center[k] = 0.5 * (vg.box().lo[k] + vg.box().hi[k]);
      return b->policy->Player2(s, center);
    }
    return b->policy->Player2(s, gbar);
  }
  const auto& r = std::get<RandomRep>(rep_);
  std::seed_seq seq{static_cast<uint32_t>(r.seed), static_cast<uint32_t>(r.seed >> 32),
                    static_cast<uint32_t>(run_seed), static_cast<uint32_t>(run_seed >> 32),
                    static_cast<uint32_t>(m)};
  std::mt19937_64 rng(seq);
  std::exponential_distribution<double> e(1.0);
  Vec w(r.num_actions);
  for (double& v : w) v = e(rng);
  return MixedAction::Normalized(w);
}

std::string Adversary::name() const {
  if (std::holds_alternative<FixedRep>(rep_)) return "fixed";
  if (std::holds_alternative<StationaryRep>(rep_)) return "stationary";
  if (std::holds_alternative<BestResponseRep>(rep_)) return "best_response";
  return "random_seeded(" + std::to_string(std::get<RandomRep>(rep_).seed) + ")";
}

Trajectory Run(const VectorGame& game, const TargetSet& target,
               const RepeatedStrategy& player1, const Adversary& player2, int n,
               uint64_t seed) {
  if (n < 1) throw ConfigError("run: horizon must be positive");
  if (target.dim() != game.d()) throw ConfigError("run: target dimension mismatch");
  Trajectory t;
  t.n = n;
  t.seed = seed;
  t.stages.reserve(n);
  std::vector<Stage> history;
  history.reserve(n);
  const std::unique_ptr<StrategySession> session = player1.NewSession();
  Vec gbar(game.d(), 0.0);
  for (int m = 1; m <= n; ++m) {
    MixedAction x = session->Next(history);
    MixedAction y = player2.Act(history, gbar, n, seed);
    Vec g = Payoff(game, x, y);
    for (int k = 0; k < game.d(); ++k) gbar[k] = gbar[k] + (g[k] - gbar[k]) / m;
    const double dist = target.Distance(gbar);
    history.push_back({x, y});
    t.stages.push_back({m, std::move(x), std::move(y), std::move(g), gbar, dist});
  }
  return t;
}

namespace {

void WriteNumber(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

}  // namespace

void WriteTrajectoryCsv(const Trajectory& t, std::ostream& out) {
  if (t.stages.empty()) return;
  const StageRecord& first = t.stages.front();
  out << "m";
  for (int i = 0; i < first.x.size(); ++i) out << ",x" << i;
  for (int j = 0; j < first.y.size(); ++j) out << ",y" << j;
  for (size_t k = 0; k < first.g.size(); ++k) out << ",g" << k;
  for (size_t k = 0; k < first.g.size(); ++k) out << ",gbar" << k;
  out << ",dist\n";
  for (const StageRecord& r : t.stages) {
    out << r.m;
    for (double v : r.x.weights()) out << ',', WriteNumber(out, v);
    for (double v : r.y.weights()) out << ',', WriteNumber(out, v);
    for (double v : r.g) out << ',', WriteNumber(out, v);
    for (double v : r.gbar) out << ',', WriteNumber(out, v);
    out << ',';
    WriteNumber(out, r.dist);
    out << '\n';
  }
}

Pipeline BuildPipeline(const VectorGame& game, const TargetSet& target,
                       const SchemeConfig& scheme, int n_delay, bool with_player2) {
  Pipeline p;
  SchemeConfig upper = scheme;
  upper.order = Order::kMinMax;
  p.player1_grid = std::make_shared<const ValueGrid>(SolveValue(game, target, upper));
  p.player1 = std::make_shared<const FeedbackPolicy>(game, p.player1_grid);
  p.nadc = std::make_shared<const NadcStrategy>(p.player1, n_delay);
  if (with_player2) {
    SchemeConfig lower = scheme;
    lower.order = Order::kMaxMin;
    p.player2_grid = std::make_shared<const ValueGrid>(SolveValue(game, target, lower));
    p.player2 = std::make_shared<const FeedbackPolicy>(game, p.player2_grid);
  }
  return p;
}

std::vector<ScanRow> ConvergenceScan(const VectorGame& game, const TargetSet& target,
                                     const Pipeline& pipeline,
                                     const std::vector<Adversary>& suite,
                                     const std::vector<int>& horizons, uint64_t seed,
                                     int threads) {
  if (suite.empty()) throw ConfigError("scan: adversary suite is empty");
  for (size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1])) {
      throw ConfigError("scan: horizons must be positive and increasing");
    }
  }
  const int jobs = static_cast<int>(horizons.size() * suite.size());
  Vec dist(jobs);
  ParallelFor(jobs, threads, [&](int begin, int end) {
    for (int job = begin; job < end; ++job) {
      const int n = horizons[job / suite.size()];
      const Adversary& adv = suite[job % suite.size()];
      const auto strategy = ToRepeated(pipeline.nadc, n);
      dist[job] = Run(game, target, *strategy, adv, n, seed).final_distance();
    }
  });
  std::vector<ScanRow> rows;
  for (size_t h = 0; h < horizons.size(); ++h) {
    ScanRow row{horizons[h], -1.0, ""};
    for (size_t a = 0; a < suite.size(); ++a) {
      const double d = dist[h * suite.size() + a];
      if (d > row.max_dist) {
        row.max_dist = d;
        row.argmax_adversary = suite[a].name();
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void WriteScanCsv(const std::vector<ScanRow>& rows, std::ostream& out) {
  out << "n,max_dist,argmax_adversary\n";
  for (const ScanRow& r : rows) {
    out << r.n << ',';
    WriteNumber(out, r.max_dist);
    out << ',' << r.argmax_adversary << '\n';
  }
}

}  // namespace approach
