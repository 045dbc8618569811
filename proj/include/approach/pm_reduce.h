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

#ifndef APPROACH_PM_REDUCE_H_
#define APPROACH_PM_REDUCE_H_

#include <span>
#include <vector>

#include "approach/game_model.h"
#include "approach/mixed_action.h"
#include "approach/transport.h"

namespace approach {

// Deterministic signals: pure action j of player 2 emits the k-vector
// signal(j); a mixed action y emits S y.
class SignalStructure {
 public:
  // Throws ConfigError on an empty list, k = 0, ragged or non-finite signals.
  explicit SignalStructure(std::vector<Vec> signals);

  int b() const { return static_cast<int>(signals_.size()); }
  int k() const { return static_cast<int>(signals_[0].size()); }
  const Vec& signal(int j) const { return signals_[j]; }

  Vec Observe(const MixedAction& y) const;

  // Distinct pure-action signals in order of first appearance.
  std::vector<Vec> Alphabet() const;

 private:
  std::vector<Vec> signals_;
};

// Vertices of {y in simplex : S y = mu}, sorted lexicographically.
struct FiberPolytope {
  Vec signal;
  std::vector<MixedAction> vertices;
};

// Exact enumeration over supports with linearly independent columns of
// [S; 1]. Throws InfeasibleError when mu is not achievable, ConfigError on a
// dimension mismatch or b > 20.
FiberPolytope FiberVertices(const SignalStructure& s, std::span<const double> mu);

// max over fiber vertices y of u . (x A y).
double FiberSupport(const VectorGame& game, const MixedAction& x,
                    const FiberPolytope& fiber, std::span<const double> u);

// Linear description of the compatible measures
//   {q on xs x signals : sum_i q_i p_i is contained in E},
// one row per facet normal u_k: sum_i q_i h_{p_i}(u_k) <= h_E(u_k).
// Grid index of (xs[i], signals[j]) is i * signals.size() + j.
struct EtildePolytope {
  std::vector<MixedAction> xs;
  std::vector<Vec> signals;
  std::vector<FiberPolytope> fibers;
  std::vector<Vec> normals;
  std::vector<Vec> rows;
  Vec bounds;
  bool empty = false;

  int size() const { return static_cast<int>(xs.size() * signals.size()); }
  // Grid points embedded as (x weights, signal) in R^(a + k).
  std::vector<Vec> GridPoints() const;
};

// Throws ConfigError unless the target is a half-space or polytope of the
// game's dimension. 'signals' defaults to the alphabet of s. The empty flag is
// set by an LP feasibility check over the simplex.
EtildePolytope BuildEtilde(const VectorGame& game, const TargetSet& target,
                           std::vector<MixedAction> xs, const SignalStructure& s,
                           std::vector<Vec> signals = {}, int threads = 1);

// Weights of q on the grid of et. Throws ConfigError if a support point of q
// is not a grid point.
Vec GridWeights(const EtildePolytope& et, const DiscreteMeasure& q);

// All rows satisfied within 1e-9.
bool EtildeMembership(const EtildePolytope& et, const DiscreteMeasure& q);

MeasureConstraints ToMeasureConstraints(const EtildePolytope& et);

}  // namespace approach

#endif  // APPROACH_PM_REDUCE_H_
