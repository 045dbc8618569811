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

#ifndef APPROACH_MIXED_ACTION_H_
#define APPROACH_MIXED_ACTION_H_

#include <span>
#include <vector>

namespace approach {

using Vec = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

inline constexpr double kSimplexSumTolerance = 1e-12;

// A point of the probability simplex over a finite set of pure actions.
class MixedAction {
 public:
  // Throws ConfigError unless weights are nonnegative and sum to one.
  explicit MixedAction(Vec weights);

  static MixedAction Pure(int num_actions, int index);
  static MixedAction Uniform(int num_actions);
  // Clips tiny negatives and renormalizes; for solver output only.
  static MixedAction Normalized(Vec weights);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  const Vec& weights() const { return weights_; }

  friend bool operator==(const MixedAction&, const MixedAction&) = default;

 private:
  Vec weights_;
};

// Strict lexicographic comparison of weight vectors.
bool LexLess(const MixedAction& a, const MixedAction& b);

// All mixed actions over `num_actions` pure actions whose weights are
// multiples of 1/(resolution - 1), in increasing lexicographic order. The
// vertices are always included. resolution >= 2.
std::vector<MixedAction> SimplexGrid(int num_actions, int resolution);

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);
double Distance(std::span<const double> a, std::span<const double> b);
double SquaredDistance(std::span<const double> a, std::span<const double> b);

}  // namespace approach

#endif  // APPROACH_MIXED_ACTION_H_
