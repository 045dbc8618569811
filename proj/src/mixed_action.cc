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

#include "approach/mixed_action.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "approach/errors.h"

namespace approach {

MixedAction::MixedAction(Vec weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ConfigError("mixed action: empty weight vector");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ConfigError("mixed action: weight " + std::to_string(w) +
                        " is negative or not finite");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
    throw ConfigError("mixed action: weights sum to " + std::to_string(sum));
  }
}

MixedAction MixedAction::Pure(int num_actions, int index) {
  if (index < 0 || index >= num_actions) {
    throw ConfigError("mixed action: pure index out of range");
  }
  Vec w(num_actions, 0.0);
  w[index] = 1.0;
  return MixedAction(std::move(w));
}

MixedAction MixedAction::Uniform(int num_actions) {
  if (num_actions < 1) throw ConfigError("mixed action: no actions");
  return MixedAction(Vec(num_actions, 1.0 / num_actions));
}

MixedAction MixedAction::Normalized(Vec weights) {
  double sum = 0.0;
  for (double& w : weights) {
    w = std::max(w, 0.0);
    sum += w;
  }
  if (!(sum > 0.0)) throw NumericalError("mixed action: zero mass");
  for (double& w : weights) w /= sum;
  return MixedAction(std::move(weights));
}

bool LexLess(const MixedAction& a, const MixedAction& b) {
  return std::lexicographical_compare(a.weights().begin(), a.weights().end(),
                                      b.weights().begin(), b.weights().end());
}

namespace {

void Compositions(int parts, int total, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int c = 0; c <= total; ++c) {
    prefix.push_back(c);
    Compositions(parts - 1, total - c, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MixedAction> SimplexGrid(int num_actions, int resolution) {
  if (num_actions < 1) throw ConfigError("simplex grid: no actions");
  if (resolution < 2) throw ConfigError("simplex grid: resolution must be >= 2");
  const int steps = resolution - 1;
  std::vector<std::vector<int>> counts;
  std::vector<int> prefix;
  Compositions(num_actions, steps, prefix, counts);
  std::vector<MixedAction> grid;
  grid.reserve(counts.size());
  for (const auto& c : counts) {
    Vec w(num_actions);
    for (int i = 0; i < num_actions; ++i) {
      w[i] = static_cast<double>(c[i]) / steps;
    }
    grid.push_back(MixedAction::Normalized(std::move(w)));
  }
  return grid;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

double Distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(SquaredDistance(a, b));
}

}  // namespace approach
