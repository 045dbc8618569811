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

#ifndef APPROACH_HJB_H_
#define APPROACH_HJB_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "approach/game_model.h"
#include "approach/mixed_action.h"

namespace approach {

// Order of the inner optimization. kMinMax: min over x of max over y (upper
// value); kMaxMin: max over y of min over x (lower value).
enum class Order { kMinMax, kMaxMin };

const char* OrderName(Order order);
Order ParseOrder(const std::string& name);

struct SchemeConfig {
  double s0 = 0.05;
  int steps = 100;
  // Nodes per payoff dimension; empty means 101 in every dimension.
  std::vector<int> nodes;
  int action_resolution = 11;
  Order order = Order::kMinMax;
  // Defaults to the payoff bounding box, widened by 1 on each side of any
  // degenerate dimension.
  std::optional<Box> box;
  // Worker threads for the per-slice map; <= 0 means hardware concurrency.
  int threads = 1;
};

// Checks the configuration against the game and fills in defaults. Throws
// ConfigError on violations, including (1 - s0) / steps > s0 and a box that
// does not contain every payoff vector.
SchemeConfig ResolveSchemeConfig(const SchemeConfig& config, const VectorGame& game);

// Values on a uniform (s, g) lattice. Slice k holds V(s_k, .) with
// s_k = s0 + k (1 - s0) / steps and s_steps = 1. Nodes are flattened in
// row-major order (last dimension fastest).
class ValueGrid {
 public:
  // `config` must be resolved.
  ValueGrid(const SchemeConfig& config, double kappa);

  const SchemeConfig& config() const { return config_; }
  int num_slices() const { return config_.steps + 1; }
  double s(int k) const;
  double ds() const { return ds_; }
  int dim() const { return static_cast<int>(config_.nodes.size()); }
  int num_nodes() const { return num_nodes_; }
  const Box& box() const { return *config_.box; }
  const Vec& spacing() const { return spacing_; }
  double kappa() const { return kappa_; }
  Order order() const { return config_.order; }

  Vec NodePoint(int flat) const;
  std::span<const double> slice(int k) const;
  std::span<double> mutable_slice(int k);

  bool Contains(std::span<const double> g, double tol = 1e-9) const;
  // Multilinear interpolation in slice k; g is clamped into the box.
  double Interpolate(int k, std::span<const double> g) const;
  // Interpolate, then linear in s between the bracketing slices.
  double Evaluate(double s, std::span<const double> g) const;
  // 2 (max spacing + ds).
  double Slack() const;

 private:
  SchemeConfig config_;
  double kappa_;
  double ds_;
  int num_nodes_;
  Vec spacing_;
  std::vector<int> strides_;
  std::vector<Vec> values_;
};

struct StepOptimum {
  double value;
  // Lexicographically first optimizer of the outer player: an index into
  // xs() for kMinMax, into ys() for kMaxMin.
  int outer;
};

// One backward dynamic-programming step of the averaging dynamics on
// simplex action grids:
//   opt_x opt_y  V(t, g + c (x A y - g)),  c = (t - s) / t.
class DppOperator {
 public:
  DppOperator(const VectorGame& game, int action_resolution);

  const std::vector<MixedAction>& xs() const { return xs_; }
  const std::vector<MixedAction>& ys() const { return ys_; }
  int d() const { return d_; }

  // From slice k to slice k + 1. `warm` is a hint for the outer optimizer
  // (any index, or -1); it affects speed only.
  StepOptimum Step(const ValueGrid& vg, int k, std::span<const double> g,
                   Order order, int warm = -1) const;
  // From an arbitrary s in [s0, 1) to t = min(s + ds, 1), using Evaluate()
  // for V(t, .). Reduces to Step() when s is a slice time.
  StepOptimum StepAt(const ValueGrid& vg, double s, std::span<const double> g,
                     Order order) const;

 private:
  template <typename NextValue>
  StepOptimum Optimize(const NextValue& next, double c, std::span<const double> g,
                       Order order, int warm) const;

  int d_;
  std::vector<MixedAction> xs_;
  std::vector<MixedAction> ys_;
  std::vector<int> x_visit_;  // vertices first
  std::vector<int> y_visit_;
  Vec payoffs_;  // (xi * |ys| + yi) * d + k
};

// Backward semi-Lagrangian sweep from the terminal slice V(1, g) = d(g, E).
ValueGrid SolveValue(const VectorGame& game, const TargetSet& target,
                     const SchemeConfig& config);

// (val(p . A) - p . g) / s with the exact matrix-game value. Throws
// ConfigError when s <= 0.
double Hamiltonian(const VectorGame& game, double s, std::span<const double> g,
                   std::span<const double> p);

struct ValueEstimate {
  double estimate;  // mean of the s0 slice
  double spread;    // max - min of the s0 slice
  double slack;
  double bound;     // 2 kappa s0 + spread + slack
};

ValueEstimate ValueAtZero(const ValueGrid& vg);

enum class Verdict { kApproachable, kExcludable, kInconclusive };

const char* VerdictName(Verdict verdict);
Verdict Classify(const ValueEstimate& estimate, double tol = 0.1);

// Solves in both orders and returns the sup-norm distance of the two grids.
double IsaacsGap(const VectorGame& game, const TargetSet& target,
                 const SchemeConfig& config);

}  // namespace approach

#endif  // APPROACH_HJB_H_
