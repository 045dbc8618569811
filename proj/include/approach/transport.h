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

#ifndef APPROACH_TRANSPORT_H_
#define APPROACH_TRANSPORT_H_

#include <span>
#include <vector>

#include "approach/mixed_action.h"

namespace approach {

// Finitely supported probability measure. Zero weights are allowed, so a
// measure can live on a fixed grid.
class DiscreteMeasure {
 public:
  // Throws ConfigError on empty or ragged support, repeated points,
  // negative weights or weights not summing to one within 1e-12.
  DiscreteMeasure(std::vector<Vec> support, Vec weights);

  static DiscreteMeasure Dirac(Vec point);
  static DiscreteMeasure Uniform(std::vector<Vec> support);

  int size() const { return static_cast<int>(support_.size()); }
  int dim() const { return static_cast<int>(support_[0].size()); }
  const std::vector<Vec>& support() const { return support_; }
  const Vec& weights() const { return weights_; }

 private:
  std::vector<Vec> support_;
  Vec weights_;
};

// Largest pairwise distance among the points.
double Diameter(const std::vector<Vec>& points);

// Squared Euclidean costs c[i][j] = |x_i - y_j|^2.
Matrix SquaredCosts(const std::vector<Vec>& xs, const std::vector<Vec>& ys);

struct TransportResult {
  Matrix plan;
  double cost;
  // Kantorovich potentials: phi on the mu support, phistar = conjugate of phi
  // on the nu support, normalized so phi[anchor] = 0.
  Vec phi;
  Vec phistar;
  int anchor = 0;
};

// Exact W_2^2 by the transportation LP. Potentials come from the LP duals,
// made c-concave by a double conjugation, then shifted to phi[0] = 0. When
// the cost is zero the potentials start from phi = 0 instead.
TransportResult W2(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// phistar(y) = min over x of |x - y|^2 - phi(x).
Vec Conjugate(std::span<const double> phi, const std::vector<Vec>& from,
              const std::vector<Vec>& to);

// Certificate quantities of a transport result.
struct TransportCertificate {
  double duality_gap;          // |<phi, mu> + <phistar, nu> - cost|
  double dual_violation;       // max(phi_i + phistar_j - c_ij, 0)
  double slackness_residual;   // max over plan_ij > 0 of |c_ij - phi_i - phistar_j|
  double marginal_residual;
};
TransportCertificate Certify(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const TransportResult& r);

// (1 - lambda) mu + lambda * uniform on the support of mu, with
// lambda = min(1, delta^2 / D^2) and D the diameter of that support.
// Throws ConfigError if delta <= 0 or the support is a single point.
DiscreteMeasure SmoothDelta(const DiscreteMeasure& mu, double delta);
double SmoothingWeight(const DiscreteMeasure& mu, double delta);

// Linear constraints on weight vectors q over a fixed grid:
// ub_rows q <= ub_bounds, eq_rows q = eq_bounds.
struct MeasureConstraints {
  std::vector<Vec> ub_rows;
  Vec ub_bounds;
  std::vector<Vec> eq_rows;
  Vec eq_bounds;
};

struct ProjectionResult {
  DiscreteMeasure qstar;
  double cost;
  Matrix plan;
};

// min over q on `grid` satisfying the constraints of W_2^2(theta, q), as one
// LP in (plan, q). Throws InfeasibleError if no q on the grid satisfies the
// constraints.
ProjectionResult ProjectToMeasurePolytope(const DiscreteMeasure& theta,
                                          const std::vector<Vec>& grid,
                                          const MeasureConstraints& constraints);

}  // namespace approach

#endif  // APPROACH_TRANSPORT_H_
