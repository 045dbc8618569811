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

#include "approach/transport.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "approach/errors.h"
#include "approach/lp.h"

namespace approach {

DiscreteMeasure::DiscreteMeasure(std::vector<Vec> support, Vec weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.empty()) throw ConfigError("measure: empty support");
  if (support_.size() != weights_.size()) {
    throw ConfigError("measure: support and weights differ in length");
  }
  const size_t d = support_[0].size();
  if (d == 0) throw ConfigError("measure: support points are empty");
  double sum = 0.0;
  for (size_t i = 0; i < support_.size(); ++i) {
    if (support_[i].size() != d) throw ConfigError("measure: ragged support");
    for (double v : support_[i]) {
      if (!std::isfinite(v)) throw ConfigError("measure: support is not finite");
    }
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw ConfigError("measure: weights must be finite and nonnegative");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
    throw ConfigError("measure: weights sum to " + std::to_string(sum));
  }
  std::vector<Vec> sorted = support_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("measure: support points must be distinct");
  }
}

DiscreteMeasure DiscreteMeasure::Dirac(Vec point) {
  return DiscreteMeasure({std::move(point)}, {1.0});
}

DiscreteMeasure DiscreteMeasure::Uniform(std::vector<Vec> support) {
  const size_t n = support.size();
  if (n == 0) throw ConfigError("measure: empty support");
  return DiscreteMeasure(std::move(support), MixedAction::Uniform(static_cast<int>(n)).weights());
}

double Diameter(const std::vector<Vec>& points) {
  double d = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) d = std::max(d, Distance(points[i], points[j]));
  }
  return d;
}

Matrix SquaredCosts(const std::vector<Vec>& xs, const std::vector<Vec>& ys) {
  Matrix c(xs.size(), Vec(ys.size()));
  for (size_t i = 0; i < xs.size(); ++i) {
    for (size_t j = 0; j < ys.size(); ++j) c[i][j] = SquaredDistance(xs[i], ys[j]);
  }
  return c;
}

Vec Conjugate(std::span<const double> phi, const std::vector<Vec>& from,
              const std::vector<Vec>& to) {
  if (phi.size() != from.size()) throw ConfigError("conjugate: size mismatch");
  Vec out(to.size(), kInfinity);
  for (size_t j = 0; j < to.size(); ++j) {
    for (size_t i = 0; i < from.size(); ++i) {
      out[j] = std::min(out[j], SquaredDistance(from[i], to[j]) - phi[i]);
    }
  }
  return out;
}

namespace {

// Adds the transport-plan marginal rows for an n x m plan stored row-major
// from variable offset 0.
void AddRowMarginals(LpProblem& lp, int n, int m, const Vec& weights) {
  for (int i = 0; i < n; ++i) {
    LpRow row;
    for (int j = 0; j < m; ++j) {
      row.index.push_back(i * m + j);
      row.value.push_back(1.0);
    }
    lp.AddEqual(std::move(row), weights[i]);
  }
}

Matrix ExtractPlan(const Vec& x, int n, int m) {
  Matrix plan(n, Vec(m));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) plan[i][j] = std::max(0.0, x[i * m + j]);
  }
  return plan;
}

}  // namespace

TransportResult W2(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dim() != nu.dim()) throw ConfigError("w2: measures live in different dimensions");
  const int n = mu.size();
  const int m = nu.size();
  const Matrix c = SquaredCosts(mu.support(), nu.support());
  LpProblem lp(n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) lp.objective[i * m + j] = c[i][j];
  }
  AddRowMarginals(lp, n, m, mu.weights());
  for (int j = 0; j < m; ++j) {
    LpRow row;
    for (int i = 0; i < n; ++i) {
      row.index.push_back(i * m + j);
      row.value.push_back(1.0);
    }
    lp.AddEqual(std::move(row), nu.weights()[j]);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) throw NumericalError("w2: transportation LP failed");
  TransportResult r;
  r.plan = ExtractPlan(sol.x, n, m);
  r.cost = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) r.cost += r.plan[i][j] * c[i][j];
  }
  // Duals: phi_i + psi_j <= c_ij. Improve to c-concave form, then anchor.
  // Without transport the zero potential is optimal and is preferred.
  Vec phi0(sol.eq_duals.begin(), sol.eq_duals.begin() + n);
  if (r.cost <= 1e-15) phi0.assign(n, 0.0);
  const Vec psi = Conjugate(phi0, mu.support(), nu.support());
  r.phi = Conjugate(psi, nu.support(), mu.support());
  const double shift = r.phi[r.anchor];
  for (double& v : r.phi) v -= shift;
  r.phistar = Conjugate(r.phi, mu.support(), nu.support());
  return r;
}

TransportCertificate Certify(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const TransportResult& r) {
  const Matrix c = SquaredCosts(mu.support(), nu.support());
  TransportCertificate cert{0.0, 0.0, 0.0, 0.0};
  double dual = 0.0;
  for (int i = 0; i < mu.size(); ++i) dual += r.phi[i] * mu.weights()[i];
  for (int j = 0; j < nu.size(); ++j) dual += r.phistar[j] * nu.weights()[j];
  cert.duality_gap = std::abs(dual - r.cost);
  Vec col(nu.size(), 0.0);
  for (int i = 0; i < mu.size(); ++i) {
    double row = 0.0;
    for (int j = 0; j < nu.size(); ++j) {
      const double slack = c[i][j] - r.phi[i] - r.phistar[j];
      cert.dual_violation = std::max(cert.dual_violation, -slack);
      if (r.plan[i][j] > 0.0) {
        cert.slackness_residual = std::max(cert.slackness_residual, std::abs(slack));
      }
      row += r.plan[i][j];
      col[j] += r.plan[i][j];
    }
    cert.marginal_residual = std::max(cert.marginal_residual, std::abs(row - mu.weights()[i]));
  }
  for (int j = 0; j < nu.size(); ++j) {
    cert.marginal_residual = std::max(cert.marginal_residual, std::abs(col[j] - nu.weights()[j]));
  }
  return cert;
}

double SmoothingWeight(const DiscreteMeasure& mu, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ConfigError("smoothing: delta must be positive");
  }
  const double diam = Diameter(mu.support());
  if (diam <= 0.0) throw ConfigError("smoothing: reference grid has zero diameter");
  return std::min(1.0, delta * delta / (diam * diam));
}

DiscreteMeasure SmoothDelta(const DiscreteMeasure& mu, double delta) {
  const double lambda = SmoothingWeight(mu, delta);
  const double floor = lambda / mu.size();
  Vec w(mu.size());
  for (int i = 0; i < mu.size(); ++i) w[i] = (1.0 - lambda) * mu.weights()[i] + floor;
  return DiscreteMeasure(mu.support(), MixedAction::Normalized(w).weights());
}

ProjectionResult ProjectToMeasurePolytope(const DiscreteMeasure& theta,
                                          const std::vector<Vec>& grid,
                                          const MeasureConstraints& constraints) {
  const int n = theta.size();
  const int m = static_cast<int>(grid.size());
  if (m == 0) throw ConfigError("projection: empty grid");
  for (const Vec& p : grid) {
    if (static_cast<int>(p.size()) != theta.dim()) {
      throw ConfigError("projection: grid dimension does not match the measure");
    }
  }
  if (constraints.ub_rows.size() != constraints.ub_bounds.size() ||
      constraints.eq_rows.size() != constraints.eq_bounds.size()) {
    throw ConfigError("projection: constraint rows and bounds differ in length");
  }
  const Matrix c = SquaredCosts(theta.support(), grid);
  const int q0 = n * m;
  LpProblem lp(n * m + m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) lp.objective[i * m + j] = c[i][j];
  }
  AddRowMarginals(lp, n, m, theta.weights());
  for (int j = 0; j < m; ++j) {
    LpRow row;
    for (int i = 0; i < n; ++i) {
      row.index.push_back(i * m + j);
      row.value.push_back(1.0);
    }
    row.index.push_back(q0 + j);
    row.value.push_back(-1.0);
    lp.AddEqual(std::move(row), 0.0);
  }
  auto q_row = [&](const Vec& coefficients) {
    if (static_cast<int>(coefficients.size()) != m) {
      throw ConfigError("projection: constraint row length does not match the grid");
    }
    LpRow row;
    for (int j = 0; j < m; ++j) {
      if (coefficients[j] != 0.0) {
        row.index.push_back(q0 + j);
        row.value.push_back(coefficients[j]);
      }
    }
    return row;
  };
  for (size_t r = 0; r < constraints.ub_rows.size(); ++r) {
    lp.AddLessEqual(q_row(constraints.ub_rows[r]), constraints.ub_bounds[r]);
  }
  for (size_t r = 0; r < constraints.eq_rows.size(); ++r) {
    lp.AddEqual(q_row(constraints.eq_rows[r]), constraints.eq_bounds[r]);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status == LpStatus::kInfeasible) {
    throw InfeasibleError("projection: no measure on the grid satisfies the constraints");
  }
  if (sol.status != LpStatus::kOptimal) throw NumericalError("projection: LP failed");
  Vec q(m);
  for (int j = 0; j < m; ++j) q[j] = std::max(0.0, sol.x[q0 + j]);
  ProjectionResult r{DiscreteMeasure(grid, MixedAction::Normalized(q).weights()), 0.0,
                     ExtractPlan(sol.x, n, m)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) r.cost += r.plan[i][j] * c[i][j];
  }
  return r;
}

}  // namespace approach
