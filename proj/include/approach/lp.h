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

#ifndef APPROACH_LP_H_
#define APPROACH_LP_H_

#include <limits>
#include <vector>

#include "approach/mixed_action.h"

namespace approach {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Sparse row: parallel arrays of variable indices and coefficients.
struct LpRow {
  std::vector<int> index;
  std::vector<double> value;

  static LpRow Dense(const Vec& coefficients);
};

// minimize objective . x
//   subject to  ub_rows x <= ub_bounds
//               eq_rows x  = eq_bounds
//               lower <= x <= upper
class LpProblem {
 public:
  explicit LpProblem(int num_vars);

  int num_vars() const { return static_cast<int>(objective.size()); }

  void AddLessEqual(LpRow row, double bound);
  void AddEqual(LpRow row, double bound);

  // Throws ConfigError on inconsistent dimensions or non-finite data.
  void Validate() const;

  Vec objective;
  std::vector<LpRow> ub_rows;
  Vec ub_bounds;
  std::vector<LpRow> eq_rows;
  Vec eq_bounds;
  Vec lower;  // defaults to 0
  Vec upper;  // defaults to +inf
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

// Dual values follow the Lagrangian convention for minimization:
//   reduced_costs = objective - ub_rows^T ub_duals - eq_rows^T eq_duals,
// with ub_duals <= 0. The dual objective is
//   ub_bounds.ub_duals + eq_bounds.eq_duals
//     + sum_j (lower_j max(r_j, 0) - upper_j max(-r_j, 0)).
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vec x;
  double objective = 0.0;
  Vec ub_duals;
  Vec eq_duals;
  Vec reduced_costs;
  int iterations = 0;
};

struct LpOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-11;
  double pivot_tolerance = 1e-10;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_limit = 25;
  int refactor_period = 64;
  int max_iterations = 200000;
};

// Dense revised simplex (two phases, explicit basis inverse). Pricing is
// Dantzig's rule; runs of degenerate pivots fall back to Bland's rule, which
// cannot cycle. Holds working buffers, so an instance serves one solve at a
// time; distinct instances are independent.
class LpSolver {
 public:
  explicit LpSolver(LpOptions options = {}) : options_(options) {}
  LpSolution Solve(const LpProblem& problem);

 private:
  LpOptions options_;
  std::vector<double> binv_;
};

LpSolution SolveLp(const LpProblem& problem);

// Dual objective and dual feasibility residual of a solution, computed from
// the problem data alone. Used as an optimality certificate.
double DualObjective(const LpProblem& problem, const LpSolution& solution);
double DualResidual(const LpProblem& problem, const LpSolution& solution);
double PrimalResidual(const LpProblem& problem, const Vec& x);

// Value of the zero-sum matrix game in which the row player minimizes
// x^T M y. `upper` = max_j (xstar^T M)_j and `lower` = min_i (M ystar)_i
// bracket the value; their difference is the duality gap of the certificate.
struct GameSolution {
  double value;
  MixedAction xstar;
  MixedAction ystar;
  double upper;
  double lower;
};

GameSolution MatrixGameValue(const Matrix& m);

// Lexicographically smallest row strategy among those guaranteeing
// max_j (x^T M)_j <= value + slack. Solves one LP per row.
MixedAction LexMinOptimalRow(const Matrix& m, double value, double slack);

}  // namespace approach

#endif  // APPROACH_LP_H_
