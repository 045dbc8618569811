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

#include "approach/lp.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "approach/errors.h"

namespace approach {

LpRow LpRow::Dense(const Vec& coefficients) {
  LpRow row;
  for (int j = 0; j < static_cast<int>(coefficients.size()); ++j) {
    if (coefficients[j] != 0.0) {
      row.index.push_back(j);
      row.value.push_back(coefficients[j]);
    }
  }
  return row;
}

LpProblem::LpProblem(int num_vars)
    : objective(num_vars, 0.0),
      lower(num_vars, 0.0),
      upper(num_vars, kInfinity) {
  if (num_vars < 1) throw ConfigError("lp: at least one variable required");
}

void LpProblem::AddLessEqual(LpRow row, double bound) {
  ub_rows.push_back(std::move(row));
  ub_bounds.push_back(bound);
}

void LpProblem::AddEqual(LpRow row, double bound) {
  eq_rows.push_back(std::move(row));
  eq_bounds.push_back(bound);
}

void LpProblem::Validate() const {
  const int n = num_vars();
  if (static_cast<int>(lower.size()) != n ||
      static_cast<int>(upper.size()) != n) {
    throw ConfigError("lp: bound vectors do not match variable count");
  }
  if (ub_rows.size() != ub_bounds.size() ||
      eq_rows.size() != eq_bounds.size()) {
    throw ConfigError("lp: row and bound counts differ");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw ConfigError("lp: non-finite objective");
  }
  for (int j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInfinity || upper[j] == -kInfinity) {
      throw ConfigError("lp: invalid bounds on variable " + std::to_string(j));
    }
  }
  auto check_rows = [n](const std::vector<LpRow>& rows, const Vec& bounds) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const LpRow& row = rows[r];
      if (row.index.size() != row.value.size()) {
        throw ConfigError("lp: malformed sparse row");
      }
      for (size_t k = 0; k < row.index.size(); ++k) {
        if (row.index[k] < 0 || row.index[k] >= n) {
          throw ConfigError("lp: row references unknown variable");
        }
        if (!std::isfinite(row.value[k])) {
          throw ConfigError("lp: non-finite coefficient");
        }
      }
      if (!std::isfinite(bounds[r])) throw ConfigError("lp: non-finite bound");
    }
  };
  check_rows(ub_rows, ub_bounds);
  check_rows(eq_rows, eq_bounds);
}

namespace {

using Column = std::vector<std::pair<int, double>>;

enum class VarKind { kShiftLower, kShiftUpper, kFree };

struct VarMap {
  VarKind kind;
  double shift = 0.0;
  int col = -1;      // primary standard-form column
  int neg_col = -1;  // second column of a split free variable
};

// min cost.x  s.t.  A x = rhs, x >= 0, rhs >= 0.
struct StandardForm {
  int rows = 0;
  std::vector<Column> cols;
  Vec cost;
  Vec rhs;
  Vec row_sign;
  std::vector<VarMap> vars;
  int num_ub = 0;
  int num_eq = 0;
  // For each row, the slack column usable as an initial basis, or -1.
  std::vector<int> slack_of_row;
  double objective_offset = 0.0;
};

StandardForm Standardize(const LpProblem& p) {
  const int n = p.num_vars();
  StandardForm sf;
  sf.num_ub = static_cast<int>(p.ub_rows.size());
  sf.num_eq = static_cast<int>(p.eq_rows.size());

  std::vector<Column> orig_cols(n);
  for (int r = 0; r < sf.num_ub; ++r) {
    const LpRow& row = p.ub_rows[r];
    for (size_t k = 0; k < row.index.size(); ++k) {
      orig_cols[row.index[k]].push_back({r, row.value[k]});
    }
  }
  for (int r = 0; r < sf.num_eq; ++r) {
    const LpRow& row = p.eq_rows[r];
    for (size_t k = 0; k < row.index.size(); ++k) {
      orig_cols[row.index[k]].push_back({sf.num_ub + r, row.value[k]});
    }
  }

  int next_row = sf.num_ub + sf.num_eq;
  sf.rhs.assign(next_row, 0.0);
  for (int r = 0; r < sf.num_ub; ++r) sf.rhs[r] = p.ub_bounds[r];
  for (int r = 0; r < sf.num_eq; ++r) sf.rhs[sf.num_ub + r] = p.eq_bounds[r];

  std::vector<int> slack_rows;
  for (int r = 0; r < sf.num_ub; ++r) slack_rows.push_back(r);

  sf.vars.resize(n);
  for (int j = 0; j < n; ++j) {
    VarMap& vm = sf.vars[j];
    const bool has_lower = std::isfinite(p.lower[j]);
    const bool has_upper = std::isfinite(p.upper[j]);
    if (has_lower) {
      vm.kind = VarKind::kShiftLower;
      vm.shift = p.lower[j];
      vm.col = static_cast<int>(sf.cols.size());
      sf.cols.push_back(orig_cols[j]);
      sf.cost.push_back(p.objective[j]);
      if (has_upper) {
        sf.cols.back().push_back({next_row, 1.0});
        sf.rhs.push_back(p.upper[j] - p.lower[j]);
        slack_rows.push_back(next_row);
        ++next_row;
      }
    } else if (has_upper) {
      vm.kind = VarKind::kShiftUpper;
      vm.shift = p.upper[j];
      vm.col = static_cast<int>(sf.cols.size());
      Column c = orig_cols[j];
      for (auto& e : c) e.second = -e.second;
      sf.cols.push_back(std::move(c));
      sf.cost.push_back(-p.objective[j]);
    } else {
      vm.kind = VarKind::kFree;
      vm.col = static_cast<int>(sf.cols.size());
      sf.cols.push_back(orig_cols[j]);
      sf.cost.push_back(p.objective[j]);
      vm.neg_col = static_cast<int>(sf.cols.size());
      Column c = orig_cols[j];
      for (auto& e : c) e.second = -e.second;
      sf.cols.push_back(std::move(c));
      sf.cost.push_back(-p.objective[j]);
    }
    if (vm.shift != 0.0) {
      for (const auto& [r, v] : orig_cols[j]) sf.rhs[r] -= v * vm.shift;
      sf.objective_offset += p.objective[j] * vm.shift;
    }
  }
  sf.rows = next_row;
  sf.slack_of_row.assign(sf.rows, -1);
  for (int r : slack_rows) {
    sf.slack_of_row[r] = static_cast<int>(sf.cols.size());
    sf.cols.push_back({{r, 1.0}});
    sf.cost.push_back(0.0);
  }

  sf.row_sign.assign(sf.rows, 1.0);
  for (int r = 0; r < sf.rows; ++r) {
    if (sf.rhs[r] < 0.0) {
      sf.row_sign[r] = -1.0;
      sf.rhs[r] = -sf.rhs[r];
    }
  }
  for (auto& col : sf.cols) {
    for (auto& [r, v] : col) v *= sf.row_sign[r];
  }
  return sf;
}

// Revised simplex state over a StandardForm. Column ids >= n denote the
// artificial unit column of row (id - n).
class Simplex {
 public:
  Simplex(const StandardForm& sf, const LpOptions& options, Vec& binv)
      : sf_(sf),
        opt_(options),
        m_(sf.rows),
        n_(static_cast<int>(sf.cols.size())),
        binv_(binv) {}

  LpStatus Run(int* iterations);
  Vec StructuralValues() const;
  Vec Duals() const;

 private:
  double Cost(int id) const {
    if (phase_ == 1) return id >= n_ ? 1.0 : 0.0;
    return id >= n_ ? 0.0 : sf_.cost[id];
  }
  double& B(int i, int k) { return binv_[static_cast<size_t>(i) * m_ + k]; }
  double B(int i, int k) const { return binv_[static_cast<size_t>(i) * m_ + k]; }

  void Refactor();
  void ComputeDuals(Vec& y) const;
  void Ftran(int id, Vec& w) const;
  void Pivot(int r, int id, const Vec& w);
  LpStatus Iterate(int* iterations);
  void DriveOutArtificials();

  const StandardForm& sf_;
  const LpOptions& opt_;
  int m_;
  int n_;
  Vec& binv_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  Vec xb_;
  int phase_ = 1;
};

void Simplex::Refactor() {
  const int m = m_;
  Vec a(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int id = basis_[i];
    if (id >= n_) {
      a[static_cast<size_t>(id - n_) * m + i] = 1.0;
    } else {
      for (const auto& [r, v] : sf_.cols[id]) a[static_cast<size_t>(r) * m + i] = v;
    }
  }
  binv_.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) B(i, i) = 1.0;
  // Gauss-Jordan with partial pivoting on [a | binv].
  for (int c = 0; c < m; ++c) {
    int piv = c;
    double best = std::abs(a[static_cast<size_t>(c) * m + c]);
    for (int r = c + 1; r < m; ++r) {
      const double v = std::abs(a[static_cast<size_t>(r) * m + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-13) throw NumericalError("lp: singular basis");
    if (piv != c) {
      for (int k = 0; k < m; ++k) {
        std::swap(a[static_cast<size_t>(piv) * m + k], a[static_cast<size_t>(c) * m + k]);
        std::swap(B(piv, k), B(c, k));
      }
    }
    const double inv = 1.0 / a[static_cast<size_t>(c) * m + c];
    for (int k = 0; k < m; ++k) {
      a[static_cast<size_t>(c) * m + k] *= inv;
      B(c, k) *= inv;
    }
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      const double f = a[static_cast<size_t>(r) * m + c];
      if (f == 0.0) continue;
      for (int k = 0; k < m; ++k) {
        a[static_cast<size_t>(r) * m + k] -= f * a[static_cast<size_t>(c) * m + k];
        B(r, k) -= f * B(c, k);
      }
    }
  }
  xb_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += B(i, k) * sf_.rhs[k];
    xb_[i] = s;
  }
}

void Simplex::ComputeDuals(Vec& y) const {
  y.assign(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const double c = Cost(basis_[i]);
    if (c == 0.0) continue;
    for (int k = 0; k < m_; ++k) y[k] += c * B(i, k);
  }
}

void Simplex::Ftran(int id, Vec& w) const {
  w.assign(m_, 0.0);
  if (id >= n_) {
    const int r = id - n_;
    for (int i = 0; i < m_; ++i) w[i] = B(i, r);
    return;
  }
  for (const auto& [r, v] : sf_.cols[id]) {
    for (int i = 0; i < m_; ++i) w[i] += B(i, r) * v;
  }
}

void Simplex::Pivot(int r, int id, const Vec& w) {
  const double pr = w[r];
  const double theta = xb_[r] / pr;
  for (int k = 0; k < m_; ++k) B(r, k) /= pr;
  for (int i = 0; i < m_; ++i) {
    if (i == r || w[i] == 0.0) continue;
    const double f = w[i];
    for (int k = 0; k < m_; ++k) B(i, k) -= f * B(r, k);
    xb_[i] -= theta * f;
  }
  xb_[r] = theta;
  in_basis_[basis_[r]] = 0;
  basis_[r] = id;
  in_basis_[id] = 1;
}

LpStatus Simplex::Iterate(int* iterations) {
  Vec y, w;
  int degenerate_run = 0;
  bool bland = false;
  int since_refactor = 0;
  const int total = n_ + m_;
  for (;;) {
    if (*iterations >= opt_.max_iterations) {
      throw NumericalError("lp: iteration limit reached");
    }
    if (since_refactor >= opt_.refactor_period) {
      Refactor();
      since_refactor = 0;
    }
    ComputeDuals(y);

    int enter = -1;
    double best = -opt_.optimality_tolerance;
    const int limit = phase_ == 1 ? total : n_;
    for (int j = 0; j < limit; ++j) {
      if (in_basis_[j]) continue;
      if (j >= n_) continue;  // artificials never re-enter
      double d = Cost(j);
      for (const auto& [r, v] : sf_.cols[j]) d -= y[r] * v;
      if (d < best) {
        enter = j;
        if (bland) break;
        best = d;
      }
    }
    if (enter < 0) return LpStatus::kOptimal;

    Ftran(enter, w);
    double min_ratio = kInfinity;
    for (int i = 0; i < m_; ++i) {
      if (w[i] > opt_.pivot_tolerance) {
        min_ratio = std::min(min_ratio, std::max(xb_[i], 0.0) / w[i]);
      }
    }
    if (min_ratio == kInfinity) return LpStatus::kUnbounded;
    int leave = -1;
    const double tie = min_ratio + 1e-12 * (1.0 + min_ratio);
    for (int i = 0; i < m_; ++i) {
      if (w[i] <= opt_.pivot_tolerance) continue;
      if (std::max(xb_[i], 0.0) / w[i] > tie) continue;
      if (leave < 0) {
        leave = i;
      } else if (bland ? basis_[i] < basis_[leave] : w[i] > w[leave]) {
        leave = i;
      }
    }
    if (xb_[leave] < 0.0) xb_[leave] = 0.0;
    const bool degenerate = xb_[leave] / w[leave] <= 1e-13;
    Pivot(leave, enter, w);
    ++*iterations;
    ++since_refactor;
    if (degenerate) {
      if (++degenerate_run >= opt_.degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

void Simplex::DriveOutArtificials() {
  Vec w;
  for (int r = 0; r < m_; ++r) {
    if (basis_[r] < n_) continue;
    int best_j = -1;
    double best = 1e-9;
    for (int j = 0; j < n_; ++j) {
      if (in_basis_[j]) continue;
      double alpha = 0.0;
      for (const auto& [k, v] : sf_.cols[j]) alpha += B(r, k) * v;
      if (std::abs(alpha) > best) {
        best = std::abs(alpha);
        best_j = j;
      }
    }
    if (best_j < 0) continue;  // redundant row; artificial stays at zero
    Ftran(best_j, w);
    Pivot(r, best_j, w);
  }
}

LpStatus Simplex::Run(int* iterations) {
  basis_.resize(m_);
  in_basis_.assign(n_ + m_, 0);
  for (int r = 0; r < m_; ++r) {
    const int slack = sf_.slack_of_row[r];
    basis_[r] = (slack >= 0 && sf_.row_sign[r] > 0.0) ? slack : n_ + r;
    in_basis_[basis_[r]] = 1;
  }
  Refactor();

  phase_ = 1;
  bool any_artificial = false;
  for (int r = 0; r < m_; ++r) any_artificial |= basis_[r] >= n_;
  if (any_artificial) {
    Iterate(iterations);
    Refactor();
    double infeasibility = 0.0;
    double scale = 1.0;
    for (int r = 0; r < m_; ++r) scale = std::max(scale, std::abs(sf_.rhs[r]));
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeasibility += std::max(xb_[i], 0.0);
    }
    if (infeasibility > opt_.feasibility_tolerance * scale) {
      return LpStatus::kInfeasible;
    }
    DriveOutArtificials();
    Refactor();
  }
  phase_ = 2;
  const LpStatus status = Iterate(iterations);
  Refactor();
  return status;
}

Vec Simplex::StructuralValues() const {
  Vec x(n_, 0.0);
  for (int i = 0; i < m_; ++i) {
    if (basis_[i] < n_) x[basis_[i]] = std::max(xb_[i], 0.0);
  }
  return x;
}

Vec Simplex::Duals() const {
  Vec y;
  ComputeDuals(y);
  return y;
}

double RowDot(const LpRow& row, const Vec& v) {
  double s = 0.0;
  for (size_t k = 0; k < row.index.size(); ++k) s += row.value[k] * v[row.index[k]];
  return s;
}

}  // namespace

LpSolution LpSolver::Solve(const LpProblem& problem) {
  problem.Validate();
  const StandardForm sf = Standardize(problem);
  Simplex simplex(sf, options_, binv_);
  LpSolution sol;
  sol.status = simplex.Run(&sol.iterations);
  if (sol.status != LpStatus::kOptimal) return sol;

  const Vec xs = simplex.StructuralValues();
  const int n = problem.num_vars();
  sol.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const VarMap& vm = sf.vars[j];
    switch (vm.kind) {
      case VarKind::kShiftLower:
        sol.x[j] = vm.shift + xs[vm.col];
        break;
      case VarKind::kShiftUpper:
        sol.x[j] = vm.shift - xs[vm.col];
        break;
      case VarKind::kFree:
        sol.x[j] = xs[vm.col] - xs[vm.neg_col];
        break;
    }
  }
  sol.objective = Dot(problem.objective, sol.x);

  const Vec y = simplex.Duals();
  sol.ub_duals.resize(sf.num_ub);
  sol.eq_duals.resize(sf.num_eq);
  for (int r = 0; r < sf.num_ub; ++r) sol.ub_duals[r] = sf.row_sign[r] * y[r];
  for (int r = 0; r < sf.num_eq; ++r) {
    sol.eq_duals[r] = sf.row_sign[sf.num_ub + r] * y[sf.num_ub + r];
  }
  sol.reduced_costs = problem.objective;
  for (int r = 0; r < sf.num_ub; ++r) {
    const LpRow& row = problem.ub_rows[r];
    for (size_t k = 0; k < row.index.size(); ++k) {
      sol.reduced_costs[row.index[k]] -= row.value[k] * sol.ub_duals[r];
    }
  }
  for (int r = 0; r < sf.num_eq; ++r) {
    const LpRow& row = problem.eq_rows[r];
    for (size_t k = 0; k < row.index.size(); ++k) {
      sol.reduced_costs[row.index[k]] -= row.value[k] * sol.eq_duals[r];
    }
  }

  double scale = 1.0;
  for (double b : problem.ub_bounds) scale = std::max(scale, std::abs(b));
  for (double b : problem.eq_bounds) scale = std::max(scale, std::abs(b));
  if (PrimalResidual(problem, sol.x) > 1e-7 * scale) {
    throw NumericalError("lp: solution violates constraints beyond tolerance");
  }
  return sol;
}

LpSolution SolveLp(const LpProblem& problem) {
  LpSolver solver;
  return solver.Solve(problem);
}

double PrimalResidual(const LpProblem& p, const Vec& x) {
  double worst = 0.0;
  for (size_t r = 0; r < p.ub_rows.size(); ++r) {
    worst = std::max(worst, RowDot(p.ub_rows[r], x) - p.ub_bounds[r]);
  }
  for (size_t r = 0; r < p.eq_rows.size(); ++r) {
    worst = std::max(worst, std::abs(RowDot(p.eq_rows[r], x) - p.eq_bounds[r]));
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    worst = std::max(worst, p.lower[j] - x[j]);
    worst = std::max(worst, x[j] - p.upper[j]);
  }
  return worst;
}

double DualResidual(const LpProblem& p, const LpSolution& s) {
  double worst = 0.0;
  for (double y : s.ub_duals) worst = std::max(worst, y);
  Vec r = p.objective;
  for (size_t i = 0; i < p.ub_rows.size(); ++i) {
    const LpRow& row = p.ub_rows[i];
    for (size_t k = 0; k < row.index.size(); ++k) {
      r[row.index[k]] -= row.value[k] * s.ub_duals[i];
    }
  }
  for (size_t i = 0; i < p.eq_rows.size(); ++i) {
    const LpRow& row = p.eq_rows[i];
    for (size_t k = 0; k < row.index.size(); ++k) {
      r[row.index[k]] -= row.value[k] * s.eq_duals[i];
    }
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    if (!std::isfinite(p.lower[j])) worst = std::max(worst, r[j]);
    if (!std::isfinite(p.upper[j])) worst = std::max(worst, -r[j]);
  }
  return worst;
}

double DualObjective(const LpProblem& p, const LpSolution& s) {
  double value = Dot(p.ub_bounds, s.ub_duals) + Dot(p.eq_bounds, s.eq_duals);
  for (int j = 0; j < p.num_vars(); ++j) {
    const double r = s.reduced_costs[j];
    if (r > 0.0 && std::isfinite(p.lower[j])) value += p.lower[j] * r;
    if (r < 0.0 && std::isfinite(p.upper[j])) value += p.upper[j] * r;
  }
  return value;
}

namespace {

void CheckMatrix(const Matrix& m) {
  if (m.empty() || m[0].empty()) throw ConfigError("matrix game: empty matrix");
  for (const auto& row : m) {
    if (row.size() != m[0].size()) throw ConfigError("matrix game: ragged matrix");
    for (double v : row) {
      if (!std::isfinite(v)) throw ConfigError("matrix game: non-finite entry");
    }
  }
}

}  // namespace

GameSolution MatrixGameValue(const Matrix& m) {
  CheckMatrix(m);
  const int a = static_cast<int>(m.size());
  const int b = static_cast<int>(m[0].size());
  // Variables: x_0..x_{a-1} >= 0, v free. minimize v.
  LpProblem lp(a + 1);
  lp.objective[a] = 1.0;
  lp.lower[a] = -kInfinity;
  for (int j = 0; j < b; ++j) {
    LpRow row;
    for (int i = 0; i < a; ++i) {
      if (m[i][j] != 0.0) {
        row.index.push_back(i);
        row.value.push_back(m[i][j]);
      }
    }
    row.index.push_back(a);
    row.value.push_back(-1.0);
    lp.AddLessEqual(std::move(row), 0.0);
  }
  LpRow simplex;
  for (int i = 0; i < a; ++i) {
    simplex.index.push_back(i);
    simplex.value.push_back(1.0);
  }
  lp.AddEqual(std::move(simplex), 1.0);

  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalError("matrix game: LP did not reach an optimum");
  }
  Vec x(sol.x.begin(), sol.x.begin() + a);
  Vec y(b);
  for (int j = 0; j < b; ++j) y[j] = -sol.ub_duals[j];
  MixedAction xstar = MixedAction::Normalized(std::move(x));
  MixedAction ystar = MixedAction::Normalized(std::move(y));

  double upper = -kInfinity;
  for (int j = 0; j < b; ++j) {
    double s = 0.0;
    for (int i = 0; i < a; ++i) s += xstar[i] * m[i][j];
    upper = std::max(upper, s);
  }
  double lower = kInfinity;
  for (int i = 0; i < a; ++i) {
    double s = 0.0;
    for (int j = 0; j < b; ++j) s += m[i][j] * ystar[j];
    lower = std::min(lower, s);
  }
  return GameSolution{sol.objective, std::move(xstar), std::move(ystar), upper,
                      lower};
}

MixedAction LexMinOptimalRow(const Matrix& m, double value, double slack) {
  CheckMatrix(m);
  const int a = static_cast<int>(m.size());
  const int b = static_cast<int>(m[0].size());
  LpProblem lp(a);
  for (int j = 0; j < b; ++j) {
    Vec col(a);
    for (int i = 0; i < a; ++i) col[i] = m[i][j];
    lp.AddLessEqual(LpRow::Dense(col), value + slack);
  }
  lp.AddEqual(LpRow::Dense(Vec(a, 1.0)), 1.0);
  LpSolver solver;
  Vec x(a, 0.0);
  for (int i = 0; i < a; ++i) {
    std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
    lp.objective[i] = 1.0;
    const LpSolution sol = solver.Solve(lp);
    if (sol.status != LpStatus::kOptimal) {
      throw NumericalError("matrix game: lexicographic refinement failed");
    }
    x = sol.x;
    // Freeze the coordinate just minimized, with room for rounding.
    lp.upper[i] = x[i] + 1e-12;
  }
  return MixedAction::Normalized(std::move(x));
}

}  // namespace approach
