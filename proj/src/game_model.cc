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

#include "approach/game_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "approach/errors.h"
#include "approach/lp.h"

namespace approach {

VectorGame::VectorGame(std::vector<std::vector<Vec>> payoffs, double kappa)
    : payoffs_(std::move(payoffs)) {
  a_ = static_cast<int>(payoffs_.size());
  if (a_ < 1) throw ConfigError("game: payoffs must have at least one row");
  b_ = static_cast<int>(payoffs_[0].size());
  if (b_ < 1) throw ConfigError("game: payoffs must have at least one column");
  d_ = static_cast<int>(payoffs_[0][0].size());
  if (d_ < 1) throw ConfigError("game: payoff vectors must be nonempty");
  double max_norm = 0.0;
  for (int i = 0; i < a_; ++i) {
    if (static_cast<int>(payoffs_[i].size()) != b_) {
      throw ConfigError("game: payoffs row " + std::to_string(i) +
                        " has the wrong number of columns");
    }
    for (int j = 0; j < b_; ++j) {
      const Vec& v = payoffs_[i][j];
      if (static_cast<int>(v.size()) != d_) {
        throw ConfigError("game: payoffs[" + std::to_string(i) + "][" +
                          std::to_string(j) + "] has the wrong dimension");
      }
      for (double c : v) {
        if (!std::isfinite(c)) {
          throw ConfigError("game: payoffs[" + std::to_string(i) + "][" +
                            std::to_string(j) + "] is not finite");
        }
      }
      max_norm = std::max(max_norm, Norm(v));
    }
  }
  if (!std::isfinite(kappa) || kappa < 0.0) {
    throw ConfigError("game: kappa must be finite and nonnegative");
  }
  kappa_ = std::max(kappa, max_norm);
}

VectorGame VectorGame::Scalar(const Matrix& m) {
  std::vector<std::vector<Vec>> payoffs;
  for (const auto& row : m) {
    std::vector<Vec> r;
    for (double v : row) r.push_back({v});
    payoffs.push_back(std::move(r));
  }
  return VectorGame(std::move(payoffs));
}

Matrix VectorGame::Scalarize(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != d_) {
    throw ConfigError("game: direction has the wrong dimension");
  }
  Matrix m(a_, Vec(b_));
  for (int i = 0; i < a_; ++i) {
    for (int j = 0; j < b_; ++j) m[i][j] = Dot(p, payoffs_[i][j]);
  }
  return m;
}

Vec Payoff(const VectorGame& game, const MixedAction& x, const MixedAction& y) {
  if (x.size() != game.a() || y.size() != game.b()) {
    throw ConfigError("payoff: mixed action sizes (" + std::to_string(x.size()) +
                      ", " + std::to_string(y.size()) +
                      ") do not match the game (" + std::to_string(game.a()) +
                      ", " + std::to_string(game.b()) + ")");
  }
  // Column sums of x A, then weighted by y.
  const int d = game.d();
  Vec g(d, 0.0);
  Vec column(d);
  for (int j = 0; j < game.b(); ++j) {
    if (y[j] == 0.0) continue;
    std::fill(column.begin(), column.end(), 0.0);
    for (int i = 0; i < game.a(); ++i) {
      if (x[i] == 0.0) continue;
      const Vec& e = game.entry(i, j);
      for (int k = 0; k < d; ++k) column[k] += x[i] * e[k];
    }
    for (int k = 0; k < d; ++k) g[k] += y[j] * column[k];
  }
  return g;
}

Box PayoffBoundingBox(const VectorGame& game) {
  Box box{Vec(game.d(), kInfinity), Vec(game.d(), -kInfinity)};
  for (const auto& row : game.payoffs()) {
    for (const Vec& v : row) {
      for (int k = 0; k < game.d(); ++k) {
        box.lo[k] = std::min(box.lo[k], v[k]);
        box.hi[k] = std::max(box.hi[k], v[k]);
      }
    }
  }
  return box;
}

namespace {

void CheckFinite(const Vec& v, const char* what) {
  for (double c : v) {
    if (!std::isfinite(c)) throw ConfigError(std::string("target: ") + what + " is not finite");
  }
}

// Solves the small dense system G lambda = r in place. Returns false if G is
// numerically singular.
bool SolveSmall(Matrix g, Vec r, Vec& out) {
  const int n = static_cast<int>(r.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int k = c + 1; k < n; ++k) {
      if (std::abs(g[k][c]) > std::abs(g[piv][c])) piv = k;
    }
    if (std::abs(g[piv][c]) < 1e-12) return false;
    std::swap(g[piv], g[c]);
    std::swap(r[piv], r[c]);
    for (int k = c + 1; k < n; ++k) {
      const double f = g[k][c] / g[c][c];
      for (int l = c; l < n; ++l) g[k][l] -= f * g[c][l];
      r[k] -= f * r[c];
    }
  }
  out.assign(n, 0.0);
  for (int c = n - 1; c >= 0; --c) {
    double s = r[c];
    for (int l = c + 1; l < n; ++l) s -= g[c][l] * out[l];
    out[c] = s / g[c][c];
  }
  return true;
}

bool NextSubset(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

constexpr double kFeasTol = 1e-10;

bool PolytopeContains(const Polytope& p, std::span<const double> z, double tol) {
  for (size_t k = 0; k < p.normals.size(); ++k) {
    const double scale = std::max(1.0, Norm(p.normals[k]));
    if (Dot(p.normals[k], z) - p.offsets[k] > tol * scale) return false;
  }
  return true;
}

}  // namespace

Vec ProjectOntoPolytope(const Polytope& p, std::span<const double> g) {
  const int m = static_cast<int>(p.normals.size());
  const int d = static_cast<int>(g.size());
  Vec gv(g.begin(), g.end());
  if (PolytopeContains(p, g, 0.0)) return gv;
  Vec best;
  double best_dist = kInfinity;
  for (int size = 1; size <= std::min(m, d); ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    do {
      // z = g - U_S^T lambda with U_S z = c_S.
      Matrix gram(size, Vec(size));
      Vec rhs(size);
      for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
          gram[r][c] = Dot(p.normals[idx[r]], p.normals[idx[c]]);
        }
        rhs[r] = Dot(p.normals[idx[r]], g) - p.offsets[idx[r]];
      }
      Vec lambda;
      if (!SolveSmall(gram, rhs, lambda)) continue;
      bool ok = true;
      for (double l : lambda) ok &= l >= -1e-12;
      if (!ok) continue;
      Vec z = gv;
      for (int r = 0; r < size; ++r) {
        for (int k = 0; k < d; ++k) z[k] -= lambda[r] * p.normals[idx[r]][k];
      }
      if (!PolytopeContains(p, z, kFeasTol)) continue;
      const double dist = SquaredDistance(z, g);
      if (dist < best_dist) {
        best_dist = dist;
        best = std::move(z);
      }
    } while (NextSubset(idx, m));
  }
  if (best.empty()) throw NumericalError("polytope projection: no KKT point found");
  return best;
}

TargetSet TargetSet::MakeHalfSpace(Vec normal, double offset) {
  if (normal.empty()) throw ConfigError("target: half-space normal is empty");
  CheckFinite(normal, "half-space normal");
  if (!std::isfinite(offset)) throw ConfigError("target: half-space offset is not finite");
  if (Norm(normal) == 0.0) throw ConfigError("target: half-space normal is zero");
  const int d = static_cast<int>(normal.size());
  return TargetSet(HalfSpace{std::move(normal), offset}, d);
}

TargetSet TargetSet::MakeBall(Vec center, double radius) {
  if (center.empty()) throw ConfigError("target: ball center is empty");
  CheckFinite(center, "ball center");
  if (!std::isfinite(radius) || radius < 0.0) {
    throw ConfigError("target: ball radius must be finite and nonnegative");
  }
  const int d = static_cast<int>(center.size());
  return TargetSet(Ball{std::move(center), radius}, d);
}

TargetSet TargetSet::MakePolytope(std::vector<Vec> normals, Vec offsets,
                                  std::vector<Vec> vertices) {
  if (normals.empty()) throw ConfigError("target: polytope has no facets");
  if (normals.size() != offsets.size()) {
    throw ConfigError("target: polytope normals and offsets differ in length");
  }
  const int d = static_cast<int>(normals[0].size());
  if (d < 1) throw ConfigError("target: polytope normals are empty");
  for (const Vec& n : normals) {
    if (static_cast<int>(n.size()) != d) {
      throw ConfigError("target: polytope normals have mixed dimensions");
    }
    CheckFinite(n, "polytope normal");
    if (Norm(n) == 0.0) throw ConfigError("target: polytope normal is zero");
  }
  CheckFinite(offsets, "polytope offset");
  for (const Vec& v : vertices) {
    if (static_cast<int>(v.size()) != d) {
      throw ConfigError("target: polytope vertex has the wrong dimension");
    }
    CheckFinite(v, "polytope vertex");
  }
  Polytope p{std::move(normals), std::move(offsets), std::move(vertices)};
  // Nonemptiness: feasibility LP over free variables.
  LpProblem lp(d);
  for (int k = 0; k < d; ++k) lp.lower[k] = -kInfinity;
  for (size_t r = 0; r < p.normals.size(); ++r) {
    lp.AddLessEqual(LpRow::Dense(p.normals[r]), p.offsets[r]);
  }
  if (SolveLp(lp).status == LpStatus::kInfeasible) {
    throw InfeasibleError("target: polytope is empty");
  }
  for (const Vec& v : p.vertices) {
    if (!PolytopeContains(p, v, 1e-9)) {
      throw ConfigError("target: listed polytope vertex violates a facet");
    }
  }
  return TargetSet(std::move(p), d);
}

TargetSet TargetSet::MakeUnion(std::vector<TargetSet> members) {
  if (members.empty()) throw InfeasibleError("target: union has no members");
  const int d = members[0].dim();
  for (const TargetSet& t : members) {
    if (t.dim() != d) throw ConfigError("target: union members differ in dimension");
  }
  return TargetSet(FiniteUnion{std::move(members)}, d);
}

Vec TargetSet::Project(std::span<const double> g) const {
  if (static_cast<int>(g.size()) != dim_) {
    throw ConfigError("target: point has the wrong dimension");
  }
  struct Visitor {
    std::span<const double> g;
    Vec operator()(const HalfSpace& h) const {
      const double excess = Dot(h.normal, g) - h.offset;
      Vec z(g.begin(), g.end());
      if (excess <= 0.0) return z;
      const double scale = excess / Dot(h.normal, h.normal);
      for (size_t k = 0; k < z.size(); ++k) z[k] -= scale * h.normal[k];
      return z;
    }
    Vec operator()(const Ball& b) const {
      const double dist = approach::Distance(g, b.center);
      if (dist <= b.radius) return Vec(g.begin(), g.end());
      Vec z = b.center;
      for (size_t k = 0; k < z.size(); ++k) {
        z[k] += b.radius * (g[k] - b.center[k]) / dist;
      }
      return z;
    }
    Vec operator()(const Polytope& p) const { return ProjectOntoPolytope(p, g); }
    Vec operator()(const FiniteUnion& u) const {
      Vec best;
      double best_dist = kInfinity;
      for (const TargetSet& t : u.members) {
        Vec z = t.Project(g);
        const double dist = SquaredDistance(z, g);
        if (dist < best_dist) {
          best_dist = dist;
          best = std::move(z);
        }
      }
      return best;
    }
  };
  return std::visit(Visitor{g}, rep_);
}

double TargetSet::Distance(std::span<const double> g) const {
  if (static_cast<int>(g.size()) != dim_) {
    throw ConfigError("target: point has the wrong dimension");
  }
  if (const auto* h = std::get_if<HalfSpace>(&rep_)) {
    return std::max(0.0, (Dot(h->normal, g) - h->offset) / Norm(h->normal));
  }
  if (const auto* b = std::get_if<Ball>(&rep_)) {
    return std::max(0.0, approach::Distance(g, b->center) - b->radius);
  }
  if (const auto* u = std::get_if<FiniteUnion>(&rep_)) {
    double best = kInfinity;
    for (const TargetSet& t : u->members) best = std::min(best, t.Distance(g));
    return best;
  }
  return approach::Distance(g, Project(g));
}

std::optional<double> TargetSet::Support(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != dim_) {
    throw ConfigError("target: direction has the wrong dimension");
  }
  if (const auto* h = std::get_if<HalfSpace>(&rep_)) {
    const double t = Dot(u, h->normal) / Dot(h->normal, h->normal);
    double residual = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
      residual = std::max(residual, std::abs(u[k] - t * h->normal[k]));
    }
    if (residual > 1e-12 * std::max(1.0, Norm(u)) || t < 0.0) {
      if (Norm(u) == 0.0) return 0.0;
      return std::nullopt;
    }
    return t * h->offset;
  }
  if (const auto* b = std::get_if<Ball>(&rep_)) {
    return Dot(u, b->center) + b->radius * Norm(u);
  }
  if (const auto* un = std::get_if<FiniteUnion>(&rep_)) {
    double best = -kInfinity;
    for (const TargetSet& t : un->members) {
      const auto s = t.Support(u);
      if (!s) return std::nullopt;
      best = std::max(best, *s);
    }
    return best;
  }
  const Polytope& p = std::get<Polytope>(rep_);
  if (!p.vertices.empty()) {
    double best = -kInfinity;
    for (const Vec& v : p.vertices) best = std::max(best, Dot(u, v));
    return best;
  }
  LpProblem lp(dim_);
  for (int k = 0; k < dim_; ++k) {
    lp.objective[k] = -u[k];
    lp.lower[k] = -kInfinity;
  }
  for (size_t r = 0; r < p.normals.size(); ++r) {
    lp.AddLessEqual(LpRow::Dense(p.normals[r]), p.offsets[r]);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status == LpStatus::kUnbounded) return std::nullopt;
  if (sol.status != LpStatus::kOptimal) throw NumericalError("target: support LP failed");
  return -sol.objective;
}

std::optional<Polytope> TargetSet::AsPolytope() const {
  if (const auto* p = std::get_if<Polytope>(&rep_)) return *p;
  if (const auto* h = std::get_if<HalfSpace>(&rep_)) {
    return Polytope{{h->normal}, {h->offset}, {}};
  }
  return std::nullopt;
}

}  // namespace approach
