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

#include "approach/wgame.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "approach/errors.h"
#include "approach/lp.h"

namespace approach {

namespace {

void CheckPoints(const std::vector<Vec>& pts, const char* what) {
  if (pts.empty()) throw ConfigError(std::string("grid: no ") + what + " points");
  for (const Vec& p : pts) {
    if (p.size() != pts[0].size()) throw ConfigError(std::string("grid: ragged ") + what + " points");
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) throw ConfigError(std::string("grid: repeated ") + what + " point");
    }
  }
}

void CheckSize(const LiftedGame& game, const Vec& v, const char* what) {
  if (static_cast<int>(v.size()) != game.grid.size()) {
    throw ConfigError(std::string("wgame: ") + what + " has the wrong size");
  }
}

double Integral(const Vec& f, const Vec& w) { return Dot(f, w); }

DiscreteMeasure OnGrid(const LiftedGame& game, const Vec& w) {
  return DiscreteMeasure(game.grid.points(), w);
}

Vec WeightsOnGrid(const LiftedGame& game, const DiscreteMeasure& q) {
  const std::vector<Vec>& grid = game.grid.points();
  if (q.dim() != static_cast<int>(grid[0].size())) throw ConfigError("wgame: measure has the wrong dimension");
  Vec w(grid.size(), 0.0);
  for (int i = 0; i < q.size(); ++i) {
    const auto it = std::find(grid.begin(), grid.end(), q.support()[i]);
    if (it == grid.end()) throw ConfigError("wgame: measure support point is not on the grid");
    w[it - grid.begin()] += q.weights()[i];
  }
  return w;
}

}  // namespace

ProductGrid::ProductGrid(std::vector<Vec> xs, std::vector<Vec> zs)
    : xs_(std::move(xs)), zs_(std::move(zs)) {
  CheckPoints(xs_, "x");
  CheckPoints(zs_, "z");
  for (const Vec& x : xs_) {
    for (const Vec& z : zs_) {
      Vec p = x;
      p.insert(p.end(), z.begin(), z.end());
      points_.push_back(std::move(p));
    }
  }
}

Vec ProductGrid::Product(const MixedAction& xbar, const MixedAction& zbar) const {
  if (xbar.size() != nx() || zbar.size() != nz()) throw ConfigError("grid: action has the wrong size");
  Vec w(size());
  for (int i = 0; i < nx(); ++i) {
    for (int j = 0; j < nz(); ++j) w[i * nz() + j] = xbar[i] * zbar[j];
  }
  return w;
}

DeltaRestrictedSimplex::DeltaRestrictedSimplex(int n, double lambda) : n_(n), lambda_(lambda) {
  if (n < 1) throw ConfigError("restricted simplex: no points");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("restricted simplex: lambda outside [0, 1]");
}

DeltaRestrictedSimplex DeltaRestrictedSimplex::FromPoints(const std::vector<Vec>& points,
                                                          double delta) {
  if (!(delta > 0.0)) throw ConfigError("restricted simplex: delta must be positive");
  const int n = static_cast<int>(points.size());
  if (n == 1) return DeltaRestrictedSimplex(1, 0.0);
  const double d = Diameter(points);
  return DeltaRestrictedSimplex(n, std::min(1.0, delta * delta / (d * d)));
}

MixedAction DeltaRestrictedSimplex::Embed(const MixedAction& p) const {
  if (p.size() != n_) throw ConfigError("restricted simplex: action has the wrong size");
  Vec w(n_);
  for (int i = 0; i < n_; ++i) w[i] = (1.0 - lambda_) * p[i] + lambda_ / n_;
  return MixedAction::Normalized(std::move(w));
}

bool DeltaRestrictedSimplex::Contains(const MixedAction& w) const {
  if (w.size() != n_) return false;
  const double lo = floor() - 1e-15;
  return std::all_of(w.weights().begin(), w.weights().end(), [&](double v) { return v >= lo; });
}

MixedAction DeltaRestrictedSimplex::Smooth(const MixedAction& w) const {
  return Contains(w) ? w : Embed(w);
}

LiftedGame LiftedGame::Make(ProductGrid grid, MeasureConstraints etilde, double delta) {
  for (const Vec& r : etilde.ub_rows) {
    if (static_cast<int>(r.size()) != grid.size()) throw ConfigError("wgame: constraint row has the wrong size");
  }
  for (const Vec& r : etilde.eq_rows) {
    if (static_cast<int>(r.size()) != grid.size()) throw ConfigError("wgame: constraint row has the wrong size");
  }
  auto x_class = DeltaRestrictedSimplex::FromPoints(grid.xs(), delta);
  auto z_class = DeltaRestrictedSimplex::FromPoints(grid.zs(), delta);
  return LiftedGame{std::move(grid), x_class, z_class, std::move(etilde)};
}

LiftedGame LiftedGame::FromEtilde(const EtildePolytope& et, double delta) {
  if (et.empty) throw InfeasibleError("wgame: the compatible set is empty");
  std::vector<Vec> xs;
  for (const MixedAction& x : et.xs) xs.push_back(x.weights());
  return Make(ProductGrid(std::move(xs), et.signals), ToMeasureConstraints(et), delta);
}

Vec AverageUpdate(const Vec& theta, const Vec& outcome, int m) {
  Vec next(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) next[i] = theta[i] + (outcome[i] - theta[i]) / (m + 1);
  return next;
}

Matrix RestrictedPotentialMatrix(const LiftedGame& game, const Vec& phi) {
  CheckSize(game, phi, "potential");
  const int nx = game.grid.nx();
  const int nz = game.grid.nz();
  const double lx = game.x_class.lambda();
  const double lz = game.z_class.lambda();
  // Rows first: T[i][b] = Embed(e_i) . Phi[., b].
  Vec col_mean(nz, 0.0);
  for (int a = 0; a < nx; ++a) {
    for (int b = 0; b < nz; ++b) col_mean[b] += phi[a * nz + b] / nx;
  }
  Matrix m(nx, Vec(nz));
  for (int i = 0; i < nx; ++i) {
    Vec t(nz);
    double row_mean = 0.0;
    for (int b = 0; b < nz; ++b) {
      t[b] = (1.0 - lx) * phi[i * nz + b] + lx * col_mean[b];
      row_mean += t[b] / nz;
    }
    for (int j = 0; j < nz; ++j) m[i][j] = (1.0 - lz) * t[j] + lz * row_mean;
  }
  return m;
}

WHamiltonianValue EvaluateWHamiltonian(const LiftedGame& game, double t, const Vec& theta,
                                       const Vec& phi) {
  if (!(t > 0.0)) throw ConfigError("hamiltonian: t must be positive");
  CheckSize(game, theta, "measure");
  const Matrix m = RestrictedPotentialMatrix(game, phi);
  const double upper = MatrixGameValue(m).value;
  Matrix neg_t(m[0].size(), Vec(m.size()));
  for (size_t i = 0; i < m.size(); ++i) {
    for (size_t j = 0; j < m[0].size(); ++j) neg_t[j][i] = -m[i][j];
  }
  const double lower = -MatrixGameValue(neg_t).value;
  const double base = Integral(phi, theta);
  return {(upper - base) / t, (lower - base) / t};
}

double WHamiltonian(const LiftedGame& game, double t, const Vec& theta, const Vec& phi) {
  return EvaluateWHamiltonian(game, t, theta, phi).upper;
}

HamiltonianInequality CheckHamiltonianInequality(const LiftedGame& game, double s, double t,
                                                 const Vec& mu, const Vec& nu) {
  CheckSize(game, mu, "measure");
  CheckSize(game, nu, "measure");
  const TransportResult r = W2(OnGrid(game, mu), OnGrid(game, nu));
  Vec neg_star(r.phistar.size());
  for (size_t i = 0; i < neg_star.size(); ++i) neg_star[i] = -r.phistar[i];
  const double lhs = t * WHamiltonian(game, t, nu, neg_star) - s * WHamiltonian(game, s, mu, r.phi);
  return {lhs, r.cost};
}

double HamiltonianInequalityResidual(const LiftedGame& game, double s, double t,
                                     const Vec& mu, const Vec& nu) {
  return CheckHamiltonianInequality(game, s, t, mu, nu).residual();
}

PotentialDirection DirectionToEtilde(const LiftedGame& game, const Vec& theta) {
  CheckSize(game, theta, "measure");
  const DiscreteMeasure th = OnGrid(game, theta);
  const ProjectionResult p = ProjectToMeasurePolytope(th, game.grid.points(), game.etilde);
  PotentialDirection d{p.qstar.weights(), p.cost, Vec(game.grid.size(), 0.0)};
  if (p.cost > 1e-15) d.phi = W2(th, p.qstar).phi;
  return d;
}

MixedAction GreedyAction(const LiftedGame& game, const Vec& phi) {
  const Matrix m = RestrictedPotentialMatrix(game, phi);
  const double value = MatrixGameValue(m).value;
  return game.x_class.Embed(LexMinOptimalRow(m, value, 1e-9));
}

MixedAction PotentialResponse(const LiftedGame& game, const Vec& phi) {
  const Matrix m = RestrictedPotentialMatrix(game, phi);
  Matrix neg_t(m[0].size(), Vec(m.size()));
  for (size_t i = 0; i < m.size(); ++i) {
    for (size_t j = 0; j < m[0].size(); ++j) neg_t[j][i] = -m[i][j];
  }
  const double value = MatrixGameValue(neg_t).value;
  return game.z_class.Embed(LexMinOptimalRow(neg_t, value, 1e-9));
}

GreedyResult GreedyStep(const LiftedGame& game, const LiftedState& state) {
  const Vec theta = WeightsOnGrid(game, state.theta);
  PotentialDirection d = DirectionToEtilde(game, theta);
  MixedAction x = GreedyAction(game, d.phi);
  return {std::move(x), std::move(d)};
}

WStrategy WStrategy::Greedy() { return WStrategy(std::nullopt); }
WStrategy WStrategy::Fixed(MixedAction xbar) { return WStrategy(std::move(xbar)); }
std::string WStrategy::name() const { return fixed_ ? "fixed" : "greedy"; }

WAdversary WAdversary::Potential() { return WAdversary(PotentialRep{}); }
WAdversary WAdversary::Clairvoyant() { return WAdversary(ClairvoyantRep{}); }
WAdversary WAdversary::RandomSeeded(uint64_t seed) { return WAdversary(RandomRep{seed}); }
WAdversary WAdversary::Fixed(MixedAction zbar) { return WAdversary(FixedRep{std::move(zbar)}); }

std::string WAdversary::name() const {
  if (std::holds_alternative<PotentialRep>(rep_)) return "potential";
  if (std::holds_alternative<ClairvoyantRep>(rep_)) return "clairvoyant";
  if (const auto* r = std::get_if<RandomRep>(&rep_)) {
    return "random_seeded(" + std::to_string(r->seed) + ")";
  }
  return "fixed";
}

MixedAction WAdversary::Act(const LiftedGame& game, const Vec& theta, const Vec& phi,
                            const MixedAction& xbar, int m, uint64_t run_seed,
                            bool smooth_z) const {
  const int nz = game.grid.nz();
  if (std::holds_alternative<PotentialRep>(rep_)) return PotentialResponse(game, phi);
  if (std::holds_alternative<ClairvoyantRep>(rep_)) {
    int best = 0;
    double best_cost = -kInfinity;
    for (int j = 0; j < nz; ++j) {
      MixedAction z = MixedAction::Pure(nz, j);
      if (smooth_z) z = game.z_class.Smooth(z);
      const Vec next = AverageUpdate(theta, game.grid.Product(xbar, z), m);
      const double cost = ProjectToMeasurePolytope(OnGrid(game, next), game.grid.points(),
                                                   game.etilde).cost;
      if (cost > best_cost) {
        best_cost = cost;
        best = j;
      }
    }
    return MixedAction::Pure(nz, best);
  }
  if (const auto* r = std::get_if<RandomRep>(&rep_)) {
    std::seed_seq seq{static_cast<uint32_t>(r->seed), static_cast<uint32_t>(r->seed >> 32),
                      static_cast<uint32_t>(run_seed), static_cast<uint32_t>(run_seed >> 32),
                      static_cast<uint32_t>(m)};
    std::mt19937_64 rng(seq);
    std::exponential_distribution<double> e(1.0);
    Vec w(nz);
    for (double& v : w) v = e(rng);
    return MixedAction::Normalized(std::move(w));
  }
  const MixedAction& z = std::get<FixedRep>(rep_).zbar;
  if (z.size() != nz) throw ConfigError("adversary: fixed action has the wrong size");
  return z;
}

WsimTrajectory RunWsim(const LiftedGame& game, const WStrategy& strategy,
                       const WAdversary& adversary, int n, uint64_t seed,
                       const WsimOptions& options) {
  if (n < 1) throw ConfigError("wsim: n must be >= 1");
  if (!strategy.greedy() && strategy.fixed().size() != game.grid.nx()) {
    throw ConfigError("wsim: fixed action has the wrong size");
  }
  const int size = game.grid.size();
  WsimTrajectory t;
  t.seed = seed;
  Vec theta(size, 0.0);
  t.raw_theta.assign(size, 0.0);
  Vec phi(size, 0.0);
  for (int m = 0; m < n; ++m) {
    const MixedAction x_raw = strategy.greedy() ? GreedyAction(game, phi) : strategy.fixed();
    const MixedAction x = options.smooth_player1 ? game.x_class.Smooth(x_raw) : x_raw;
    const MixedAction z_raw =
        adversary.Act(game, theta, phi, x, m, seed, options.smooth_player2);
    const MixedAction z = options.smooth_player2 ? game.z_class.Smooth(z_raw) : z_raw;
    theta = AverageUpdate(theta, game.grid.Product(x, z), m);
    t.raw_theta = AverageUpdate(t.raw_theta, game.grid.Product(x_raw, z_raw), m);
    PotentialDirection d = DirectionToEtilde(game, theta);
    phi = std::move(d.phi);
    t.stages.push_back({m + 1, d.w2sq, std::sqrt(std::max(d.w2sq, 0.0)), theta});
  }
  return t;
}

void WriteWsimCsv(const WsimTrajectory& t, int stride, std::ostream& out) {
  const size_t size = t.stages.empty() ? 0 : t.stages[0].theta.size();
  out << "m,w2sq,w2";
  if (stride > 0) {
    for (size_t i = 0; i < size; ++i) out << ",theta" << i;
  }
  out << '\n';
  char buf[64];
  for (size_t k = 0; k < t.stages.size(); ++k) {
    const WsimStage& s = t.stages[k];
    out << s.m;
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g", s.w2sq, s.w2);
    out << buf;
    if (stride > 0) {
      const bool dump = s.m % stride == 0 || k + 1 == t.stages.size();
      for (double v : s.theta) {
        out << ',';
        if (dump) {
          std::snprintf(buf, sizeof buf, "%.17g", v);
          out << buf;
        }
      }
    }
    out << '\n';
  }
}

}  // namespace approach
