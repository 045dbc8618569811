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

#ifndef APPROACH_WGAME_H_
#define APPROACH_WGAME_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "approach/mixed_action.h"
#include "approach/pm_reduce.h"
#include "approach/transport.h"

namespace approach {

// Fixed grid X x Z. Point (i, j) has flat index i * nz() + j and coordinates
// (xs[i], zs[j]) concatenated.
class ProductGrid {
 public:
  // Throws ConfigError on empty, ragged or repeated points.
  ProductGrid(std::vector<Vec> xs, std::vector<Vec> zs);

  int nx() const { return static_cast<int>(xs_.size()); }
  int nz() const { return static_cast<int>(zs_.size()); }
  int size() const { return nx() * nz(); }
  const std::vector<Vec>& xs() const { return xs_; }
  const std::vector<Vec>& zs() const { return zs_; }
  const std::vector<Vec>& points() const { return points_; }

  // Weights of xbar (x) zbar on the grid.
  Vec Product(const MixedAction& xbar, const MixedAction& zbar) const;

 private:
  std::vector<Vec> xs_;
  std::vector<Vec> zs_;
  std::vector<Vec> points_;
};

// Weights (1 - lambda) p + lambda / n, p in the simplex over n points.
class DeltaRestrictedSimplex {
 public:
  DeltaRestrictedSimplex(int n, double lambda);
  // lambda = min(1, delta^2 / D^2) with D the diameter of the points; zero for
  // a single point. Throws ConfigError if delta <= 0.
  static DeltaRestrictedSimplex FromPoints(const std::vector<Vec>& points, double delta);

  int size() const { return n_; }
  double lambda() const { return lambda_; }
  double floor() const { return lambda_ / n_; }

  MixedAction Embed(const MixedAction& p) const;
  bool Contains(const MixedAction& w) const;
  // w itself when already in the class, Embed(w) otherwise.
  MixedAction Smooth(const MixedAction& w) const;

 private:
  int n_;
  double lambda_;
};

// Grid, restricted action classes and the compatible-measure constraints.
struct LiftedGame {
  ProductGrid grid;
  DeltaRestrictedSimplex x_class;
  DeltaRestrictedSimplex z_class;
  MeasureConstraints etilde;

  static LiftedGame Make(ProductGrid grid, MeasureConstraints etilde, double delta);
  // Throws InfeasibleError if et is flagged empty.
  static LiftedGame FromEtilde(const EtildePolytope& et, double delta);
};

struct LiftedState {
  DiscreteMeasure theta;
  double s;
};

// theta + (outcome - theta) / (m + 1).
Vec AverageUpdate(const Vec& theta, const Vec& outcome, int m);

// Restricted game matrix M[i][j] = Embed(e_i)^T Phi Embed(e_j), with
// Phi[i][j] = phi at grid point (i, j).
Matrix RestrictedPotentialMatrix(const LiftedGame& game, const Vec& phi);

struct WHamiltonianValue {
  double upper;  // inf_x sup_z
  double lower;  // sup_z inf_x
};

// (1/t) (value of the restricted game on phi - integral of phi d theta),
// in both orders. Throws ConfigError if t <= 0 or sizes differ.
WHamiltonianValue EvaluateWHamiltonian(const LiftedGame& game, double t, const Vec& theta,
                                       const Vec& phi);
double WHamiltonian(const LiftedGame& game, double t, const Vec& theta, const Vec& phi);

// lhs = t H(t, nu, -phistar) - s H(s, mu, phi), with (phi, phistar) the
// potentials of W2(mu, nu) on the grid.
struct HamiltonianInequality {
  double lhs;
  double w2sq;

  double residual() const { return lhs - w2sq; }
  // lhs + k' W2^2.
  double weak_residual(double k_prime) const { return lhs + k_prime * w2sq; }
};
HamiltonianInequality CheckHamiltonianInequality(const LiftedGame& game, double s, double t,
                                                 const Vec& mu, const Vec& nu);
double HamiltonianInequalityResidual(const LiftedGame& game, double s, double t,
                                     const Vec& mu, const Vec& nu);

// Projection of theta onto the compatible measures and the potential from
// theta towards it. phi is zero when theta is already compatible.
struct PotentialDirection {
  Vec qstar;
  double w2sq;
  Vec phi;
};
PotentialDirection DirectionToEtilde(const LiftedGame& game, const Vec& theta);

// x attaining inf_x sup_z of the restricted game on phi, lexicographically
// first among optima.
MixedAction GreedyAction(const LiftedGame& game, const Vec& phi);
// Player-2 counterpart: z attaining sup_z inf_x.
MixedAction PotentialResponse(const LiftedGame& game, const Vec& phi);

struct GreedyResult {
  MixedAction xbar;
  PotentialDirection direction;
};
GreedyResult GreedyStep(const LiftedGame& game, const LiftedState& state);

class WStrategy {
 public:
  static WStrategy Greedy();
  static WStrategy Fixed(MixedAction xbar);
  bool greedy() const { return !fixed_; }
  const MixedAction& fixed() const { return *fixed_; }
  std::string name() const;

 private:
  explicit WStrategy(std::optional<MixedAction> fixed) : fixed_(std::move(fixed)) {}
  std::optional<MixedAction> fixed_;
};

// Player-2 behaviour in the lifted game.
class WAdversary {
 public:
  // Maxmin side of the restricted game on the current potential.
  static WAdversary Potential();
  // Sees xbar and picks the z grid point maximizing the next distance to
  // the compatible set.
  static WAdversary Clairvoyant();
  static WAdversary RandomSeeded(uint64_t seed);
  static WAdversary Fixed(MixedAction zbar);

  std::string name() const;

  // Raw action before smoothing.
  MixedAction Act(const LiftedGame& game, const Vec& theta, const Vec& phi,
                  const MixedAction& xbar, int m, uint64_t run_seed, bool smooth_z) const;

 private:
  struct PotentialRep {};
  struct ClairvoyantRep {};
  struct RandomRep {
    uint64_t seed;
  };
  struct FixedRep {
    MixedAction zbar;
  };
  using Rep = std::variant<PotentialRep, ClairvoyantRep, RandomRep, FixedRep>;
  explicit WAdversary(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

struct WsimOptions {
  bool smooth_player1 = true;
  bool smooth_player2 = true;
};

struct WsimStage {
  int m;
  double w2sq;
  double w2;
  Vec theta;
};

struct WsimTrajectory {
  uint64_t seed = 0;
  std::vector<WsimStage> stages;
  // Average of the unsmoothed outcomes.
  Vec raw_theta;
};

// n stages of the repeated game in Delta(X) x Delta(Z). Outcome of stage m
// is xbar_m (x) zbar_m after smoothing; before stage 1 the potential is zero.
WsimTrajectory RunWsim(const LiftedGame& game, const WStrategy& strategy,
                       const WAdversary& adversary, int n, uint64_t seed,
                       const WsimOptions& options = {});

// Columns m, w2sq, w2, then theta0.. filled every 'stride' stages and at the
// last stage (no weight columns when stride is 0).
void WriteWsimCsv(const WsimTrajectory& t, int stride, std::ostream& out);

}  // namespace approach

#endif  // APPROACH_WGAME_H_
