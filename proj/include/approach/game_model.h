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

#ifndef APPROACH_GAME_MODEL_H_
#define APPROACH_GAME_MODEL_H_

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "approach/mixed_action.h"

namespace approach {

// Bilinear vector-payoff game: pure action pair (i, j) yields the d-vector
// A[i][j]; mixed actions yield x A y = sum_ij x_i y_j A[i][j].
class VectorGame {
 public:
  // `kappa` may be given to enlarge the payoff bound; it is raised to
  // max_ij |A[i][j]| if smaller.
  explicit VectorGame(std::vector<std::vector<Vec>> payoffs, double kappa = 0.0);

  // Scalar game (d = 1) from a plain matrix.
  static VectorGame Scalar(const Matrix& m);

  int a() const { return a_; }
  int b() const { return b_; }
  int d() const { return d_; }
  double kappa() const { return kappa_; }
  const Vec& entry(int i, int j) const { return payoffs_[i][j]; }
  const std::vector<std::vector<Vec>>& payoffs() const { return payoffs_; }

  // M[i][j] = p . A[i][j].
  Matrix Scalarize(std::span<const double> p) const;

 private:
  int a_;
  int b_;
  int d_;
  double kappa_;
  std::vector<std::vector<Vec>> payoffs_;
};

// sum_ij x_i y_j A[i][j]. Throws ConfigError on dimension mismatch.
Vec Payoff(const VectorGame& game, const MixedAction& x, const MixedAction& y);

// Per-dimension [min, max] of the payoff vectors, i.e. the bounding box of
// conv{A[i][j]}.
struct Box {
  Vec lo;
  Vec hi;
};
Box PayoffBoundingBox(const VectorGame& game);

// {g : normal . g <= offset}
struct HalfSpace {
  Vec normal;
  double offset;
};

struct Ball {
  Vec center;
  double radius;
};

// {g : normals[k] . g <= offsets[k] for all k}. `vertices`, when given, lists
// the extreme points of a bounded polytope.
struct Polytope {
  std::vector<Vec> normals;
  Vec offsets;
  std::vector<Vec> vertices;
};

class TargetSet;

struct FiniteUnion {
  std::vector<TargetSet> members;
};

// Closed, nonempty target set. Construction fails fast on empty or
// malformed sets (InfeasibleError / ConfigError).
class TargetSet {
 public:
  static TargetSet MakeHalfSpace(Vec normal, double offset);
  static TargetSet MakeBall(Vec center, double radius);
  static TargetSet MakePolytope(std::vector<Vec> normals, Vec offsets,
                                std::vector<Vec> vertices = {});
  static TargetSet MakeUnion(std::vector<TargetSet> members);

  int dim() const { return dim_; }

  double Distance(std::span<const double> g) const;
  // A nearest point. For unions, the projection onto the nearest member,
  // ties going to the lowest member index.
  Vec Project(std::span<const double> g) const;
  // sup_{z in E} u . z, or nullopt when unbounded in direction u.
  std::optional<double> Support(std::span<const double> u) const;

  // Facet description when the set is a half-space or polytope.
  std::optional<Polytope> AsPolytope() const;

  const std::variant<HalfSpace, Ball, Polytope, FiniteUnion>& rep() const {
    return rep_;
  }

 private:
  TargetSet(std::variant<HalfSpace, Ball, Polytope, FiniteUnion> rep, int dim)
      : rep_(std::move(rep)), dim_(dim) {}

  std::variant<HalfSpace, Ball, Polytope, FiniteUnion> rep_;
  int dim_;
};

// Euclidean projection onto {z : normals . z <= offsets}, by enumeration of
// candidate active sets of size <= dimension. Exact for desk-scale inputs.
Vec ProjectOntoPolytope(const Polytope& p, std::span<const double> g);

}  // namespace approach

#endif  // APPROACH_GAME_MODEL_H_
