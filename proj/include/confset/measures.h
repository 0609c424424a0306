// Copyright 2026 The Confset Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONFSET_MEASURES_H_
#define CONFSET_MEASURES_H_

#include <cstddef>
#include <span>
#include <vector>

namespace confset {

// Componentwise box Theta = prod_k [lower[k], upper[k]] with the sup-norm.
class ParameterBox {
 public:
  ParameterBox(std::vector<double> lower, std::vector<double> upper);

  // One-dimensional interval [lo, hi].
  static ParameterBox Interval(double lo, double hi);

  std::size_t dim() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  // xi = sup of the sup-norm distance between two points of the box.
  double Diameter() const;

  bool Contains(std::span<const double> coords, double slack = 0.0) const;

  // Componentwise clamp onto the box.
  std::vector<double> Project(std::vector<double> coords) const;

  friend bool operator==(const ParameterBox&, const ParameterBox&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

struct ParameterPoint {
  std::vector<double> coords;

  ParameterPoint() = default;
  explicit ParameterPoint(std::vector<double> c) : coords(std::move(c)) {}
  // Scalar parameter.
  explicit ParameterPoint(double x) : coords{x} {}

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t k) const { return coords[k]; }

  friend bool operator==(const ParameterPoint&,
                         const ParameterPoint&) = default;
};

// max_k |x_k - y_k|. Throws InputError on dimension mismatch.
double SupDistance(const ParameterPoint& x, const ParameterPoint& y);

struct Atom {
  ParameterPoint point;
  double weight;
};

// A finite-support probability measure on a ParameterBox. Atoms are kept
// sorted lexicographically by coordinates; points within sup-distance
// 1e-12 of each other are merged on construction.
class Belief {
 public:
  // Validates the atoms: positive weights summing to one within 1e-12, all
  // points inside the box.
  Belief(ParameterBox box, std::vector<Atom> atoms);

  // Drops zero weights and renormalizes before validating. Use for weights
  // produced by arithmetic (posteriors, softmax).
  static Belief FromWeights(ParameterBox box, std::vector<ParameterPoint> points,
                            std::vector<double> weights);

  static Belief PointMass(ParameterBox box, ParameterPoint point);

  const ParameterBox& box() const { return box_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool IsPointMass() const { return atoms_.size() == 1; }

  // Weighted mean of coordinate k.
  double Mean(std::size_t k = 0) const;

 private:
  ParameterBox box_;
  std::vector<Atom> atoms_;
};

// Same box, same atoms (pairwise within `tol` in sup-distance) and weights
// within `tol`.
bool ApproxEqual(const Belief& a, const Belief& b, double tol = 1e-12);

class BeliefSet {
 public:
  explicit BeliefSet(std::vector<Belief> members);

  const std::vector<Belief>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Belief& operator[](std::size_t i) const { return members_[i]; }

  // Union of atom locations over all members, deduplicated.
  std::vector<ParameterPoint> SupportUnion() const;

 private:
  std::vector<Belief> members_;
};

// Prokhorov distance under the sup-norm. Bisection on epsilon in [0, 1]
// until the bracket is narrower than 1e-9; each step decides, by Strassen's
// theorem, whether some coupling puts at most epsilon mass on pairs farther
// apart than epsilon (a bipartite max-flow problem). Returns the upper end
// of the final bracket.
double ProkhorovDistance(const Belief& a, const Belief& b);

// 1-Wasserstein distance with sup-norm ground cost, solved exactly as a
// transportation LP over the atom grid.
double WassersteinDistance(const Belief& a, const Belief& b);

// Largest total mass a coupling of (a, b) can place on atom pairs within
// sup-distance `radius`. Exposed for tests of the Strassen step.
double MaxCloseCouplingMass(const Belief& a, const Belief& b, double radius);

}  // namespace confset

#endif  // CONFSET_MEASURES_H_
