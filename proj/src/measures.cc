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

#include "confset/measures.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "confset/error.h"
#include "confset/lp.h"

namespace confset {
namespace {

constexpr double kMergeRadius = 1e-12;
constexpr double kWeightSumTol = 1e-12;
constexpr double kBisectionWidth = 1e-9;
constexpr double kFlowSlack = 1e-12;

void RequireSameBox(const Belief& a, const Belief& b, const char* what) {
  if (!(a.box() == b.box())) {
    throw InputError(std::string(what) + ": beliefs live on different boxes");
  }
}

// Edmonds-Karp on the bipartite network source -> a_i -> b_j -> sink, with
// a_i -> b_j present when the atoms are within `radius`.
double BipartiteMaxFlow(const Belief& a, const Belief& b, double radius) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  const int source = na + nb;
  const int sink = source + 1;
  const int nodes = sink + 1;
  std::vector<std::vector<double>> cap(nodes, std::vector<double>(nodes, 0.0));
  for (int i = 0; i < na; ++i) cap[source][i] = a.atoms()[i].weight;
  for (int j = 0; j < nb; ++j) cap[na + j][sink] = b.atoms()[j].weight;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      if (SupDistance(a.atoms()[i].point, b.atoms()[j].point) <=
          radius + kFlowSlack) {
        cap[i][na + j] = 2.0;  // exceeds any feasible flow through the arc
      }
    }
  }
  double flow = 0.0;
  std::vector<int> parent(nodes);
  while (true) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[source] = source;
    std::deque<int> queue{source};
    while (!queue.empty() && parent[sink] < 0) {
      const int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < nodes; ++v) {
        if (parent[v] < 0 && cap[u][v] > 1e-15) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[sink] < 0) break;
    double push = std::numeric_limits<double>::infinity();
    for (int v = sink; v != source; v = parent[v]) {
      push = std::min(push, cap[parent[v]][v]);
    }
    for (int v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= push;
      cap[v][parent[v]] += push;
    }
    flow += push;
  }
  return flow;
}

bool StrassenFeasible(const Belief& a, const Belief& b, double eps) {
  return 1.0 - BipartiteMaxFlow(a, b, eps) <= eps + kFlowSlack;
}

}  // namespace

ParameterBox::ParameterBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw InputError("ParameterBox: dimension must be >= 1");
  if (lower_.size() != upper_.size()) {
    throw InputError("ParameterBox: lower/upper dimension mismatch");
  }
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k]) ||
        lower_[k] > upper_[k]) {
      throw InputError("ParameterBox: need finite lower <= upper");
    }
  }
}

ParameterBox ParameterBox::Interval(double lo, double hi) {
  return ParameterBox({lo}, {hi});
}

double ParameterBox::Diameter() const {
  double xi = 0.0;
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    xi = std::max(xi, upper_[k] - lower_[k]);
  }
  return xi;
}

bool ParameterBox::Contains(std::span<const double> coords,
                            double slack) const {
  if (coords.size() != lower_.size()) return false;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (!(coords[k] >= lower_[k] - slack && coords[k] <= upper_[k] + slack)) {
      return false;
    }
  }
  return true;
}

std::vector<double> ParameterBox::Project(std::vector<double> coords) const {
  if (coords.size() != lower_.size()) {
    throw InputError("ParameterBox::Project: dimension mismatch");
  }
  for (std::size_t k = 0; k < coords.size(); ++k) {
    coords[k] = std::clamp(coords[k], lower_[k], upper_[k]);
  }
  return coords;
}

double SupDistance(const ParameterPoint& x, const ParameterPoint& y) {
  if (x.dim() != y.dim()) throw InputError("SupDistance: dimension mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    d = std::max(d, std::abs(x[k] - y[k]));
  }
  return d;
}

Belief::Belief(ParameterBox box, std::vector<Atom> atoms)
    : box_(std::move(box)) {
  if (atoms.empty()) throw InputError("Belief: no atoms");
  double total = 0.0;
  for (const Atom& atom : atoms) {
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
      throw InputError("Belief: atom weights must be positive");
    }
    if (!box_.Contains(atom.point.coords)) {
      throw InputError("Belief: atom outside the parameter box");
    }
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw InputError("Belief: weights must sum to one");
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) {
    return l.point.coords < r.point.coords;
  });
  for (Atom& atom : atoms) {
    auto same = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& a) {
      return SupDistance(a.point, atom.point) <= kMergeRadius;
    });
    if (same != atoms_.end()) {
      same->weight += atom.weight;
    } else {
      atoms_.push_back(std::move(atom));
    }
  }
}

Belief Belief::FromWeights(ParameterBox box, std::vector<ParameterPoint> points,
                           std::vector<double> weights) {
  if (points.size() != weights.size()) {
    throw InputError("Belief::FromWeights: size mismatch");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw InputError("Belief::FromWeights: negative or non-finite weight");
    }
    total += w;
  }
  if (!(total > 0.0)) throw InputError("Belief::FromWeights: zero total mass");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] > 0.0) {
      atoms.push_back(Atom{std::move(points[i]), weights[i] / total});
    }
  }
  // Renormalize once more so the sum is exact to rounding.
  double sum = 0.0;
  for (const Atom& a : atoms) sum += a.weight;
  for (Atom& a : atoms) a.weight /= sum;
  return Belief(std::move(box), std::move(atoms));
}

Belief Belief::PointMass(ParameterBox box, ParameterPoint point) {
  return Belief(std::move(box), {Atom{std::move(point), 1.0}});
}

double Belief::Mean(std::size_t k) const {
  double m = 0.0;
  for (const Atom& atom : atoms_) m += atom.weight * atom.point[k];
  return m;
}

bool ApproxEqual(const Belief& a, const Belief& b, double tol) {
  if (!(a.box() == b.box()) || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (SupDistance(a.atoms()[i].point, b.atoms()[i].point) > tol) return false;
    if (std::abs(a.atoms()[i].weight - b.atoms()[i].weight) > tol) return false;
  }
  return true;
}

BeliefSet::BeliefSet(std::vector<Belief> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw InputError("BeliefSet: must be nonempty");
}

std::vector<ParameterPoint> BeliefSet::SupportUnion() const {
  std::vector<ParameterPoint> points;
  for (const Belief& b : members_) {
    for (const Atom& atom : b.atoms()) {
      const bool seen = std::any_of(
          points.begin(), points.end(), [&](const ParameterPoint& p) {
            return SupDistance(p, atom.point) <= kMergeRadius;
          });
      if (!seen) points.push_back(atom.point);
    }
  }
  return points;
}

double MaxCloseCouplingMass(const Belief& a, const Belief& b, double radius) {
  RequireSameBox(a, b, "MaxCloseCouplingMass");
  return BipartiteMaxFlow(a, b, radius);
}

double ProkhorovDistance(const Belief& a, const Belief& b) {
  RequireSameBox(a, b, "ProkhorovDistance");
  if (StrassenFeasible(a, b, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo >= kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    if (StrassenFeasible(a, b, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double WassersteinDistance(const Belief& a, const Belief& b) {
  RequireSameBox(a, b, "WassersteinDistance");
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  LinearProgram lp(na * nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      lp.objective[i * nb + j] =
          -SupDistance(a.atoms()[i].point, b.atoms()[j].point);
    }
  }
  for (int i = 0; i < na; ++i) {
    std::vector<double> row(na * nb, 0.0);
    for (int j = 0; j < nb; ++j) row[i * nb + j] = 1.0;
    lp.AddRow(std::move(row), LinearProgram::Sense::kEqual, a.atoms()[i].weight);
  }
  for (int j = 0; j < nb; ++j) {
    std::vector<double> row(na * nb, 0.0);
    for (int i = 0; i < na; ++i) row[i * nb + j] = 1.0;
    lp.AddRow(std::move(row), LinearProgram::Sense::kEqual, b.atoms()[j].weight);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error("WassersteinDistance: transport LP failed");
  }
  return std::max(0.0, -sol.objective);
}

}  // namespace confset
