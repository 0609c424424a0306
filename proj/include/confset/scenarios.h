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

#ifndef CONFSET_SCENARIOS_H_
#define CONFSET_SCENARIOS_H_

#include <span>
#include <vector>

#include "confset/learning.h"
#include "confset/measures.h"
#include "confset/rng.h"
#include "confset/solver.h"

namespace confset {

// ---------------------------------------------------------------------------
// Trade with rectangular classification rules.

// The good's value is 1 on the rectangle prod_k [-r_lower[k], r_upper[k]]
// and 0 elsewhere on [-1, 1]^m. The Seller's good sits at the origin.
struct TradeScenario {
  std::vector<double> r_lower;
  std::vector<double> r_upper;
  double price = 0.5;
  double cost = 0.1;

  static TradeScenario Symmetric(int m, double a, double price = 0.5,
                                 double cost = 0.1);

  int m() const { return static_cast<int>(r_lower.size()); }
  bool InRectangle(std::span<const double> x) const;
  // Throws InputError unless 0 < cost < price < 1 and all r in (0, 1).
  void Validate() const;
};

// Attributes in row-major order (n rows of m) and labels.
struct TradeSample {
  int m = 0;
  std::vector<double> x;
  std::vector<int> labels;

  int n() const { return m == 0 ? 0 : static_cast<int>(labels.size()); }
  std::span<const double> row(int i) const {
    return std::span<const double>(x).subspan(static_cast<std::size_t>(i) * m, m);
  }
};

// n goods with attributes uniform on [-1, 1]^m, labeled by the rectangle.
TradeSample SampleTrade(const TradeScenario& s, int n, RngStream& rng);
Dataset SampleTradeDataset(const TradeScenario& s, int n, RngStream& rng);
Dataset ToDataset(const TradeSample& sample);
TradeSample FromDataset(const Dataset& data);

// Some consistent rectangle excludes the origin: the origin lies outside
// the closed bounding box of the 1-labeled goods (or there are none).
bool TradeDisagreementBoundingBox(const TradeSample& sample);
bool TradeDisagreementBoundingBox(const Dataset& data);

// Some dimension k has no good with x_k in [-r_lower[k], 0) or none with
// x_k in (0, r_upper[k]].
bool TradeDisagreementPaper(const TradeSample& sample, const TradeScenario& s);
bool TradeDisagreementPaper(const Dataset& data, const TradeScenario& s);

// Posterior beliefs about v reachable from priors over consistent
// rectangles: {delta_0, delta_1} under disagreement, otherwise the point
// mass at the common prediction.
BeliefSet TradeBeliefSet(const TradeSample& sample);

// ---------------------------------------------------------------------------
// Lockdown coordination with a noisy log-linear growth series.

struct CoordinationScenario {
  double beta = 2.0;
  double sigma = 10.0;
  double alpha = 0.05;
  // Parameter space handed to the solver; must contain 1.
  ParameterBox box = ParameterBox::Interval(-1e6, 1e6);

  void Validate() const;
};

// log_count_t = beta t + eps_t, eps_t ~ N(0, sigma^2), t = 1..n. n >= 2.
std::vector<double> SampleCoordinationSeries(const CoordinationScenario& s,
                                             int n, RngStream& rng);
Dataset SampleCoordinationDataset(const CoordinationScenario& s, int n,
                                  RngStream& rng);

// Least-squares slope of log_count on t through the origin:
// sum t y / sum t^2.
double OlsBetaHat(std::span<const double> log_counts);
double OlsBetaHat(const Dataset& data);

struct Interval {
  double lo;
  double hi;
};

// beta_hat -/+ z sigma sqrt(12 / (n^2 - 1)) with z = -PhiInverse(alpha / 2).
double BetaIntervalHalfWidth(int n, double sigma, double alpha);
Interval BetaConfidenceInterval(const Dataset& data, double sigma, double alpha);

enum class LockdownStatus { kStrongForAll, kSomeNotAll, kNoneRationalizable };

const char* ToString(LockdownStatus status);

// Strong is rationalizable for all beliefs on the interval iff lo >= 1, and
// for some iff hi >= 1.
LockdownStatus LockdownStatusOf(Interval ci);

// Point masses at the endpoints and midpoint of `ci`, projected onto `box`.
BeliefSet IntervalBeliefSet(Interval ci, const ParameterBox& box);

// ---------------------------------------------------------------------------
// Binary signals with a grid of (pi, q) Bayesian learners, traded in the
// entry game.

struct RichPriorsScenario {
  double q_star = 0.75;
  int v = 1;
  double price = 0.75;
  // Entry cost used when the trade game is solved explicitly.
  double cost = 0.05;
  std::vector<double> pi_grid;
  std::vector<double> q_grid;

  void Validate() const;
  RuleSet Rules() const;
};

// i.i.d. signals with P(z = v) = q_star.
Dataset SampleBinaryDataset(const RichPriorsScenario& s, int n, RngStream& rng);
// Number of ones among n such signals, drawn the same way.
int SampleBinaryOnes(const RichPriorsScenario& s, int n, RngStream& rng);

struct EnterStatus {
  bool weak_enter = false;
  bool strong_enter = false;
};

// Smallest and largest posterior on v = 1 over the grid.
struct PosteriorRange {
  double lo;
  double hi;
};
PosteriorRange GridPosteriorRange(const RichPriorsScenario& s, int n, int ones);

// weak_enter iff some grid posterior is below the price and another above
// it. strong_enter is always false: the pessimistic and optimistic extremes
// are both permitted, and common certainty in either one rules entry out.
EnterStatus RichPriorsTradeStatus(const Dataset& data,
                                  const RichPriorsScenario& s);
EnterStatus RichPriorsTradeStatus(const RichPriorsScenario& s, int n, int ones);

// ---------------------------------------------------------------------------
// Gaussian signals z = beta + N(0, 1) with priors N(x, 1), x on a grid over
// [-eta, eta], in the coordination game.

struct GaussianPriorScenario {
  double beta = 2.0;
  double eta = 1.0;
  int grid_points = 5;
  ParameterBox box = ParameterBox::Interval(-1e3, 1e3);

  void Validate() const;
  std::vector<double> PriorMeans() const;
  RuleSet Rules() const;
};

// Posterior means (x + sum z) / (n + 1) over the grid.
std::vector<double> GaussianPosteriorMeans(const GaussianPriorScenario& s,
                                           int n, double sum);

}  // namespace confset

#endif  // CONFSET_SCENARIOS_H_
