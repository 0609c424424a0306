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

#ifndef CONFSET_LEARNING_H_
#define CONFSET_LEARNING_H_

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "confset/measures.h"

namespace confset {

// Attribute vector in [-1, 1]^m with a binary label.
struct AttributeLabeled {
  std::vector<double> x;
  int label = 0;
};

// Period t >= 1 and the log of a count observed in that period.
struct TimeSeries {
  int t = 1;
  double log_count = 0.0;
};

struct BinarySignal {
  int z = 0;
};

// Attribute vector together with the parameter realized at it.
struct AttributeValued {
  std::vector<double> x;
  ParameterPoint theta;
};

struct ScalarSignal {
  double z = 0.0;
};

using Observation = std::variant<AttributeLabeled, TimeSeries, BinarySignal,
                                 AttributeValued, ScalarSignal>;

// Checks the kind-specific ranges above. Throws InputError.
void ValidateObservation(const Observation& obs);

// An ordered, homogeneous list of observations.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Observation> observations);

  const std::vector<Observation>& observations() const { return obs_; }
  std::size_t n() const { return obs_.size(); }
  bool empty() const { return obs_.empty(); }

  // variant index of the common kind; meaningless when empty.
  std::size_t kind() const { return obs_.empty() ? 0 : obs_.front().index(); }

  template <typename T>
  bool Holds() const {
    return !obs_.empty() && std::holds_alternative<T>(obs_.front());
  }

 private:
  std::vector<Observation> obs_;
};

// Dataset helpers for the common homogeneous cases.
Dataset MakeBinaryDataset(std::span<const int> z);
Dataset MakeScalarDataset(std::span<const double> z);

// Bayesian updating over a finite grid of models with i.i.d. likelihoods.
struct BayesFinite {
  std::vector<ParameterPoint> model_grid;
  std::vector<double> prior;
  // Probability (or density) of one observation under a model.
  std::function<double(const Observation&, const ParameterPoint&)> likelihood;
};

// Point mass at the sample mean of scalar or binary signals.
struct MeanPointMass {};

// Point mass at the sample median of scalar or binary signals (midpoint of
// the two central order statistics when n is even).
struct MedianPointMass {};

// No-intercept least squares of theta on the attributes at `indices`
// (zero-based), predicting at `x_star`.
struct OlsSubset {
  std::vector<int> indices;
  std::vector<double> x_star;
};

// Similarity-weighted average of observed parameters:
// sum_k theta^k exp(-lambda g(x^k, x*)) / sum_k exp(-lambda g(x^k, x*)).
struct CaseBased {
  double lambda = 0.0;
  std::function<double(std::span<const double>, std::span<const double>)>
      similarity;
  std::vector<double> x_star;
};

// Two-state model v in {0, 1} with prior pi on v = 1 and signal accuracy q.
// Yields the belief putting posterior_binary_pq mass on v = 1.
struct BinaryPiQ {
  double pi = 0.5;
  double q = 0.75;
};

// Normal prior N(prior_mean, prior_variance) on a scalar parameter and
// scalar signals z = theta + N(0, noise_variance). Point mass at the
// posterior mean.
struct GaussianPosteriorMean {
  double prior_mean = 0.0;
  double prior_variance = 1.0;
  double noise_variance = 1.0;
};

using LearningRule = std::variant<BayesFinite, MeanPointMass, MedianPointMass,
                                  OlsSubset, CaseBased, BinaryPiQ,
                                  GaussianPosteriorMean>;

// Checks parameter ranges. Throws InputError.
void ValidateRule(const LearningRule& rule);

// The rule set M shared by all players, with the parameter space its
// beliefs live on.
struct RuleSet {
  ParameterBox box;
  std::vector<LearningRule> rules;

  RuleSet(ParameterBox b, std::vector<LearningRule> r);
};

// mu(z_n). Point estimates that fall outside the box are projected onto it.
// Throws InputError on kind mismatch or an empty dataset, and
// InconsistentDataError when every model of a BayesFinite rule gives the
// data zero likelihood.
Belief ApplyRule(const LearningRule& rule, const Dataset& data,
                 const ParameterBox& box);

// 1 / (1 + ((1 - pi) / pi) ((1 - q) / q)^(n (2 zbar - 1))).
double PosteriorBinaryPQ(double pi, double q, const Dataset& data);
// Same, from sufficient statistics.
double PosteriorBinaryPQ(double pi, double q, int n, int ones);

Belief OlsSubsetEstimate(std::span<const int> indices, const Dataset& data,
                         std::span<const double> x_star,
                         const ParameterBox& box);

Belief CaseBasedEstimate(const CaseBased& rule, const Dataset& data,
                         const ParameterBox& box);

// B(z_n): image of the data under every rule, deduplicated within 1e-12.
BeliefSet PlausibleSet(const RuleSet& rules, const Dataset& data);

// sup over members of B(z_n) of the Prokhorov distance to `limit`.
double SupDeviation(const RuleSet& rules, const Dataset& data,
                    const Belief& limit);

}  // namespace confset

#endif  // CONFSET_LEARNING_H_
