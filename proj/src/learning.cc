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

#include "confset/learning.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "confset/error.h"

namespace confset {
namespace {

constexpr double kOlsRidge = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireFinite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
}

void RequireNonEmpty(const Dataset& data, const char* rule) {
  if (data.empty()) {
    throw InputError(std::string(rule) + ": dataset must have n >= 1");
  }
}

template <typename T>
void RequireKind(const Dataset& data, const char* rule) {
  RequireNonEmpty(data, rule);
  if (!data.Holds<T>()) {
    throw InputError(std::string(rule) + ": incompatible observation kind");
  }
}

// Scalar values of a dataset of ScalarSignal or BinarySignal observations.
std::vector<double> ScalarValues(const Dataset& data, const char* rule) {
  RequireNonEmpty(data, rule);
  std::vector<double> values;
  values.reserve(data.n());
  if (data.Holds<ScalarSignal>()) {
    for (const auto& o : data.observations()) {
      values.push_back(std::get<ScalarSignal>(o).z);
    }
  } else if (data.Holds<BinarySignal>()) {
    for (const auto& o : data.observations()) {
      values.push_back(std::get<BinarySignal>(o).z);
    }
  } else {
    throw InputError(std::string(rule) +
                     ": needs scalar or binary signal observations");
  }
  return values;
}

Belief ProjectedPointMass(const ParameterBox& box, std::vector<double> coords) {
  if (coords.size() != box.dim()) {
    throw InputError("rule estimate dimension does not match the box");
  }
  return Belief::PointMass(box, ParameterPoint(box.Project(std::move(coords))));
}

Belief ApplyBayesFinite(const BayesFinite& rule, const Dataset& data,
                        const ParameterBox& box) {
  RequireNonEmpty(data, "BayesFinite");
  const std::size_t m = rule.model_grid.size();
  std::vector<double> log_w(m, -std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < m; ++j) {
    if (rule.prior[j] <= 0.0) continue;
    double lw = std::log(rule.prior[j]);
    for (const auto& obs : data.observations()) {
      const double lik = rule.likelihood(obs, rule.model_grid[j]);
      if (!(lik >= 0.0) || !std::isfinite(lik)) {
        throw InputError("BayesFinite: likelihood must be finite and >= 0");
      }
      if (lik == 0.0) {
        lw = -std::numeric_limits<double>::infinity();
        break;
      }
      lw += std::log(lik);
    }
    log_w[j] = lw;
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  if (top == -std::numeric_limits<double>::infinity()) {
    throw InconsistentDataError("data inconsistent with all models");
  }
  std::vector<double> w(m);
  for (std::size_t j = 0; j < m; ++j) w[j] = std::exp(log_w[j] - top);
  return Belief::FromWeights(box, rule.model_grid, std::move(w));
}

Belief ApplyBinaryPiQ(const BinaryPiQ& rule, const Dataset& data,
                      const ParameterBox& box) {
  const double v = PosteriorBinaryPQ(rule.pi, rule.q, data);
  if (box.dim() != 1 || !box.Contains(std::vector<double>{0.0}) ||
      !box.Contains(std::vector<double>{1.0})) {
    throw InputError("BinaryPiQ: box must be an interval containing 0 and 1");
  }
  return Belief::FromWeights(box, {ParameterPoint(0.0), ParameterPoint(1.0)},
                             {1.0 - v, v});
}

Belief ApplyGaussian(const GaussianPosteriorMean& rule, const Dataset& data,
                     const ParameterBox& box) {
  RequireKind<ScalarSignal>(data, "GaussianPosteriorMean");
  double sum = 0.0;
  for (const auto& o : data.observations()) sum += std::get<ScalarSignal>(o).z;
  const double n = static_cast<double>(data.n());
  const double precision = 1.0 / rule.prior_variance + n / rule.noise_variance;
  const double mean =
      (rule.prior_mean / rule.prior_variance + sum / rule.noise_variance) /
      precision;
  return ProjectedPointMass(box, {mean});
}

}  // namespace

void ValidateObservation(const Observation& obs) {
  std::visit(
      Overloaded{
          [](const AttributeLabeled& o) {
            for (double x : o.x) {
              if (!(x >= -1.0 && x <= 1.0)) {
                throw InputError("AttributeLabeled: x must lie in [-1, 1]^m");
              }
            }
            if (o.label != 0 && o.label != 1) {
              throw InputError("AttributeLabeled: label must be 0 or 1");
            }
          },
          [](const TimeSeries& o) {
            if (o.t < 1) throw InputError("TimeSeries: t must be >= 1");
            RequireFinite(o.log_count, "TimeSeries log_count");
          },
          [](const BinarySignal& o) {
            if (o.z != 0 && o.z != 1) {
              throw InputError("BinarySignal: z must be 0 or 1");
            }
          },
          [](const AttributeValued& o) {
            for (double x : o.x) RequireFinite(x, "AttributeValued x");
            if (o.theta.dim() == 0) {
              throw InputError("AttributeValued: theta must be nonempty");
            }
            for (double t : o.theta.coords) {
              RequireFinite(t, "AttributeValued theta");
            }
          },
          [](const ScalarSignal& o) { RequireFinite(o.z, "ScalarSignal z"); },
      },
      obs);
}

Dataset::Dataset(std::vector<Observation> observations)
    : obs_(std::move(observations)) {
  for (const auto& o : obs_) {
    if (o.index() != obs_.front().index()) {
      throw InputError("Dataset: observations must share one kind");
    }
    ValidateObservation(o);
  }
}

Dataset MakeBinaryDataset(std::span<const int> z) {
  std::vector<Observation> obs;
  obs.reserve(z.size());
  for (int v : z) obs.emplace_back(BinarySignal{v});
  return Dataset(std::move(obs));
}

Dataset MakeScalarDataset(std::span<const double> z) {
  std::vector<Observation> obs;
  obs.reserve(z.size());
  for (double v : z) obs.emplace_back(ScalarSignal{v});
  return Dataset(std::move(obs));
}

void ValidateRule(const LearningRule& rule) {
  std::visit(
      Overloaded{
          [](const BayesFinite& r) {
            if (r.model_grid.empty()) {
              throw InputError("BayesFinite: empty model grid");
            }
            if (r.prior.size() != r.model_grid.size()) {
              throw InputError("BayesFinite: prior and grid sizes differ");
            }
            double total = 0.0;
            for (double w : r.prior) {
              if (!(w >= 0.0) || !std::isfinite(w)) {
                throw InputError("BayesFinite: prior weights must be >= 0");
              }
              total += w;
            }
            if (std::abs(total - 1.0) > 1e-9) {
              throw InputError("BayesFinite: prior weights must sum to 1");
            }
            if (!r.likelihood) {
              throw InputError("BayesFinite: missing likelihood");
            }
          },
          [](const MeanPointMass&) {},
          [](const MedianPointMass&) {},
          [](const OlsSubset& r) {
            if (r.indices.empty()) {
              throw InputError("OlsSubset: empty index set");
            }
            for (int i : r.indices) {
              if (i < 0 || i >= static_cast<int>(r.x_star.size())) {
                throw InputError("OlsSubset: index outside x_star");
              }
            }
          },
          [](const CaseBased& r) {
            if (!(r.lambda >= 0.0) || !std::isfinite(r.lambda)) {
              throw InputError("CaseBased: lambda must be finite and >= 0");
            }
            if (!r.similarity) {
              throw InputError("CaseBased: missing similarity");
            }
          },
          [](const BinaryPiQ& r) {
            if (!(r.pi > 0.0 && r.pi < 1.0)) {
              throw InputError("BinaryPiQ: pi must lie in (0, 1)");
            }
            if (!(r.q > 0.5 && r.q < 1.0)) {
              throw InputError("BinaryPiQ: q must lie in (1/2, 1)");
            }
          },
          [](const GaussianPosteriorMean& r) {
            RequireFinite(r.prior_mean, "GaussianPosteriorMean prior_mean");
            if (!(r.prior_variance > 0.0) || !(r.noise_variance > 0.0)) {
              throw InputError("GaussianPosteriorMean: variances must be > 0");
            }
          },
      },
      rule);
}

RuleSet::RuleSet(ParameterBox b, std::vector<LearningRule> r)
    : box(std::move(b)), rules(std::move(r)) {
  if (rules.empty()) throw InputError("RuleSet: must contain a rule");
  for (const auto& rule : rules) ValidateRule(rule);
}

Belief ApplyRule(const LearningRule& rule, const Dataset& data,
                 const ParameterBox& box) {
  ValidateRule(rule);
  return std::visit(
      Overloaded{
          [&](const BayesFinite& r) { return ApplyBayesFinite(r, data, box); },
          [&](const MeanPointMass&) {
            const auto v = ScalarValues(data, "MeanPointMass");
            return ProjectedPointMass(
                box, {std::accumulate(v.begin(), v.end(), 0.0) / v.size()});
          },
          [&](const MedianPointMass&) {
            auto v = ScalarValues(data, "MedianPointMass");
            std::sort(v.begin(), v.end());
            const std::size_t h = v.size() / 2;
            const double med =
                v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
            return ProjectedPointMass(box, {med});
          },
          [&](const OlsSubset& r) {
            return OlsSubsetEstimate(r.indices, data, r.x_star, box);
          },
          [&](const CaseBased& r) { return CaseBasedEstimate(r, data, box); },
          [&](const BinaryPiQ& r) { return ApplyBinaryPiQ(r, data, box); },
          [&](const GaussianPosteriorMean& r) {
            return ApplyGaussian(r, data, box);
          },
      },
      rule);
}

double PosteriorBinaryPQ(double pi, double q, int n, int ones) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw InputError("posterior_binary_pq: pi must lie in (0, 1)");
  }
  if (!(q > 0.5 && q < 1.0)) {
    throw InputError("posterior_binary_pq: q must lie in (1/2, 1)");
  }
  if (n < 1 || ones < 0 || ones > n) {
    throw InputError("posterior_binary_pq: need n >= 1 and 0 <= ones <= n");
  }
  // n (2 zbar - 1) = 2 ones - n.
  const double log_odds_against =
      std::log((1.0 - pi) / pi) + (2.0 * ones - n) * std::log((1.0 - q) / q);
  if (log_odds_against > 0.0) {
    const double e = std::exp(-log_odds_against);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(log_odds_against));
}

double PosteriorBinaryPQ(double pi, double q, const Dataset& data) {
  RequireKind<BinarySignal>(data, "posterior_binary_pq");
  int ones = 0;
  for (const auto& o : data.observations()) ones += std::get<BinarySignal>(o).z;
  return PosteriorBinaryPQ(pi, q, static_cast<int>(data.n()), ones);
}

Belief OlsSubsetEstimate(std::span<const int> indices, const Dataset& data,
                         std::span<const double> x_star,
                         const ParameterBox& box) {
  if (indices.empty()) throw InputError("OlsSubset: empty index set");
  RequireKind<AttributeValued>(data, "OlsSubset");
  const int p = static_cast<int>(indices.size());
  const int n = static_cast<int>(data.n());
  if (n < p) throw InputError("OlsSubset: need n >= |indices|");
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd y(n);
  for (int k = 0; k < n; ++k) {
    const auto& o = std::get<AttributeValued>(data.observations()[k]);
    if (o.theta.dim() != 1) {
      throw InputError("OlsSubset: theta must be scalar");
    }
    for (int j = 0; j < p; ++j) {
      if (indices[j] < 0 || indices[j] >= static_cast<int>(o.x.size())) {
        throw InputError("OlsSubset: index outside the attribute vector");
      }
      x(k, j) = o.x[indices[j]];
    }
    y(k) = o.theta[0];
  }
  Eigen::MatrixXd gram = x.transpose() * x;
  const Eigen::VectorXd rhs = x.transpose() * y;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    gram.diagonal().array() += kOlsRidge;
    llt.compute(gram);
  }
  const Eigen::VectorXd beta = llt.solve(rhs);
  double prediction = 0.0;
  for (int j = 0; j < p; ++j) {
    if (indices[j] < 0 || indices[j] >= static_cast<int>(x_star.size())) {
      throw InputError("OlsSubset: index outside x_star");
    }
    prediction += beta(j) * x_star[indices[j]];
  }
  return ProjectedPointMass(box, {prediction});
}

Belief CaseBasedEstimate(const CaseBased& rule, const Dataset& data,
                         const ParameterBox& box) {
  ValidateRule(rule);
  RequireKind<AttributeValued>(data, "CaseBased");
  const std::size_t n = data.n();
  std::vector<double> score(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& o = std::get<AttributeValued>(data.observations()[k]);
    const double g = rule.similarity(o.x, rule.x_star);
    if (!(g >= 0.0)) throw InputError("CaseBased: similarity must be >= 0");
    score[k] = rule.lambda == 0.0 ? 0.0 : -rule.lambda * g;
  }
  const double top = *std::max_element(score.begin(), score.end());
  const std::size_t dim =
      std::get<AttributeValued>(data.observations()[0]).theta.dim();
  std::vector<double> mean(dim, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& theta = std::get<AttributeValued>(data.observations()[k]).theta;
    if (theta.dim() != dim) {
      throw InputError("CaseBased: theta dimensions differ");
    }
    const double w = std::exp(score[k] - top);
    total += w;
    for (std::size_t d = 0; d < dim; ++d) mean[d] += w * theta[d];
  }
  for (double& m : mean) m /= total;
  return ProjectedPointMass(box, std::move(mean));
}

BeliefSet PlausibleSet(const RuleSet& rules, const Dataset& data) {
  std::vector<Belief> members;
  for (const auto& rule : rules.rules) {
    Belief b = ApplyRule(rule, data, rules.box);
    const bool seen = std::any_of(members.begin(), members.end(),
                                  [&](const Belief& m) { return ApproxEqual(m, b); });
    if (!seen) members.push_back(std::move(b));
  }
  return BeliefSet(std::move(members));
}

double SupDeviation(const RuleSet& rules, const Dataset& data,
                    const Belief& limit) {
  double sup = 0.0;
  const BeliefSet plausible = PlausibleSet(rules, data);
  for (const auto& member : plausible.members()) {
    sup = std::max(sup, ProkhorovDistance(member, limit));
  }
  return sup;
}

}  // namespace confset
