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

#include "confset/scenarios.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "confset/error.h"
#include "confset/normal.h"

namespace confset {

// ---------------------------------------------------------------------------
// Trade.

TradeScenario TradeScenario::Symmetric(int m, double a, double price,
                                       double cost) {
  if (m < 1) throw InputError("trade scenario: m must be >= 1");
  TradeScenario s;
  s.r_lower.assign(m, a);
  s.r_upper.assign(m, a);
  s.price = price;
  s.cost = cost;
  s.Validate();
  return s;
}

bool TradeScenario::InRectangle(std::span<const double> x) const {
  for (int k = 0; k < m(); ++k) {
    if (x[k] < -r_lower[k] || x[k] > r_upper[k]) return false;
  }
  return true;
}

void TradeScenario::Validate() const {
  if (r_lower.empty() || r_lower.size() != r_upper.size()) {
    throw InputError("trade scenario: need m >= 1 matching rectangle bounds");
  }
  for (int k = 0; k < m(); ++k) {
    if (!(r_lower[k] > 0.0 && r_lower[k] < 1.0 && r_upper[k] > 0.0 &&
          r_upper[k] < 1.0)) {
      throw InputError("trade scenario: rectangle bounds must lie in (0, 1)");
    }
  }
  if (!(0.0 < cost && cost < price && price < 1.0)) {
    throw InputError("trade scenario: need 0 < cost < price < 1");
  }
}

TradeSample SampleTrade(const TradeScenario& s, int n, RngStream& rng) {
  if (n < 1) throw InputError("sample_trade_dataset: n must be >= 1");
  TradeSample out;
  out.m = s.m();
  out.x.resize(static_cast<std::size_t>(n) * out.m);
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < out.m; ++k) {
      out.x[static_cast<std::size_t>(i) * out.m + k] = rng.Uniform(-1.0, 1.0);
    }
    out.labels[i] = s.InRectangle(out.row(i)) ? 1 : 0;
  }
  return out;
}

Dataset ToDataset(const TradeSample& sample) {
  std::vector<Observation> obs;
  obs.reserve(sample.n());
  for (int i = 0; i < sample.n(); ++i) {
    const auto row = sample.row(i);
    obs.emplace_back(AttributeLabeled{std::vector<double>(row.begin(), row.end()),
                                      sample.labels[i]});
  }
  return Dataset(std::move(obs));
}

TradeSample FromDataset(const Dataset& data) {
  if (data.empty() || !data.Holds<AttributeLabeled>()) {
    throw InputError("trade checkers need AttributeLabeled observations");
  }
  TradeSample out;
  out.m = static_cast<int>(
      std::get<AttributeLabeled>(data.observations()[0]).x.size());
  for (const auto& o : data.observations()) {
    const auto& obs = std::get<AttributeLabeled>(o);
    if (static_cast<int>(obs.x.size()) != out.m) {
      throw InputError("trade checkers: attribute dimensions differ");
    }
    out.x.insert(out.x.end(), obs.x.begin(), obs.x.end());
    out.labels.push_back(obs.label);
  }
  return out;
}

Dataset SampleTradeDataset(const TradeScenario& s, int n, RngStream& rng) {
  return ToDataset(SampleTrade(s, n, rng));
}

bool TradeDisagreementBoundingBox(const TradeSample& sample) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> lo(sample.m, inf);
  std::vector<double> hi(sample.m, -inf);
  bool any = false;
  for (int i = 0; i < sample.n(); ++i) {
    if (sample.labels[i] != 1) continue;
    any = true;
    const auto row = sample.row(i);
    for (int k = 0; k < sample.m; ++k) {
      lo[k] = std::min(lo[k], row[k]);
      hi[k] = std::max(hi[k], row[k]);
    }
  }
  if (!any) return true;
  for (int k = 0; k < sample.m; ++k) {
    if (lo[k] > 0.0 || hi[k] < 0.0) return true;
  }
  return false;
}

bool TradeDisagreementBoundingBox(const Dataset& data) {
  return TradeDisagreementBoundingBox(FromDataset(data));
}

bool TradeDisagreementPaper(const TradeSample& sample, const TradeScenario& s) {
  if (sample.m != s.m()) {
    throw InputError("trade_disagreement_paper: dimension mismatch");
  }
  for (int k = 0; k < sample.m; ++k) {
    bool below = false;
    bool above = false;
    for (int i = 0; i < sample.n() && !(below && above); ++i) {
      const double x = sample.x[static_cast<std::size_t>(i) * sample.m + k];
      below = below || (x >= -s.r_lower[k] && x < 0.0);
      above = above || (x > 0.0 && x <= s.r_upper[k]);
    }
    if (!below || !above) return true;
  }
  return false;
}

bool TradeDisagreementPaper(const Dataset& data, const TradeScenario& s) {
  return TradeDisagreementPaper(FromDataset(data), s);
}

BeliefSet TradeBeliefSet(const TradeSample& sample) {
  const ParameterBox unit = ParameterBox::Interval(0.0, 1.0);
  const Belief high = Belief::PointMass(unit, ParameterPoint(1.0));
  if (!TradeDisagreementBoundingBox(sample)) return BeliefSet({high});
  // The true rectangle contains the origin and fits the data, so some
  // consistent rule predicts 1 whenever another predicts 0.
  return BeliefSet({Belief::PointMass(unit, ParameterPoint(0.0)), high});
}

// ---------------------------------------------------------------------------
// Coordination.

void CoordinationScenario::Validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InputError("coordination scenario: sigma must be > 0");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("coordination scenario: alpha must lie in (0, 1)");
  }
  if (!std::isfinite(beta)) {
    throw InputError("coordination scenario: beta must be finite");
  }
  if (box.dim() != 1 || !box.Contains(std::vector<double>{1.0})) {
    throw InputError("coordination scenario: box must be an interval with 1");
  }
}

std::vector<double> SampleCoordinationSeries(const CoordinationScenario& s,
                                             int n, RngStream& rng) {
  if (n < 2) throw InputError("sample_coordination_dataset: n must be >= 2");
  std::vector<double> y(n);
  for (int t = 1; t <= n; ++t) y[t - 1] = s.beta * t + rng.Normal(0.0, s.sigma);
  return y;
}

Dataset SampleCoordinationDataset(const CoordinationScenario& s, int n,
                                  RngStream& rng) {
  const auto y = SampleCoordinationSeries(s, n, rng);
  std::vector<Observation> obs;
  obs.reserve(n);
  for (int t = 1; t <= n; ++t) obs.emplace_back(TimeSeries{t, y[t - 1]});
  return Dataset(std::move(obs));
}

double OlsBetaHat(std::span<const double> log_counts) {
  const int n = static_cast<int>(log_counts.size());
  if (n < 2) throw InputError("ols_beta_hat: n must be >= 2");
  double sty = 0.0;
  double stt = 0.0;
  for (int t = 1; t <= n; ++t) {
    sty += t * log_counts[t - 1];
    stt += static_cast<double>(t) * t;
  }
  return sty / stt;
}

double OlsBetaHat(const Dataset& data) {
  if (data.empty() || !data.Holds<TimeSeries>()) {
    throw InputError("ols_beta_hat: needs TimeSeries observations");
  }
  const int n = static_cast<int>(data.n());
  if (n < 2) throw InputError("ols_beta_hat: n must be >= 2");
  double sty = 0.0;
  double stt = 0.0;
  for (const auto& o : data.observations()) {
    const auto& ts = std::get<TimeSeries>(o);
    sty += ts.t * ts.log_count;
    stt += static_cast<double>(ts.t) * ts.t;
  }
  return sty / stt;
}

double BetaIntervalHalfWidth(int n, double sigma, double alpha) {
  if (n < 2) throw InputError("beta_confidence_interval: n must be >= 2");
  if (!(sigma > 0.0)) throw InputError("beta_confidence_interval: sigma > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("beta_confidence_interval: alpha must lie in (0, 1)");
  }
  const double z = -NormalQuantile(alpha / 2.0);
  const double nn = static_cast<double>(n);
  return z * sigma * std::sqrt(12.0 / (nn * nn - 1.0));
}

Interval BetaConfidenceInterval(const Dataset& data, double sigma,
                                double alpha) {
  const double b = OlsBetaHat(data);
  const double hw = BetaIntervalHalfWidth(static_cast<int>(data.n()), sigma, alpha);
  return {b - hw, b + hw};
}

const char* ToString(LockdownStatus status) {
  switch (status) {
    case LockdownStatus::kStrongForAll:
      return "StrongForAll";
    case LockdownStatus::kSomeNotAll:
      return "SomeNotAll";
    case LockdownStatus::kNoneRationalizable:
      return "NoneRationalizable";
  }
  return "?";
}

LockdownStatus LockdownStatusOf(Interval ci) {
  if (ci.lo >= 1.0) return LockdownStatus::kStrongForAll;
  if (ci.hi >= 1.0) return LockdownStatus::kSomeNotAll;
  return LockdownStatus::kNoneRationalizable;
}

BeliefSet IntervalBeliefSet(Interval ci, const ParameterBox& box) {
  std::vector<Belief> members;
  for (double x : {ci.lo, 0.5 * (ci.lo + ci.hi), ci.hi}) {
    Belief b = Belief::PointMass(box, ParameterPoint(box.Project({x})));
    if (members.empty() || !ApproxEqual(members.back(), b)) {
      members.push_back(std::move(b));
    }
  }
  return BeliefSet(std::move(members));
}

// ---------------------------------------------------------------------------
// Rich priors.

void RichPriorsScenario::Validate() const {
  if (!(q_star > 0.5 && q_star <= 1.0)) {
    throw InputError("rich-priors scenario: q_star must lie in (1/2, 1]");
  }
  if (v != 0 && v != 1) throw InputError("rich-priors scenario: v is 0 or 1");
  if (!(0.0 < cost && cost < price && price < 1.0)) {
    throw InputError("rich-priors scenario: need 0 < cost < price < 1");
  }
  if (pi_grid.empty() || q_grid.empty()) {
    throw InputError("rich-priors scenario: grids must be nonempty");
  }
  for (double pi : pi_grid) {
    if (!(pi > 0.0 && pi < 1.0)) {
      throw InputError("rich-priors scenario: pi grid must lie in (0, 1)");
    }
  }
  for (double q : q_grid) {
    if (!(q > 0.5 && q < 1.0)) {
      throw InputError("rich-priors scenario: q grid must lie in (1/2, 1)");
    }
  }
}

RuleSet RichPriorsScenario::Rules() const {
  std::vector<LearningRule> rules;
  for (double pi : pi_grid) {
    for (double q : q_grid) rules.push_back(BinaryPiQ{pi, q});
  }
  return RuleSet(ParameterBox::Interval(0.0, 1.0), std::move(rules));
}

int SampleBinaryOnes(const RichPriorsScenario& s, int n, RngStream& rng) {
  if (n < 1) throw InputError("sample_binary_dataset: n must be >= 1");
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    const bool match = rng.Uniform() < s.q_star;
    ones += (match ? s.v : 1 - s.v);
  }
  return ones;
}

Dataset SampleBinaryDataset(const RichPriorsScenario& s, int n, RngStream& rng) {
  if (n < 1) throw InputError("sample_binary_dataset: n must be >= 1");
  std::vector<int> z(n);
  for (int& zi : z) zi = rng.Uniform() < s.q_star ? s.v : 1 - s.v;
  return MakeBinaryDataset(z);
}

PosteriorRange GridPosteriorRange(const RichPriorsScenario& s, int n,
                                  int ones) {
  // The posterior is monotone in pi and in q separately, so the extremes
  // over the grid sit at its corners.
  const auto [pi_lo, pi_hi] = std::minmax_element(s.pi_grid.begin(), s.pi_grid.end());
  const auto [q_lo, q_hi] = std::minmax_element(s.q_grid.begin(), s.q_grid.end());
  PosteriorRange r{1.0, 0.0};
  for (double pi : {*pi_lo, *pi_hi}) {
    for (double q : {*q_lo, *q_hi}) {
      const double v = PosteriorBinaryPQ(pi, q, n, ones);
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
  return r;
}

EnterStatus RichPriorsTradeStatus(const RichPriorsScenario& s, int n,
                                  int ones) {
  const PosteriorRange r = GridPosteriorRange(s, n, ones);
  EnterStatus out;
  out.weak_enter = r.lo < s.price && s.price < r.hi;
  out.strong_enter = false;
  return out;
}

EnterStatus RichPriorsTradeStatus(const Dataset& data,
                                  const RichPriorsScenario& s) {
  if (data.empty() || !data.Holds<BinarySignal>()) {
    throw InputError("richpriors_trade_status: needs BinarySignal data");
  }
  int ones = 0;
  for (const auto& o : data.observations()) ones += std::get<BinarySignal>(o).z;
  return RichPriorsTradeStatus(s, static_cast<int>(data.n()), ones);
}

// ---------------------------------------------------------------------------
// Gaussian priors.

void GaussianPriorScenario::Validate() const {
  if (!std::isfinite(beta)) throw InputError("gaussian scenario: beta finite");
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw InputError("gaussian scenario: eta must be >= 0");
  }
  if (grid_points < 1) throw InputError("gaussian scenario: grid_points >= 1");
  if (box.dim() != 1 || !box.Contains(std::vector<double>{1.0})) {
    throw InputError("gaussian scenario: box must be an interval with 1");
  }
}

std::vector<double> GaussianPriorScenario::PriorMeans() const {
  if (grid_points == 1) return {0.0};
  std::vector<double> xs(grid_points);
  for (int g = 0; g < grid_points; ++g) {
    xs[g] = -eta + 2.0 * eta * g / (grid_points - 1);
  }
  return xs;
}

RuleSet GaussianPriorScenario::Rules() const {
  std::vector<LearningRule> rules;
  for (double x : PriorMeans()) rules.push_back(GaussianPosteriorMean{x, 1.0, 1.0});
  return RuleSet(box, std::move(rules));
}

std::vector<double> GaussianPosteriorMeans(const GaussianPriorScenario& s,
                                           int n, double sum) {
  std::vector<double> out;
  for (double x : s.PriorMeans()) out.push_back((x + sum) / (n + 1.0));
  return out;
}

}  // namespace confset
