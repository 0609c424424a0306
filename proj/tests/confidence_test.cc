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

#include <cmath>
#include <vector>

#include "confset/closedforms.h"
#include "confset/confidence.h"
#include "confset/error.h"
#include "confset/models.h"
#include "confset/normal.h"
#include "doctest.h"

namespace confset {
namespace {

EstimateOptions Opts(int reps, std::uint64_t seed = 1, int threads = 1) {
  EstimateOptions o;
  o.replications = reps;
  o.master_seed = seed;
  o.threads = threads;
  return o;
}

bool SameEstimate(const ConfidenceEstimate& a, const ConfidenceEstimate& b) {
  return a.p_lower_hat == b.p_lower_hat && a.p_upper_hat == b.p_upper_hat &&
         a.se_lower == b.se_lower && a.se_upper == b.se_upper &&
         a.indeterminate_rate == b.indeterminate_rate &&
         a.mismatch_rate == b.mismatch_rate && a.stat_means == b.stat_means &&
         a.stat_ses == b.stat_ses;
}

class StrongOnly : public ReplicationModel {
 public:
  Outcome Replicate(int, RngStream&) const override {
    Outcome o;
    o.strong = true;
    return o;
  }
};

RichPriorsScenario WideGrid() {
  RichPriorsScenario s;
  s.pi_grid = {0.1, 0.5, 0.9};
  s.q_grid = {0.55, 0.75, 0.95};
  return s;
}

TEST_CASE("estimates are deterministic and schedule independent") {
  const TradeModel model(TradeScenario::Symmetric(2, 0.1),
                         TradeModel::Checker::kPaper, CheckMode::kFast);
  const auto a = EstimateConfidenceSet(model, 20, Opts(3000, 42, 1));
  const auto b = EstimateConfidenceSet(model, 20, Opts(3000, 42, 1));
  const auto c = EstimateConfidenceSet(model, 20, Opts(3000, 42, 7));
  const auto d = EstimateConfidenceSet(model, 20, Opts(3000, 42, 0));
  CHECK(SameEstimate(a, b));
  CHECK(SameEstimate(a, c));
  CHECK(SameEstimate(a, d));
  const auto e = EstimateConfidenceSet(model, 20, Opts(3000, 43, 1));
  CHECK_FALSE(SameEstimate(a, e));
  CHECK(a.stat_names == std::vector<std::string>{"weak_paper", "weak_bb"});
  CHECK(a.stat_means[0] == a.p_upper_hat);
}

TEST_CASE("estimator preconditions") {
  const CoordinationModel coord(CoordinationScenario{}, CheckMode::kFast);
  CHECK_THROWS_AS(EstimateConfidenceSet(coord, 1, Opts(10)), InputError);
  CHECK_THROWS_AS(EstimateConfidenceSet(coord, 5, Opts(0)), InputError);
  CHECK_THROWS_AS(EstimateConfidenceSet(StrongOnly(), 5, Opts(10)), DomainError);
  CHECK_THROWS_AS(EstimateConfidenceSet(StrongOnly(), 5, Opts(10, 1, 4)),
                  DomainError);
  CHECK(ParseCheckMode("cross_check") == CheckMode::kCrossCheck);
  CHECK_THROWS_AS(ParseCheckMode("exact"), InputError);
}

TEST_CASE("trade: a single observation always disagrees") {
  for (int m : {1, 3, 10}) {
    for (double a : {0.05, 0.5}) {
      for (auto checker :
           {TradeModel::Checker::kPaper, TradeModel::Checker::kBoundingBox}) {
        const TradeModel model(TradeScenario::Symmetric(m, a), checker,
                               CheckMode::kFast);
        const auto est = EstimateConfidenceSet(model, 1, Opts(500));
        CHECK(est.p_upper_hat == 1.0);
        CHECK(est.p_lower_hat == 0.0);
      }
    }
  }
}

TEST_CASE("trade: Monte Carlo matches the closed form") {
  const double a = 0.3;
  double prev = -1.0;
  for (int m : {1, 2, 4}) {
    const TradeModel model(TradeScenario::Symmetric(m, a),
                           TradeModel::Checker::kPaper, CheckMode::kFast);
    const auto est = EstimateConfidenceSet(model, 10, Opts(20000, 3, 4));
    const double cf = TradePbarSymmetric(10, m, a);
    CHECK(std::abs(est.p_upper_hat - cf) < 3 * est.se_upper);
    CHECK(est.p_lower_hat == 0.0);
    // Bounding-box disagreement dominates.
    CHECK(est.stat_means[1] >= est.stat_means[0]);
    CHECK(est.p_upper_hat > prev - 3 * est.se_upper);
    prev = est.p_upper_hat;
  }
  const TradeScenario rect{{0.2, 0.4}, {0.5, 0.1}, 0.5, 0.1};
  const TradeModel model(rect, TradeModel::Checker::kPaper, CheckMode::kFast);
  const auto est = EstimateConfidenceSet(model, 8, Opts(20000, 9, 4));
  const double cf = TradePbarRect(8, rect.r_lower, rect.r_upper);
  CHECK(std::abs(est.p_upper_hat - cf) < 3 * est.se_upper);
}

TEST_CASE("coordination: Monte Carlo matches the implemented estimator") {
  // For the through-origin slope with the printed half-width hw, the slope
  // has sd s = sigma / sqrt(sum t^2), so strong holds with probability
  // 1 - Phi((1 + hw - beta) / s) and weak with 1 - Phi((1 - hw - beta) / s).
  const CoordinationScenario s;
  double prev_lo = -1, prev_hi = -1;
  for (int n : {5, 10, 30}) {
    const CoordinationModel model(s, CheckMode::kFast);
    const auto est = EstimateConfidenceSet(model, n, Opts(10000, 17, 4));
    const double nn = n;
    const double sd = s.sigma / std::sqrt(nn * (nn + 1) * (2 * nn + 1) / 6);
    const double hw = BetaIntervalHalfWidth(n, s.sigma, s.alpha);
    const double lo = 1 - NormalCdf((1 + hw - s.beta) / sd);
    const double hi = 1 - NormalCdf((1 - hw - s.beta) / sd);
    CHECK(std::abs(est.p_lower_hat - lo) < 3 * est.se_lower + 1e-12);
    CHECK(std::abs(est.p_upper_hat - hi) < 3 * est.se_upper + 1e-12);
    CHECK(est.p_lower_hat >= prev_lo - 3 * est.se_lower);
    CHECK(est.p_upper_hat >= prev_hi - 3 * est.se_upper);
    prev_lo = est.p_lower_hat;
    prev_hi = est.p_upper_hat;
    // Sup deviation is |beta_hat - beta| + hw.
    CHECK(est.stat_means[0] >= hw);
  }
}

TEST_CASE("standard errors") {
  CoordinationScenario s;
  s.alpha = 0.9;
  s.beta = 1.3;
  const CoordinationModel model(s, CheckMode::kFast);
  const auto a = EstimateConfidenceSet(model, 10, Opts(4000, 5, 4));
  REQUIRE(a.p_lower_hat > 0.1);
  REQUIRE(a.p_upper_hat < 0.99);
  const auto b = EstimateConfidenceSet(model, 10, Opts(8000, 5, 4));
  CHECK(a.se_lower == doctest::Approx(std::sqrt(
                          a.p_lower_hat * (1 - a.p_lower_hat) / 4000)));
  CHECK(b.se_lower / a.se_lower ==
        doctest::Approx(1 / std::sqrt(2.0)).epsilon(0.1));
  CHECK(b.se_upper / a.se_upper ==
        doctest::Approx(1 / std::sqrt(2.0)).epsilon(0.1));
  CHECK(a.p_lower_hat <= a.p_upper_hat + 2 * (a.se_lower + a.se_upper));
}

TEST_CASE("singleton rule set gives equal bounds") {
  GaussianPriorScenario s;
  s.grid_points = 1;
  s.beta = 1.2;
  for (CheckMode mode : {CheckMode::kFast, CheckMode::kGeneric}) {
    const GaussianPriorModel model(s, mode);
    const auto est = EstimateConfidenceSet(model, 5, Opts(400, 2, 2));
    CHECK(est.p_lower_hat == est.p_upper_hat);
    CHECK(est.p_lower_hat > 0.0);
    CHECK(est.p_lower_hat < 1.0);
  }
}

TEST_CASE("fast and generic paths agree replication by replication") {
  SUBCASE("trade") {
    for (int n : {1, 3, 10}) {
      const TradeModel model(TradeScenario::Symmetric(2, 0.3),
                             TradeModel::Checker::kBoundingBox,
                             CheckMode::kCrossCheck);
      const auto est = EstimateConfidenceSet(model, n, Opts(300, 4, 4));
      CHECK(est.mismatch_rate == 0.0);
      CHECK(est.indeterminate_rate == 0.0);
    }
  }
  SUBCASE("coordination") {
    CoordinationScenario s;
    s.beta = 1.1;
    s.sigma = 1.0;
    for (int n : {2, 4, 8}) {
      const CoordinationModel model(s, CheckMode::kCrossCheck);
      const auto est = EstimateConfidenceSet(model, n, Opts(300, 4, 4));
      CHECK(est.mismatch_rate == 0.0);
      CHECK(est.p_upper_hat > 0.0);
    }
  }
  SUBCASE("rich priors") {
    for (int n : {2, 8, 30}) {
      const RichPriorsModel model(WideGrid(), CheckMode::kCrossCheck);
      const auto est = EstimateConfidenceSet(model, n, Opts(300, 4, 4));
      CHECK(est.mismatch_rate == 0.0);
      CHECK(est.p_lower_hat == 0.0);
    }
  }
  SUBCASE("gaussian priors") {
    GaussianPriorScenario s;
    s.beta = 1.1;
    for (int n : {1, 5, 20}) {
      const GaussianPriorModel model(s, CheckMode::kCrossCheck);
      const auto est = EstimateConfidenceSet(model, n, Opts(300, 4, 4));
      CHECK(est.mismatch_rate == 0.0);
    }
  }
}

TEST_CASE("generic path reproduces the fast estimates") {
  const RichPriorsScenario s = WideGrid();
  const auto fast =
      EstimateConfidenceSet(RichPriorsModel(s, CheckMode::kFast), 12, Opts(400));
  const auto generic = EstimateConfidenceSet(
      RichPriorsModel(s, CheckMode::kGeneric), 12, Opts(400));
  CHECK(fast.p_lower_hat == generic.p_lower_hat);
  CHECK(std::abs(fast.p_upper_hat - generic.p_upper_hat) <= 2 * fast.se_upper);
  CHECK(fast.stat_means[0] ==
        doctest::Approx(generic.stat_means[0]).epsilon(1e-6));
}

}  // namespace
}  // namespace confset
