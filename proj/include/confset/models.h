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

#ifndef CONFSET_MODELS_H_
#define CONFSET_MODELS_H_

#include <string>
#include <string_view>
#include <vector>

#include "confset/confidence.h"
#include "confset/scenarios.h"
#include "confset/solver.h"

namespace confset {

// kFast uses the scenario's exact characterization, kGeneric builds the
// plausible belief set and runs the solver, kCrossCheck runs both, reports
// the fast result and flags disagreements.
enum class CheckMode { kFast, kGeneric, kCrossCheck };

CheckMode ParseCheckMode(std::string_view name);
const char* ToString(CheckMode mode);

// Entering for the Seller in the rectangle trade scenario.
class TradeModel : public ReplicationModel {
 public:
  // Which exact event decides "weak" on the fast path.
  enum class Checker { kPaper, kBoundingBox };

  TradeModel(TradeScenario scenario, Checker checker, CheckMode mode);

  Outcome Replicate(int n, RngStream& rng) const override;
  // weak_paper, weak_bb: both exact disagreement indicators.
  std::vector<std::string> StatNames() const override;

 private:
  TradeScenario scenario_;
  Checker checker_;
  CheckMode mode_;
  FiniteGame game_;
};

// The strong lockdown in the coordination scenario, with the confidence
// interval for beta as the set of permitted point beliefs.
class CoordinationModel : public ReplicationModel {
 public:
  CoordinationModel(CoordinationScenario scenario, CheckMode mode);

  Outcome Replicate(int n, RngStream& rng) const override;
  // sup_param_deviation: sup over the interval of |theta - beta|;
  // sup_belief_deviation: the matching Prokhorov deviation min(., 1).
  std::vector<std::string> StatNames() const override;
  int MinN() const override { return 2; }

 private:
  CoordinationScenario scenario_;
  CheckMode mode_;
  FiniteGame game_;
};

// Entering in the trade game under the (pi, q) rule grid.
class RichPriorsModel : public ReplicationModel {
 public:
  RichPriorsModel(RichPriorsScenario scenario, CheckMode mode);

  Outcome Replicate(int n, RngStream& rng) const override;
  // sup_belief_deviation: sup over rules of the Prokhorov distance to the
  // point mass at the true v.
  std::vector<std::string> StatNames() const override;

 private:
  RichPriorsScenario scenario_;
  CheckMode mode_;
  FiniteGame game_;
  RuleSet rules_;
};

// The strong lockdown when beliefs are Gaussian posterior means.
class GaussianPriorModel : public ReplicationModel {
 public:
  GaussianPriorModel(GaussianPriorScenario scenario, CheckMode mode);

  Outcome Replicate(int n, RngStream& rng) const override;
  // sup_param_deviation, sup_belief_deviation as for CoordinationModel.
  std::vector<std::string> StatNames() const override;

 private:
  GaussianPriorScenario scenario_;
  CheckMode mode_;
  FiniteGame game_;
  RuleSet rules_;
};

}  // namespace confset

#endif  // CONFSET_MODELS_H_
