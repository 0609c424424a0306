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

#ifndef CONFSET_EXPERIMENT_H_
#define CONFSET_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "confset/closedforms.h"
#include "confset/models.h"
#include "confset/scenarios.h"

namespace confset {

inline constexpr std::string_view kVersion = "confset 1.0.0";

using ScenarioSpec = std::variant<TradeScenario, CoordinationScenario,
                                  RichPriorsScenario, GaussianPriorScenario>;

// One point of the parameter product.
struct Parameterization {
  // Human-readable label, e.g. "coordination(beta=2,sigma=10,alpha=0.05)".
  std::string id;
  ScenarioSpec scenario;
};

struct ExperimentConfig {
  // trade, coordination, rich_priors or gaussian_prior.
  std::string kind;
  std::vector<Parameterization> parameterizations;
  std::vector<int> n_grid;
  int replications = 1000;
  std::uint64_t master_seed = 0;
  bool want_mc = true;
  bool want_closed_form = false;
  bool want_bounds = false;
  CheckMode mode = CheckMode::kFast;
  TradeModel::Checker checker = TradeModel::Checker::kPaper;
  // Common p-belief level for the p-belief bound; absent means not emitted.
  std::optional<double> q_belief;
  // Defaults for the command line.
  std::string format = "csv";
  std::string out;
};

// Parses and validates a JSON config. Throws ConfigError naming the
// offending field (or the parse position).
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::string& path);

inline constexpr int kNumBounds = 5;
// Bound column stems in output order.
inline constexpr std::string_view kBoundNames[kNumBounds] = {
    "markov", "shrink", "gaussian", "sanov", "pbelief"};

struct ResultRow {
  std::string scenario;
  int n = 0;
  std::optional<double> p_lower_hat;
  std::optional<double> p_upper_hat;
  std::optional<double> se_lower;
  std::optional<double> se_upper;
  std::optional<double> p_lower_cf;
  std::optional<double> p_upper_cf;
  std::optional<BoundResult> bounds[kNumBounds];
  std::optional<double> indeterminate_rate;
  // Cross-check disagreements; reported on stderr, not a column.
  std::optional<double> mismatch_rate;
  int replications = 0;
  std::uint64_t master_seed = 0;
};

// One row per (parameterization, n), in config order. `threads` follows
// EstimateOptions and never changes the result.
std::vector<ResultRow> RunConfig(const ExperimentConfig& config, int threads);

// Exact finite-n probabilities for a parameterization; nullopt where the
// scenario has none.
std::optional<ClosedFormPair> ExactPair(const ScenarioSpec& spec, int n);

std::vector<std::string> ResultColumns();

// RFC 4180 CSV (LF line endings) with a header row, or a JSON array of
// objects with the same keys. Doubles use 17 significant digits; missing
// values are empty cells / null.
void WriteCsv(const std::vector<ResultRow>& rows, std::ostream& out);
void WriteJson(const std::vector<ResultRow>& rows, std::ostream& out);

// Round-trip formatting shared by the writers.
std::string FormatDouble(double x);

}  // namespace confset

#endif  // CONFSET_EXPERIMENT_H_
