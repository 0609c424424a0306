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

#include "confset/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <utility>

#include "confset/confidence.h"
#include "confset/error.h"
#include "confset/learning.h"
#include "confset/normal.h"
#include "confset/solver.h"
#include "json.hpp"

namespace confset {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

double Number(const json& j, const std::string& field) {
  if (!j.is_number()) Fail(field, "expected a number");
  return j.get<double>();
}

int Integer(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !(j.is_number() && std::trunc(j.get<double>()) ==
                                                       j.get<double>())) {
    Fail(field, "expected an integer");
  }
  const double v = j.get<double>();
  if (std::abs(v) > 2e9) Fail(field, "integer out of range");
  return static_cast<int>(v);
}

std::vector<double> NumberList(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) Fail(field, "expected a nonempty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(Number(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string Short(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Parameters of each scenario kind, in product order, with defaults.
const std::map<std::string, std::vector<std::pair<std::string, double>>>&
ParamTable() {
  static const auto* table =
      new std::map<std::string, std::vector<std::pair<std::string, double>>>{
          {"trade", {{"m", 1}, {"a", 0.1}, {"price", 0.5}, {"cost", 0.1}}},
          {"coordination", {{"beta", 2}, {"sigma", 10}, {"alpha", 0.05}}},
          {"rich_priors",
           {{"q_star", 0.75}, {"v", 1}, {"price", 0.75}, {"cost", 0.05}}},
          {"gaussian_prior", {{"beta", 2}}},
      };
  return *table;
}

std::string ActionOf(const std::string& kind) {
  return kind == "trade" || kind == "rich_priors" ? "enter" : "strong";
}

void CheckKeys(const json& obj, const std::string& where,
               const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      Fail(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

ParameterBox ParseBox(const json& j) {
  const auto v = NumberList(j, "box");
  if (v.size() != 2 || !(v[0] < 1.0 && 1.0 < v[1])) {
    Fail("box", "expected [lo, hi] with lo < 1 < hi");
  }
  return ParameterBox::Interval(v[0], v[1]);
}

ScenarioSpec Build(const std::string& kind, const std::map<std::string, double>& p,
                   const json& root) {
  const json rules = root.value("rules", json::object());
  const json rect = root.value("rectangle", json());
  if (kind == "trade") {
    TradeScenario s;
    if (!rect.is_null()) {
      if (!rect.is_object()) Fail("rectangle", "expected an object");
      CheckKeys(rect, "rectangle", {"r_lower", "r_upper"});
      if (!rect.contains("r_lower") || !rect.contains("r_upper")) {
        Fail("rectangle", "needs r_lower and r_upper");
      }
      s.r_lower = NumberList(rect["r_lower"], "rectangle.r_lower");
      s.r_upper = NumberList(rect["r_upper"], "rectangle.r_upper");
      if (s.r_lower.size() != s.r_upper.size()) {
        Fail("rectangle", "r_lower and r_upper differ in length");
      }
      s.price = p.at("price");
      s.cost = p.at("cost");
    } else {
      const double m = p.at("m");
      if (m < 1 || m != std::trunc(m)) Fail("params.m", "expected an integer >= 1");
      s = TradeScenario::Symmetric(static_cast<int>(m), p.at("a"), p.at("price"),
                                   p.at("cost"));
    }
    return s;
  }
  if (kind == "coordination") {
    CoordinationScenario s;
    s.beta = p.at("beta");
    s.sigma = p.at("sigma");
    s.alpha = p.at("alpha");
    if (root.contains("box")) s.box = ParseBox(root["box"]);
    return s;
  }
  if (kind == "rich_priors") {
    RichPriorsScenario s;
    s.q_star = p.at("q_star");
    const double v = p.at("v");
    if (v != 0.0 && v != 1.0) Fail("params.v", "expected 0 or 1");
    s.v = static_cast<int>(v);
    s.price = p.at("price");
    s.cost = p.at("cost");
    if (!rules.contains("pi_grid") || !rules.contains("q_grid")) {
      Fail("rules", "rich_priors needs pi_grid and q_grid");
    }
    s.pi_grid = NumberList(rules["pi_grid"], "rules.pi_grid");
    s.q_grid = NumberList(rules["q_grid"], "rules.q_grid");
    return s;
  }
  GaussianPriorScenario s;
  s.beta = p.at("beta");
  if (rules.contains("eta")) s.eta = Number(rules["eta"], "rules.eta");
  if (rules.contains("grid_points")) {
    s.grid_points = Integer(rules["grid_points"], "rules.grid_points");
  }
  if (root.contains("box")) s.box = ParseBox(root["box"]);
  return s;
}

void ValidateSpec(const ScenarioSpec& spec) {
  std::visit([](const auto& s) { s.Validate(); }, spec);
}

int MinN(const ScenarioSpec& spec) {
  return std::holds_alternative<CoordinationScenario>(spec) ? 2 : 1;
}

std::unique_ptr<ReplicationModel> MakeModel(const ExperimentConfig& c,
                                            const ScenarioSpec& spec) {
  if (const auto* s = std::get_if<TradeScenario>(&spec)) {
    return std::make_unique<TradeModel>(*s, c.checker, c.mode);
  }
  if (const auto* s = std::get_if<CoordinationScenario>(&spec)) {
    return std::make_unique<CoordinationModel>(*s, c.mode);
  }
  if (const auto* s = std::get_if<RichPriorsScenario>(&spec)) {
    return std::make_unique<RichPriorsModel>(*s, c.mode);
  }
  return std::make_unique<GaussianPriorModel>(
      std::get<GaussianPriorScenario>(spec), c.mode);
}

double LogBinomialPmf(int n, int k, double p) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
         k * std::log(p) + (n - k) * std::log1p(-p);
}

std::optional<double> StatMean(const ConfidenceEstimate& est,
                               const std::string& name) {
  for (std::size_t k = 0; k < est.stat_names.size(); ++k) {
    if (est.stat_names[k] == name) return est.stat_means[k];
  }
  return std::nullopt;
}

// Bounds for the lockdown games, which share the coordination game.
void LockdownBounds(double beta, const ParameterBox& box,
                    const std::optional<double>& q_belief,
                    const ConfidenceEstimate* est, ResultRow& row) {
  if (!est || !(beta > 1.0)) return;
  const FiniteGame game = CoordinationGame(box);
  const StrictnessMargin margin = DeltaInf(
      game, Belief::PointMass(box, ParameterPoint(beta)), 0, kStrong);
  if (margin.not_rationalizable || !(margin.value > 0.0)) return;
  BoundInputs in;
  in.delta_inf = margin.value;
  in.K = game.lipschitz_K();
  in.xi = box.Diameter();
  in.expected_sup_deviation = StatMean(*est, "sup_belief_deviation").value();
  row.bounds[0] = MarkovLowerBound(in);
  row.bounds[1] = ShrinkLowerBound(
      in.delta_inf, in.K, StatMean(*est, "sup_param_deviation").value());
  if (q_belief) {
    const std::vector<ParameterPoint> corners = {
        ParameterPoint(box.lower()[0]), ParameterPoint(box.upper()[0])};
    in.M = PayoffSpread(game, corners);
    in.q_belief = *q_belief;
    row.bounds[4] = PbeliefLowerBound(in);
  }
}

void FillBounds(const ExperimentConfig& c, const ScenarioSpec& spec, int n,
                const ConfidenceEstimate* est, ResultRow& row) {
  if (const auto* s = std::get_if<CoordinationScenario>(&spec)) {
    LockdownBounds(s->beta, s->box, c.q_belief, est, row);
  } else if (const auto* s = std::get_if<GaussianPriorScenario>(&spec)) {
    LockdownBounds(s->beta, s->box, c.q_belief, est, row);
    if (s->beta > 1.0) {
      row.bounds[2] = GaussianCorollaryBound(n, s->beta, s->eta);
    }
  } else if (const auto* s = std::get_if<RichPriorsScenario>(&spec)) {
    const double pi_lo = *std::min_element(s->pi_grid.begin(), s->pi_grid.end());
    const double q_lo = *std::min_element(s->q_grid.begin(), s->q_grid.end());
    // Entry needs the lowest posterior below the price, which confines the
    // empirical mean below zbar* when the prior odds at pi_lo do not
    // exceed the price odds.
    const double ratio = pi_lo / (1.0 - pi_lo) * (1.0 - s->price) / s->price;
    if (s->v == 1 && s->q_star < 1.0 && ratio <= 1.0) {
      row.bounds[3] = SanovUpperBound(
          n, 2, SanovPipelineRate(n, pi_lo, q_lo, s->price, s->q_star));
    }
  }
}

std::string Cell(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

std::string CsvQuote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Cells of one row as (value, kind) where kind is 's' string, 'n' number,
// 'b' boolean, '-' missing.
std::vector<std::pair<std::string, char>> RowCells(const ResultRow& r) {
  std::vector<std::pair<std::string, char>> cells;
  auto num = [&](const std::optional<double>& v) {
    cells.emplace_back(Cell(v), v ? 'n' : '-');
  };
  cells.emplace_back(r.scenario, 's');
  cells.emplace_back(std::to_string(r.n), 'n');
  num(r.p_lower_hat);
  num(r.p_upper_hat);
  num(r.se_lower);
  num(r.se_upper);
  num(r.p_lower_cf);
  num(r.p_upper_cf);
  for (const auto& b : r.bounds) {
    if (b) {
      cells.emplace_back(FormatDouble(b->raw), 'n');
      cells.emplace_back(FormatDouble(b->value), 'n');
      cells.emplace_back(b->clamped ? "true" : "false", 'b');
    } else {
      for (int k = 0; k < 3; ++k) cells.emplace_back("", '-');
    }
  }
  num(r.indeterminate_rate);
  cells.emplace_back(std::to_string(r.replications), 'n');
  cells.emplace_back(std::to_string(r.master_seed), 'n');
  cells.emplace_back(std::string(kVersion), 's');
  return cells;
}

}  // namespace

ExperimentConfig ParseConfig(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  CheckKeys(root, "",
            {"description", "scenario", "action", "params", "rules", "rectangle",
             "box", "n_grid", "replications", "master_seed", "outputs",
             "check_mode", "checker", "q_belief", "format", "out"});

  ExperimentConfig c;
  if (!root.contains("scenario") || !root["scenario"].is_string()) {
    Fail("scenario", "required string");
  }
  c.kind = root["scenario"].get<std::string>();
  const auto table = ParamTable().find(c.kind);
  if (table == ParamTable().end()) {
    Fail("scenario", "unknown scenario '" + c.kind +
                         "' (expected trade, coordination, rich_priors or "
                         "gaussian_prior)");
  }
  if (root.contains("action")) {
    if (!root["action"].is_string() ||
        root["action"].get<std::string>() != ActionOf(c.kind)) {
      Fail("action", "the " + c.kind + " scenario reports the action '" +
                         ActionOf(c.kind) + "'");
    }
  }
  if (c.kind != "trade" && root.contains("rectangle")) {
    Fail("rectangle", "only valid for the trade scenario");
  }
  if (c.kind != "coordination" && c.kind != "gaussian_prior" &&
      root.contains("box")) {
    Fail("box", "only valid for the coordination and gaussian_prior scenarios");
  }
  const json rules = root.value("rules", json::object());
  if (!rules.is_object()) Fail("rules", "expected an object");
  if (c.kind == "rich_priors") {
    CheckKeys(rules, "rules", {"pi_grid", "q_grid"});
  } else if (c.kind == "gaussian_prior") {
    CheckKeys(rules, "rules", {"eta", "grid_points"});
  } else {
    CheckKeys(rules, "rules", {});
  }

  // Parameter product, last key varying fastest.
  const json params = root.value("params", json::object());
  if (!params.is_object()) Fail("params", "expected an object");
  std::set<std::string> known;
  for (const auto& [name, def] : table->second) known.insert(name);
  CheckKeys(params, "params", known);
  if (c.kind == "trade" && root.contains("rectangle") &&
      (params.contains("m") || params.contains("a"))) {
    Fail("rectangle", "give either rectangle or params.m / params.a");
  }
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  for (const auto& [name, def] : table->second) {
    const std::string field = "params." + name;
    if (!params.contains(name)) {
      axes.push_back({name, {def}});
    } else if (params[name].is_array()) {
      axes.push_back({name, NumberList(params[name], field)});
    } else {
      axes.push_back({name, {Number(params[name], field)}});
    }
  }
  std::vector<std::size_t> idx(axes.size(), 0);
  for (bool done = false; !done;) {
    std::map<std::string, double> point;
    std::string id = c.kind + "(";
    bool first = true;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const double v = axes[k].second[idx[k]];
      point[axes[k].first] = v;
      if (c.kind == "trade" && root.contains("rectangle") &&
          (axes[k].first == "m" || axes[k].first == "a")) {
        continue;
      }
      id += (first ? "" : ",") + axes[k].first + "=" + Short(v);
      first = false;
    }
    id += ")";
    try {
      Parameterization p{id, Build(c.kind, point, root)};
      ValidateSpec(p.scenario);
      c.parameterizations.push_back(std::move(p));
    } catch (const InputError& e) {
      throw ConfigError("config field 'params' (" + id + "): " + e.what());
    }
    done = true;
    for (std::size_t k = axes.size(); k-- > 0;) {
      if (++idx[k] < axes[k].second.size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
  }

  if (!root.contains("n_grid")) Fail("n_grid", "required");
  const json& ng = root["n_grid"];
  if (!ng.is_array() || ng.empty()) Fail("n_grid", "expected a nonempty array");
  for (std::size_t i = 0; i < ng.size(); ++i) {
    const int n = Integer(ng[i], "n_grid[" + std::to_string(i) + "]");
    if (!c.n_grid.empty() && n <= c.n_grid.back()) {
      Fail("n_grid", "must be strictly ascending");
    }
    if (n < MinN(c.parameterizations.front().scenario)) {
      Fail("n_grid[" + std::to_string(i) + "]",
           "below the scenario minimum of " +
               std::to_string(MinN(c.parameterizations.front().scenario)));
    }
    c.n_grid.push_back(n);
  }
  if (root.contains("replications")) {
    c.replications = Integer(root["replications"], "replications");
    if (c.replications < 1) Fail("replications", "must be >= 1");
  }
  if (root.contains("master_seed")) {
    const json& s = root["master_seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      Fail("master_seed", "expected a nonnegative integer");
    }
    c.master_seed = s.get<std::uint64_t>();
  }
  if (root.contains("outputs")) {
    const json& o = root["outputs"];
    if (!o.is_array() || o.empty()) Fail("outputs", "expected a nonempty array");
    c.want_mc = c.want_closed_form = c.want_bounds = false;
    for (const auto& item : o) {
      const std::string s = item.is_string() ? item.get<std::string>() : "";
      if (s == "mc") {
        c.want_mc = true;
      } else if (s == "closed_form") {
        c.want_closed_form = true;
      } else if (s == "bounds") {
        c.want_bounds = true;
      } else {
        Fail("outputs", "entries must be mc, closed_form or bounds");
      }
    }
  }
  if (root.contains("check_mode")) {
    if (!root["check_mode"].is_string()) Fail("check_mode", "expected a string");
    try {
      c.mode = ParseCheckMode(root["check_mode"].get<std::string>());
    } catch (const InputError& e) {
      Fail("check_mode", e.what());
    }
  }
  if (root.contains("checker")) {
    if (c.kind != "trade") Fail("checker", "only valid for the trade scenario");
    const std::string s =
        root["checker"].is_string() ? root["checker"].get<std::string>() : "";
    if (s == "paper") {
      c.checker = TradeModel::Checker::kPaper;
    } else if (s == "bounding_box") {
      c.checker = TradeModel::Checker::kBoundingBox;
    } else {
      Fail("checker", "expected paper or bounding_box");
    }
  }
  if (root.contains("q_belief")) {
    const double q = Number(root["q_belief"], "q_belief");
    if (!(q > 0.0 && q <= 1.0)) Fail("q_belief", "must lie in (0, 1]");
    c.q_belief = q;
  }
  if (root.contains("format")) {
    const std::string f =
        root["format"].is_string() ? root["format"].get<std::string>() : "";
    if (f != "csv" && f != "json") Fail("format", "expected csv or json");
    c.format = f;
  }
  if (root.contains("out")) {
    if (!root["out"].is_string()) Fail("out", "expected a path string");
    c.out = root["out"].get<std::string>();
  }
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::optional<ClosedFormPair> ExactPair(const ScenarioSpec& spec, int n) {
  if (const auto* s = std::get_if<TradeScenario>(&spec)) {
    return ClosedFormPair{0.0, TradePbarRect(n, s->r_lower, s->r_upper)};
  }
  if (const auto* s = std::get_if<CoordinationScenario>(&spec)) {
    return CoordClosedForm(n, s->beta, s->sigma, s->alpha);
  }
  if (const auto* s = std::get_if<RichPriorsScenario>(&spec)) {
    // Ones are Binomial(n, P(z = 1)).
    const double p1 = s->v == 1 ? s->q_star : 1.0 - s->q_star;
    double upper = 0.0;
    for (int ones = 0; ones <= n; ++ones) {
      if (!RichPriorsTradeStatus(*s, n, ones).weak_enter) continue;
      if (p1 == 1.0 || p1 == 0.0) {
        upper += (ones == (p1 == 1.0 ? n : 0)) ? 1.0 : 0.0;
      } else {
        upper += std::exp(LogBinomialPmf(n, ones, p1));
      }
    }
    return ClosedFormPair{0.0, std::min(upper, 1.0)};
  }
  // Posterior means (x + S) / (n + 1) with S ~ N(n beta, n); the lockdown
  // threshold 1 lies inside the box, so projection does not matter.
  const auto& s = std::get<GaussianPriorScenario>(spec);
  const auto means = s.PriorMeans();
  const double lo = *std::min_element(means.begin(), means.end());
  const double hi = *std::max_element(means.begin(), means.end());
  const double sd = std::sqrt(static_cast<double>(n));
  auto p_at_least_one = [&](double x) {
    return 1.0 - NormalCdf((n + 1.0 - x - n * s.beta) / sd);
  };
  return ClosedFormPair{p_at_least_one(lo), p_at_least_one(hi)};
}

std::vector<ResultRow> RunConfig(const ExperimentConfig& config, int threads) {
  std::vector<ResultRow> rows;
  for (const Parameterization& p : config.parameterizations) {
    const auto model = MakeModel(config, p.scenario);
    for (int n : config.n_grid) {
      ResultRow row;
      row.scenario = p.id;
      row.n = n;
      row.replications = config.replications;
      row.master_seed = config.master_seed;
      std::optional<ConfidenceEstimate> est;
      if (config.want_mc) {
        EstimateOptions opts;
        opts.replications = config.replications;
        opts.master_seed = config.master_seed;
        opts.threads = threads;
        est = EstimateConfidenceSet(*model, n, opts);
        row.p_lower_hat = est->p_lower_hat;
        row.p_upper_hat = est->p_upper_hat;
        row.se_lower = est->se_lower;
        row.se_upper = est->se_upper;
        row.indeterminate_rate = est->indeterminate_rate;
        if (config.mode == CheckMode::kCrossCheck) {
          row.mismatch_rate = est->mismatch_rate;
        }
      }
      if (config.want_closed_form) {
        if (const auto pair = ExactPair(p.scenario, n)) {
          row.p_lower_cf = pair->p_lower;
          row.p_upper_cf = pair->p_upper;
        }
      }
      if (config.want_bounds) {
        FillBounds(config, p.scenario, n, est ? &*est : nullptr, row);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::string> ResultColumns() {
  std::vector<std::string> cols = {"scenario",   "n",          "p_lower_hat",
                                   "p_upper_hat", "se_lower",  "se_upper",
                                   "p_lower_cf",  "p_upper_cf"};
  for (std::string_view b : kBoundNames) {
    const std::string stem = "bound_" + std::string(b);
    cols.push_back(stem + "_raw");
    cols.push_back(stem);
    cols.push_back(stem + "_clamped");
  }
  for (const char* c : {"indeterminate_rate", "R", "master_seed", "version"}) {
    cols.push_back(c);
  }
  return cols;
}

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void WriteCsv(const std::vector<ResultRow>& rows, std::ostream& out) {
  const auto cols = ResultColumns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    out << (k ? "," : "") << cols[k];
  }
  out << '\n';
  for (const ResultRow& r : rows) {
    const auto cells = RowCells(r);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      out << (k ? "," : "") << CsvQuote(cells[k].first);
    }
    out << '\n';
  }
}

void WriteJson(const std::vector<ResultRow>& rows, std::ostream& out) {
  const auto cols = ResultColumns();
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto cells = RowCells(rows[i]);
    out << (i ? ",\n  {" : "\n  {");
    for (std::size_t k = 0; k < cells.size(); ++k) {
      out << (k ? ", " : "") << json(cols[k]).dump() << ": ";
      const auto& [text, kind] = cells[k];
      const bool finite_number =
          kind == 'n' && text != "nan" && text != "inf" && text != "-inf";
      if (kind == 's') {
        out << json(text).dump();
      } else if (kind == 'b' || finite_number) {
        out << text;
      } else {
        out << "null";
      }
    }
    out << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

}  // namespace confset
