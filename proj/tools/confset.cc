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

// Command-line front end: run/validate experiment configs and evaluate the
// closed forms and bounds directly.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "confset/closedforms.h"
#include "confset/error.h"
#include "confset/experiment.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw confset::IoError("cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw confset::IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw confset::IoError("failed writing '" + path + "'");
}

std::string BoundLine(const confset::BoundResult& b) {
  return "raw,value,clamped\n" + confset::FormatDouble(b.raw) + "," +
         confset::FormatDouble(b.value) + "," + (b.clamped ? "true" : "false") +
         "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence sets for rationalizable predictions under "
               "learned beliefs"};
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  int threads = 0;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config,--config", config_path, "Config file")->required();
  run->add_option("--out", out_path, "Output path (default: config or stdout)");
  run->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--threads", threads, "Worker threads, 0 = auto")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--seed", seed, "Override master_seed");

  auto* validate = app.add_subcommand("validate", "Check a config and exit");
  validate->add_option("config,--config", config_path, "Config file")
      ->required();

  std::string cf_scenario;
  int cf_n = 0, cf_m = 1;
  double cf_a = 0.1, cf_beta = 2.0, cf_sigma = 10.0, cf_alpha = 0.05;
  std::vector<double> cf_rlo, cf_rhi;
  auto* cf = app.add_subcommand("closed-form", "Evaluate a closed form");
  cf->add_option("scenario", cf_scenario, "trade or coordination")
      ->required()
      ->check(CLI::IsMember({"trade", "coordination"}));
  cf->add_option("--n", cf_n, "Dataset size")->required();
  cf->add_option("--m", cf_m, "Attributes (symmetric trade)");
  cf->add_option("--a", cf_a, "Half-width (symmetric trade)");
  cf->add_option("--rlo", cf_rlo, "Per-dimension lower bounds (trade)");
  cf->add_option("--rhi", cf_rhi, "Per-dimension upper bounds (trade)");
  cf->add_option("--beta", cf_beta, "Growth rate (coordination)");
  cf->add_option("--sigma", cf_sigma, "Noise sd (coordination)");
  cf->add_option("--alpha", cf_alpha, "Interval level (coordination)");

  std::string b_kind;
  confset::BoundInputs bin;
  int b_n = 1, b_alphabet = 2;
  double b_beta = 2.0, b_eta = 1.0, b_dkl = 0.0, b_pi = 0.25, b_q = 2.0 / 3.0,
         b_price = 0.75;
  auto* bounds = app.add_subcommand("bounds", "Evaluate a bound");
  bounds
      ->add_option("kind", b_kind,
                   "markov, shrink, gaussian, sanov, sanov-trade, zbar or "
                   "pbelief")
      ->required()
      ->check(CLI::IsMember({"markov", "shrink", "gaussian", "sanov",
                             "sanov-trade", "zbar", "pbelief"}));
  bounds->add_option("--delta-inf", bin.delta_inf, "Strictness margin");
  bounds->add_option("--K", bin.K, "Lipschitz constant");
  bounds->add_option("--xi", bin.xi, "Parameter-space diameter");
  bounds->add_option("--M", bin.M, "Payoff spread");
  bounds->add_option("--E", bin.expected_sup_deviation,
                     "Expected sup deviation");
  bounds->add_option("--q", bin.q_belief, "Common p-belief level");
  bounds->add_option("--n", b_n, "Dataset size");
  bounds->add_option("--eta", b_eta, "Prior-mean range (gaussian)");
  bounds->add_option("--alphabet", b_alphabet, "Signal alphabet size (sanov)");
  bounds->add_option("--dkl", b_dkl, "Minimal divergence (sanov)");
  bounds->add_option("--pi-lo", b_pi, "Lowest prior (zbar)");
  bounds->add_option("--q-lo", b_q, "Lowest accuracy (zbar)");
  bounds->add_option("--price", b_price, "Price (zbar)");
  bounds->add_option("--beta", b_beta, "Growth rate (gaussian)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed() || validate->parsed()) {
      confset::ExperimentConfig config = confset::LoadConfig(config_path);
      if (validate->parsed()) {
        std::cout << "ok: " << config.kind << ", "
                  << config.parameterizations.size() << " parameterization(s) x "
                  << config.n_grid.size() << " n value(s)\n";
        return 0;
      }
      if (seed) config.master_seed = *seed;
      if (!format.empty()) config.format = format;
      if (!out_path.empty()) config.out = out_path;
      const auto rows = confset::RunConfig(config, threads);
      for (const auto& r : rows) {
        if (r.mismatch_rate && *r.mismatch_rate > 0.0) {
          std::cerr << "warning: " << r.scenario << " n=" << r.n
                    << ": exact checker and solver disagree on "
                    << confset::FormatDouble(*r.mismatch_rate)
                    << " of replications\n";
        }
      }
      std::ostringstream text;
      if (config.format == "json") {
        confset::WriteJson(rows, text);
      } else {
        confset::WriteCsv(rows, text);
      }
      Emit(text.str(), config.out);
      return 0;
    }
    if (cf->parsed()) {
      confset::ClosedFormPair pair{};
      if (cf_scenario == "trade") {
        double upper;
        if (!cf_rlo.empty() || !cf_rhi.empty()) {
          upper = confset::TradePbarRect(cf_n, cf_rlo, cf_rhi);
        } else {
          upper = confset::TradePbarSymmetric(cf_n, cf_m, cf_a);
        }
        pair = {0.0, upper};
      } else {
        pair = confset::CoordClosedForm(cf_n, cf_beta, cf_sigma, cf_alpha);
      }
      std::cout << "p_lower,p_upper\n"
                << confset::FormatDouble(pair.p_lower) << ","
                << confset::FormatDouble(pair.p_upper) << "\n";
      return 0;
    }
    if (b_kind == "markov") {
      std::cout << BoundLine(confset::MarkovLowerBound(bin));
    } else if (b_kind == "shrink") {
      std::cout << BoundLine(confset::ShrinkLowerBound(
          bin.delta_inf, bin.K, bin.expected_sup_deviation));
    } else if (b_kind == "gaussian") {
      std::cout << BoundLine(confset::GaussianCorollaryBound(b_n, b_beta, b_eta));
    } else if (b_kind == "sanov") {
      std::cout << BoundLine(confset::SanovUpperBound(b_n, b_alphabet, b_dkl));
    } else if (b_kind == "sanov-trade") {
      const double r = confset::SanovTradeRate(b_n);
      const double nn = b_n;
      std::cout << "r_n\n" << confset::FormatDouble(r) << "\n"
                << BoundLine(confset::Clamp01((nn + 1) * (nn + 1) *
                                              std::exp2(-r * nn)));
    } else if (b_kind == "zbar") {
      const auto z = confset::ZbarThresholdOf(b_n, b_pi, b_q, b_price);
      std::cout << "zbar,feasible_mean\n" << confset::FormatDouble(z.zbar) << ","
                << confset::FormatDouble(z.feasible_mean) << "\n";
    } else {
      std::cout << BoundLine(confset::PbeliefLowerBound(bin));
    }
    return 0;
  } catch (const confset::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const confset::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const confset::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const confset::InconsistentDataError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const confset::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}
