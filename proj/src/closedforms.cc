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

#include "confset/closedforms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "confset/error.h"
#include "confset/normal.h"

namespace confset {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

bool Open01(double x) { return x > 0.0 && x < 1.0; }

// 2^-n (2 - r)^n = (1 - r/2)^n, computed without overflow.
double HalfPow(double r, int n) { return std::pow(1.0 - 0.5 * r, n); }

}  // namespace

BoundResult Clamp01(double raw) {
  BoundResult b;
  b.raw = raw;
  b.value = std::clamp(raw, 0.0, 1.0);
  b.clamped = !(raw >= 0.0 && raw <= 1.0);
  return b;
}

double TradePbarRect(int n, std::span<const double> rlo,
                     std::span<const double> rhi) {
  Require(n >= 1, "trade_pbar_rect: n must be >= 1");
  Require(!rlo.empty() && rlo.size() == rhi.size(),
          "trade_pbar_rect: rlo and rhi must be nonempty and of equal length");
  double all_sides = 1.0;
  for (std::size_t k = 0; k < rlo.size(); ++k) {
    Require(Open01(rlo[k]) && Open01(rhi[k]),
            "trade_pbar_rect: rectangle bounds must lie in (0, 1)");
    const double miss = HalfPow(rlo[k], n) + HalfPow(rhi[k], n) -
                        HalfPow(rlo[k] + rhi[k], n);
    all_sides *= 1.0 - miss;
  }
  return std::clamp(1.0 - all_sides, 0.0, 1.0);
}

double TradePbarSymmetric(int n, int m, double a) {
  Require(n >= 1 && m >= 1, "trade_pbar_symmetric: n and m must be >= 1");
  Require(Open01(a), "trade_pbar_symmetric: a must lie in (0, 1)");
  const double miss = 2.0 * std::pow((2.0 - a) / 2.0, n) - std::pow(1.0 - a, n);
  return std::clamp(1.0 - std::pow(1.0 - miss, m), 0.0, 1.0);
}

ClosedFormPair CoordClosedForm(int n, double beta, double sigma, double alpha) {
  Require(n >= 2, "coord_closed_form: n must be >= 2");
  Require(sigma > 0.0, "coord_closed_form: sigma must be positive");
  Require(Open01(alpha), "coord_closed_form: alpha must lie in (0, 1)");
  const double z = -NormalQuantile(alpha / 2.0);
  const double nn = static_cast<double>(n);
  const double d = (beta - 1.0) / sigma * std::sqrt((nn * nn - 1.0) / 12.0);
  return {1.0 - NormalCdf(z - d), 1.0 - NormalCdf(-z - d)};
}

BoundResult MarkovLowerBound(const BoundInputs& in) {
  Require(in.delta_inf > 0.0, "markov_lower_bound: delta_inf must be positive");
  return Clamp01(1.0 - 2.0 * in.K * in.xi / in.delta_inf *
                           in.expected_sup_deviation);
}

BoundResult ShrinkLowerBound(double delta_inf, double K,
                             double expected_sup_param_deviation) {
  Require(delta_inf > 0.0, "shrink_lower_bound: delta_inf must be positive");
  return Clamp01(1.0 - 2.0 * K / delta_inf * expected_sup_param_deviation);
}

BoundResult GaussianCorollaryBound(int n, double beta, double eta) {
  Require(n >= 1, "gaussian_corollary_bound: n must be >= 1");
  Require(beta > 1.0, "gaussian_corollary_bound: beta must exceed 1");
  Require(eta >= 0.0, "gaussian_corollary_bound: eta must be nonnegative");
  const double nn = static_cast<double>(n);
  const double e = std::sqrt(2.0 / (std::numbers::pi * nn)) +
                   (beta + eta) / (nn + 1.0);
  return Clamp01(1.0 - e / (beta - 1.0));
}

double KlDivergence(std::span<const double> qhat, std::span<const double> q) {
  Require(!q.empty() && qhat.size() == q.size(),
          "kl_divergence: measures must be nonempty and of equal length");
  auto check = [](std::span<const double> p) {
    double s = 0.0;
    for (double x : p) {
      Require(x >= 0.0, "kl_divergence: negative probability");
      s += x;
    }
    Require(std::abs(s - 1.0) < 1e-9, "kl_divergence: mass must sum to 1");
  };
  check(qhat);
  check(q);
  double d = 0.0;
  for (std::size_t z = 0; z < q.size(); ++z) {
    if (qhat[z] == 0.0) continue;
    if (q[z] == 0.0) return std::numeric_limits<double>::infinity();
    d += qhat[z] * std::log2(qhat[z] / q[z]);
  }
  return std::max(d, 0.0);
}

BoundResult SanovUpperBound(int n, int alphabet_size, double dkl_star) {
  Require(n >= 1, "sanov_upper_bound: n must be >= 1");
  Require(alphabet_size >= 1, "sanov_upper_bound: alphabet must be nonempty");
  Require(dkl_star >= 0.0, "sanov_upper_bound: divergence must be >= 0");
  const double log2_raw = alphabet_size * std::log2(n + 1.0) - n * dkl_star;
  return Clamp01(std::exp2(log2_raw));
}

ZbarThreshold ZbarThresholdOf(int n, double pi_lo, double q_lo, double price) {
  Require(n >= 1, "zbar_threshold: n must be >= 1");
  Require(Open01(pi_lo), "zbar_threshold: pi_lo must lie in (0, 1)");
  Require(q_lo > 0.5 && q_lo < 1.0, "zbar_threshold: q_lo must lie in (1/2, 1)");
  Require(Open01(price), "zbar_threshold: price must lie in (0, 1)");
  const double ratio = pi_lo / (1.0 - pi_lo) * (1.0 - price) / price;
  const double log_base = std::log((1.0 - q_lo) / q_lo);
  const double zbar = 0.5 * (1.0 + std::log(ratio) / log_base / n);
  // The event is zbar_n < zbar*, so an integer n zbar* is itself excluded.
  return {zbar, (std::ceil(zbar * n) - 1.0) / n};
}

double SanovPipelineRate(int n, double pi_lo, double q_lo, double price,
                         double q_star) {
  Require(Open01(q_star), "sanov_pipeline_rate: q_star must lie in (0, 1)");
  const double top =
      std::min(ZbarThresholdOf(n, pi_lo, q_lo, price).feasible_mean * n,
               static_cast<double>(n));
  if (top < 0.0) return std::numeric_limits<double>::infinity();
  const double q[] = {q_star, 1.0 - q_star};
  double best = std::numeric_limits<double>::infinity();
  // Divergence is convex in the mean, minimized at q*.
  for (double k : {std::floor(n * q_star), std::ceil(n * q_star)}) {
    const double m = std::min(k, top) / n;
    const double qhat[] = {m, 1.0 - m};
    best = std::min(best, KlDivergence(qhat, q));
  }
  return best;
}

double SanovTradeRate(int n) {
  const double nn = static_cast<double>(n);
  const double shift = std::log(9.0) / std::log(2.0);
  const double hi = std::floor(nn / 2.0 + shift);
  const double lo = std::floor(nn / 2.0 - shift);
  if (n < 1 || hi <= 0.0 || lo <= 0.0) {
    throw DomainError("sanov_trade_rate: nonpositive floor argument at n = " +
                      std::to_string(n));
  }
  return 0.75 * (std::log2(3.0 * nn) - std::log2(hi)) +
         0.25 * (std::log2(nn) - std::log2(lo));
}

BoundResult PbeliefLowerBound(const BoundInputs& in) {
  Require(in.delta_inf > 0.0, "pbelief_lower_bound: delta_inf must be positive");
  Require(in.M > 0.0, "pbelief_lower_bound: M must be positive");
  Require(in.q_belief > 0.0 && in.q_belief <= 1.0,
          "pbelief_lower_bound: q must lie in (0, 1]");
  const double q = in.q_belief;
  const double denom = in.delta_inf * q - (1.0 - q) * in.M;
  if (!(q > in.M / (in.delta_inf + in.M)) || denom <= 0.0) {
    throw DomainError("pbelief_lower_bound: q must exceed M / (delta_inf + M)");
  }
  return Clamp01(1.0 - 2.0 * in.M * in.xi * q / denom *
                           in.expected_sup_deviation);
}

double PayoffSpread(const FiniteGame& game,
                    std::span<const ParameterPoint> support) {
  Require(!support.empty(), "payoff_spread: support must be nonempty");
  double spread = 0.0;
  const int players = game.players();
  std::vector<int> profile(players, 0);
  for (int i = 0; i < players; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::fill(profile.begin(), profile.end(), 0);
    while (true) {
      for (const ParameterPoint& theta : support) {
        const double u = game.Payoff(i, profile, theta);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
      }
      int j = 0;
      while (j < players && ++profile[j] == game.actions(j)) profile[j++] = 0;
      if (j == players) break;
    }
    spread = std::max(spread, hi - lo);
  }
  return spread;
}

}  // namespace confset
