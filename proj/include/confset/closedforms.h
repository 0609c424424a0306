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

#ifndef CONFSET_CLOSEDFORMS_H_
#define CONFSET_CLOSEDFORMS_H_

#include <span>
#include <vector>

#include "confset/measures.h"
#include "confset/solver.h"

namespace confset {

struct ClosedFormPair {
  double p_lower;
  double p_upper;
};

// A bound before and after clamping to [0, 1]; `clamped` is set whenever
// `raw` left the interval.
struct BoundResult {
  double raw = 0.0;
  double value = 0.0;
  bool clamped = false;
};

BoundResult Clamp01(double raw);

// 1 - prod_k (1 - 2^-n [(2 - rlo_k)^n + (2 - rhi_k)^n - (2 - rlo_k - rhi_k)^n]).
double TradePbarRect(int n, std::span<const double> rlo,
                     std::span<const double> rhi);

// 1 - [1 - (2 ((2 - a) / 2)^n - (1 - a)^n)]^m.
double TradePbarSymmetric(int n, int m, double a);

// With d = ((beta - 1) / sigma) sqrt((n^2 - 1) / 12) and z = -PhiInv(alpha/2):
// p_lower = 1 - Phi(z - d), p_upper = 1 - Phi(-z - d).
ClosedFormPair CoordClosedForm(int n, double beta, double sigma, double alpha);

struct BoundInputs {
  double delta_inf = 1.0;
  double K = 1.0;
  double xi = 1.0;
  // Payoff spread.
  double M = 1.0;
  double expected_sup_deviation = 0.0;
  double q_belief = 1.0;
};

// 1 - (2 K xi / delta_inf) E.
BoundResult MarkovLowerBound(const BoundInputs& in);

// 1 - (2 K / delta_inf) E, E the expected sup parameter deviation.
BoundResult ShrinkLowerBound(double delta_inf, double K,
                             double expected_sup_param_deviation);

// 1 - (sqrt(2 / (pi n)) + (beta + eta) / (n + 1)) / (beta - 1). beta > 1.
BoundResult GaussianCorollaryBound(int n, double beta, double eta);

// sum_z qhat(z) log2(qhat(z) / q(z)), 0 log 0 = 0. +inf when qhat puts mass
// where q has none. Both arguments must be probability vectors of equal
// length.
double KlDivergence(std::span<const double> qhat, std::span<const double> q);

// (n + 1)^alphabet_size 2^(-n dkl_star).
BoundResult SanovUpperBound(int n, int alphabet_size, double dkl_star);

struct ZbarThreshold {
  // 1/2 (1 + (1/n) log_{(1-q)/q}(pi/(1-pi) (1-p)/p)).
  double zbar;
  // Largest count-compatible empirical mean strictly below zbar, which is
  // floor(n zbar) / n unless n zbar is an integer.
  double feasible_mean;
};

ZbarThreshold ZbarThresholdOf(int n, double pi_lo, double q_lo, double price);

// min D((m, 1-m) || (q*, 1-q*)) over count-compatible means m below zbar.
// This is attained at feasible_mean whenever zbar <= q*; +inf when no mean
// is feasible.
double SanovPipelineRate(int n, double pi_lo, double q_lo, double price,
                         double q_star);

// The closed-form rate for the truncated example, transcribed as printed,
// logs base 2:
// (3/4)(log 3n - log floor(n/2 + log 9/log 2))
//   + (1/4)(log n - log floor(n/2 - log 9/log 2)).
// Throws DomainError when a floor argument is not positive.
double SanovTradeRate(int n);

// 1 - (2 M xi q / (delta_inf q - (1 - q) M)) E. Requires
// q > M / (delta_inf + M).
BoundResult PbeliefLowerBound(const BoundInputs& in);

// max over players, profile pairs and support-point pairs of
// |u_j(a, theta) - u_j(a', theta')|.
double PayoffSpread(const FiniteGame& game,
                    std::span<const ParameterPoint> support);

}  // namespace confset

#endif  // CONFSET_CLOSEDFORMS_H_
