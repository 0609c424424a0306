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

#ifndef CONFSET_SOLVER_H_
#define CONFSET_SOLVER_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "confset/measures.h"
#include "confset/rng.h"

namespace confset {

// A finite game whose payoffs depend on a parameter theta in a box.
class FiniteGame {
 public:
  // u_i(profile, theta). `profile` holds one action index per player. Must
  // be reentrant.
  using PayoffFn = std::function<double(int player, std::span<const int> profile,
                                        const ParameterPoint& theta)>;

  FiniteGame(std::vector<int> action_counts, PayoffFn payoff,
             double lipschitz_K, ParameterBox box,
             std::vector<std::vector<std::string>> action_names = {});

  int players() const { return static_cast<int>(action_counts_.size()); }
  int actions(int player) const { return action_counts_[player]; }
  double lipschitz_K() const { return lipschitz_K_; }
  const ParameterBox& box() const { return box_; }
  const std::string& action_name(int player, int action) const {
    return action_names_[player][action];
  }

  double Payoff(int player, std::span<const int> profile,
                const ParameterPoint& theta) const {
    return payoff_(player, profile, theta);
  }

  // Checks |u(a, theta) - u(a, theta')| <= K sup|theta - theta'| on `pairs`
  // uniformly drawn pairs of box points, over all players and profiles.
  bool SpotCheckLipschitz(RngStream& rng, int pairs = 64) const;

 private:
  std::vector<int> action_counts_;
  PayoffFn payoff_;
  double lipschitz_K_;
  ParameterBox box_;
  std::vector<std::vector<std::string>> action_names_;
};

// Per-player sorted lists of action indices.
using ActionSets = std::vector<std::vector<int>>;

ActionSets FullActionSets(const FiniteGame& game);

// How a certificate treats a margin equal to delta up to the 1e-9 LP
// tolerance: kLenient accepts it, kStrict rejects it.
enum class TieRule { kLenient, kStrict };

// Largest t such that some conjecture sigma(a_-i | theta), supported on the
// allowed opponent profiles, gives
//   sum_theta nu(theta) sum sigma (u_i(a_i, a_-i, theta) - u_i(b, a_-i, theta))
// >= t for every b != a_i. +infinity when player i has a single action.
// Throws InputError if some opponent's allowed set is empty.
double BestReplyMargin(const FiniteGame& game, int player, int action,
                       const Belief& nu, const ActionSets& allowed);

bool BestReplyCertificate(const FiniteGame& game, int player, int action,
                          const Belief& nu, const ActionSets& allowed,
                          double delta, TieRule tie = TieRule::kLenient);

// Sets after each elimination round, starting with the full sets.
struct EliminationTrace {
  std::vector<ActionSets> rounds;
};

// Greatest family with every action a best reply, for some belief in the
// set, to conjectures on the surviving opponent actions.
ActionSets WeakRationalizable(const FiniteGame& game, const BeliefSet& beliefs,
                              EliminationTrace* trace = nullptr);

enum class StrongStatus { kCertifiedStrong, kRefutedStrong, kIndeterminate };

const char* ToString(StrongStatus status);

// CertifiedStrong: in the greatest family in which every action has a strict
// certificate for every belief in the set. RefutedStrong: not weakly
// rationalizable under some singleton {nu}. Otherwise Indeterminate.
std::vector<std::vector<StrongStatus>> StrongRationalizable(
    const FiniteGame& game, const BeliefSet& beliefs);

struct RationalizabilityResult {
  ActionSets weak_sets;
  std::vector<std::vector<StrongStatus>> strong_status;

  bool Weak(int player, int action) const;
};

RationalizabilityResult SolveRationalizability(const FiniteGame& game,
                                               const BeliefSet& beliefs);

// Greatest family closed under delta-strict best replies against the single
// belief `limit` (lenient ties).
ActionSets DeltaStrictSets(const FiniteGame& game, const Belief& limit,
                           double delta, TieRule tie = TieRule::kLenient);

struct StrictnessMargin {
  double value = 0.0;
  double bracket_width = 0.0;
  bool not_rationalizable = false;
};

// max over atoms, players and profile pairs of |u - u'|.
double PayoffSpread(const FiniteGame& game, const Belief& belief);

// sup{delta : action in DeltaStrictSets(delta)} by bisection on
// [0, PayoffSpread], bracket below 1e-6. Zero (flagged) when the action is
// not rationalizable; zero unflagged when it survives only with ties.
StrictnessMargin DeltaInf(const FiniteGame& game, const Belief& limit,
                          int player, int action);

// Lockdown coordination game. Actions 0 = strong, 1 = weak; theta = beta.
//   (strong, strong) -1, -1     (strong, weak) -1 - beta, -beta
//   (weak, strong)   -beta, -1 - beta   (weak, weak) -beta, -beta
FiniteGame CoordinationGame(ParameterBox box);
inline constexpr int kStrong = 0;
inline constexpr int kWeak = 1;

// Entry-then-trade game with value theta = v. Player 0 (Seller): 0 = exit,
// 1 = enter. Player 1 (Buyer): 0 = buy, 1 = not buy. The Buyer's payoff is
// conditional on an offer: v - price from buying, 0 otherwise. The Seller
// gets v from exiting, price - cost from a sale and v - cost from entering
// without a sale.
FiniteGame TradeGame(ParameterBox box, double price, double cost);
inline constexpr int kSeller = 0;
inline constexpr int kBuyer = 1;
inline constexpr int kExit = 0;
inline constexpr int kEnter = 1;
inline constexpr int kBuy = 0;
inline constexpr int kNotBuy = 1;

}  // namespace confset

#endif  // CONFSET_SOLVER_H_
