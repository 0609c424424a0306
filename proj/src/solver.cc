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

#include "confset/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "confset/error.h"
#include "confset/lp.h"

namespace confset {
namespace {

constexpr double kLpTolerance = 1e-9;
constexpr double kDeltaBracket = 1e-7;

// All opponent profiles drawn from `allowed`, each stored as a full profile
// with the player's own slot left at 0.
std::vector<std::vector<int>> OpponentProfiles(const FiniteGame& game,
                                               int player,
                                               const ActionSets& allowed) {
  std::vector<std::vector<int>> out{std::vector<int>(game.players(), 0)};
  for (int j = 0; j < game.players(); ++j) {
    if (j == player) continue;
    std::vector<std::vector<int>> next;
    for (const auto& partial : out) {
      for (int a : allowed[j]) {
        next.push_back(partial);
        next.back()[j] = a;
      }
    }
    out = std::move(next);
  }
  return out;
}

bool HasEmptyOpponentSet(const ActionSets& sets, int player) {
  for (int j = 0; j < static_cast<int>(sets.size()); ++j) {
    if (j != player && sets[j].empty()) return true;
  }
  return false;
}

bool Contains(const std::vector<int>& set, int a) {
  return std::binary_search(set.begin(), set.end(), a);
}

// One round of deletion: keeps a in current[i] if `keep(i, a, current)`.
template <typename Keep>
ActionSets EliminateToFixedPoint(const FiniteGame& game, ActionSets current,
                                 Keep keep, EliminationTrace* trace) {
  if (trace != nullptr) trace->rounds.push_back(current);
  while (true) {
    ActionSets next(game.players());
    for (int i = 0; i < game.players(); ++i) {
      if (HasEmptyOpponentSet(current, i)) continue;
      for (int a : current[i]) {
        if (keep(i, a, current)) next[i].push_back(a);
      }
    }
    if (next == current) return current;
    current = std::move(next);
    if (trace != nullptr) trace->rounds.push_back(current);
  }
}

}  // namespace

FiniteGame::FiniteGame(std::vector<int> action_counts, PayoffFn payoff,
                       double lipschitz_K, ParameterBox box,
                       std::vector<std::vector<std::string>> action_names)
    : action_counts_(std::move(action_counts)),
      payoff_(std::move(payoff)),
      lipschitz_K_(lipschitz_K),
      box_(std::move(box)),
      action_names_(std::move(action_names)) {
  if (action_counts_.empty()) throw InputError("FiniteGame: no players");
  for (int c : action_counts_) {
    if (c < 1) throw InputError("FiniteGame: every player needs an action");
  }
  if (!payoff_) throw InputError("FiniteGame: missing payoff");
  if (!(lipschitz_K_ > 0.0)) {
    throw InputError("FiniteGame: Lipschitz constant must be positive");
  }
  if (action_names_.empty()) {
    for (int c : action_counts_) {
      std::vector<std::string> names;
      for (int a = 0; a < c; ++a) names.push_back(std::to_string(a));
      action_names_.push_back(std::move(names));
    }
  }
  if (action_names_.size() != action_counts_.size()) {
    throw InputError("FiniteGame: action names do not match players");
  }
  for (std::size_t i = 0; i < action_counts_.size(); ++i) {
    if (static_cast<int>(action_names_[i].size()) != action_counts_[i]) {
      throw InputError("FiniteGame: action names do not match actions");
    }
  }
}

bool FiniteGame::SpotCheckLipschitz(RngStream& rng, int pairs) const {
  const ActionSets full = FullActionSets(*this);
  for (int s = 0; s < pairs; ++s) {
    std::vector<double> x(box_.dim());
    std::vector<double> y(box_.dim());
    for (std::size_t k = 0; k < box_.dim(); ++k) {
      x[k] = rng.Uniform(box_.lower()[k], box_.upper()[k]);
      y[k] = rng.Uniform(box_.lower()[k], box_.upper()[k]);
    }
    const ParameterPoint px(x);
    const ParameterPoint py(y);
    const double bound = lipschitz_K_ * SupDistance(px, py) + 1e-9;
    for (int i = 0; i < players(); ++i) {
      for (auto profile : OpponentProfiles(*this, i, full)) {
        for (int a = 0; a < actions(i); ++a) {
          profile[i] = a;
          if (std::abs(Payoff(i, profile, px) - Payoff(i, profile, py)) >
              bound) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

ActionSets FullActionSets(const FiniteGame& game) {
  ActionSets sets(game.players());
  for (int i = 0; i < game.players(); ++i) {
    for (int a = 0; a < game.actions(i); ++a) sets[i].push_back(a);
  }
  return sets;
}

double BestReplyMargin(const FiniteGame& game, int player, int action,
                       const Belief& nu, const ActionSets& allowed) {
  if (static_cast<int>(allowed.size()) != game.players()) {
    throw InputError("best reply: allowed sets do not match players");
  }
  if (HasEmptyOpponentSet(allowed, player)) {
    throw InputError("best reply: empty allowed opponent set");
  }
  const int num_actions = game.actions(player);
  if (num_actions == 1) return std::numeric_limits<double>::infinity();

  const auto profiles = OpponentProfiles(game, player, allowed);
  const int np = static_cast<int>(profiles.size());
  const int na = static_cast<int>(nu.size());
  // Variables: nu(atom) sigma(profile | atom) for each atom, then t+ and t-.
  // Scaling by nu keeps the coefficients at payoff scale when some atom
  // carries very little mass.
  const int t_plus = na * np;
  LinearProgram lp(na * np + 2);
  lp.objective[t_plus] = 1.0;
  lp.objective[t_plus + 1] = -1.0;

  // gain[b][atom * np + k] = u(action) - u(b) at profile k.
  std::vector<std::vector<double>> gain(num_actions,
                                        std::vector<double>(na * np + 2, 0.0));
  for (int t = 0; t < na; ++t) {
    const Atom& atom = nu.atoms()[t];
    for (int k = 0; k < np; ++k) {
      std::vector<int> profile = profiles[k];
      profile[player] = action;
      const double own = game.Payoff(player, profile, atom.point);
      for (int b = 0; b < num_actions; ++b) {
        if (b == action) continue;
        profile[player] = b;
        gain[b][t * np + k] = own - game.Payoff(player, profile, atom.point);
      }
    }
  }
  for (int b = 0; b < num_actions; ++b) {
    if (b == action) continue;
    gain[b][t_plus] = -1.0;
    gain[b][t_plus + 1] = 1.0;
    lp.AddRow(std::move(gain[b]), LinearProgram::Sense::kGreaterEqual, 0.0);
  }
  for (int t = 0; t < na; ++t) {
    std::vector<double> simplex(na * np + 2, 0.0);
    for (int k = 0; k < np; ++k) simplex[t * np + k] = 1.0;
    lp.AddRow(std::move(simplex), LinearProgram::Sense::kEqual,
              nu.atoms()[t].weight);
  }
  const LpSolution sol = SolveLp(lp, kLpTolerance);
  if (sol.status != LpStatus::kOptimal) {
    throw DomainError("best reply: certificate LP did not reach an optimum");
  }
  return sol.objective;
}

bool BestReplyCertificate(const FiniteGame& game, int player, int action,
                          const Belief& nu, const ActionSets& allowed,
                          double delta, TieRule tie) {
  const double margin = BestReplyMargin(game, player, action, nu, allowed);
  return tie == TieRule::kLenient ? margin >= delta - kLpTolerance
                                  : margin >= delta + kLpTolerance;
}

ActionSets WeakRationalizable(const FiniteGame& game, const BeliefSet& beliefs,
                              EliminationTrace* trace) {
  return EliminateToFixedPoint(
      game, FullActionSets(game),
      [&](int i, int a, const ActionSets& current) {
        for (const Belief& nu : beliefs.members()) {
          if (BestReplyCertificate(game, i, a, nu, current, 0.0)) return true;
        }
        return false;
      },
      trace);
}

const char* ToString(StrongStatus status) {
  switch (status) {
    case StrongStatus::kCertifiedStrong:
      return "CertifiedStrong";
    case StrongStatus::kRefutedStrong:
      return "RefutedStrong";
    case StrongStatus::kIndeterminate:
      return "Indeterminate";
  }
  return "?";
}

std::vector<std::vector<StrongStatus>> StrongRationalizable(
    const FiniteGame& game, const BeliefSet& beliefs) {
  const ActionSets certified = EliminateToFixedPoint(
      game, FullActionSets(game),
      [&](int i, int a, const ActionSets& current) {
        for (const Belief& nu : beliefs.members()) {
          if (!BestReplyCertificate(game, i, a, nu, current, 0.0,
                                    TieRule::kStrict)) {
            return false;
          }
        }
        return true;
      },
      nullptr);

  std::vector<std::vector<StrongStatus>> status(game.players());
  for (int i = 0; i < game.players(); ++i) {
    status[i].assign(game.actions(i), StrongStatus::kIndeterminate);
    for (int a : certified[i]) status[i][a] = StrongStatus::kCertifiedStrong;
  }
  for (const Belief& nu : beliefs.members()) {
    const ActionSets single = WeakRationalizable(game, BeliefSet({nu}));
    for (int i = 0; i < game.players(); ++i) {
      for (int a = 0; a < game.actions(i); ++a) {
        if (status[i][a] == StrongStatus::kIndeterminate &&
            !Contains(single[i], a)) {
          status[i][a] = StrongStatus::kRefutedStrong;
        }
      }
    }
  }
  return status;
}

bool RationalizabilityResult::Weak(int player, int action) const {
  return Contains(weak_sets[player], action);
}

RationalizabilityResult SolveRationalizability(const FiniteGame& game,
                                               const BeliefSet& beliefs) {
  return {WeakRationalizable(game, beliefs),
          StrongRationalizable(game, beliefs)};
}

ActionSets DeltaStrictSets(const FiniteGame& game, const Belief& limit,
                           double delta, TieRule tie) {
  if (!(delta >= 0.0)) throw InputError("delta_strict_sets: delta must be >= 0");
  return EliminateToFixedPoint(
      game, FullActionSets(game),
      [&](int i, int a, const ActionSets& current) {
        return BestReplyCertificate(game, i, a, limit, current, delta, tie);
      },
      nullptr);
}

double PayoffSpread(const FiniteGame& game, const Belief& belief) {
  const ActionSets full = FullActionSets(game);
  double spread = 0.0;
  for (const Atom& atom : belief.atoms()) {
    for (int i = 0; i < game.players(); ++i) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (auto profile : OpponentProfiles(game, i, full)) {
        for (int a = 0; a < game.actions(i); ++a) {
          profile[i] = a;
          const double u = game.Payoff(i, profile, atom.point);
          lo = std::min(lo, u);
          hi = std::max(hi, u);
        }
      }
      spread = std::max(spread, hi - lo);
    }
  }
  return spread;
}

StrictnessMargin DeltaInf(const FiniteGame& game, const Belief& limit,
                          int player, int action) {
  StrictnessMargin out;
  if (!Contains(DeltaStrictSets(game, limit, 0.0)[player], action)) {
    out.not_rationalizable = true;
    return out;
  }
  if (!Contains(DeltaStrictSets(game, limit, 0.0, TieRule::kStrict)[player],
                action)) {
    return out;
  }
  double lo = 0.0;
  double hi = PayoffSpread(game, limit);
  if (game.actions(player) == 1 ||
      Contains(DeltaStrictSets(game, limit, hi)[player], action)) {
    out.value = hi;
    return out;
  }
  while (hi - lo > kDeltaBracket) {
    const double mid = 0.5 * (lo + hi);
    if (Contains(DeltaStrictSets(game, limit, mid)[player], action)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.value = lo;
  out.bracket_width = hi - lo;
  return out;
}

FiniteGame CoordinationGame(ParameterBox box) {
  if (box.dim() != 1) throw InputError("CoordinationGame: theta is scalar");
  auto payoff = [](int player, std::span<const int> profile,
                   const ParameterPoint& theta) {
    const double beta = theta[0];
    const int own = profile[player];
    const int other = profile[1 - player];
    if (own == kWeak) return -beta;
    return other == kStrong ? -1.0 : -1.0 - beta;
  };
  return FiniteGame({2, 2}, payoff, 1.0, std::move(box),
                    {{"strong", "weak"}, {"strong", "weak"}});
}

FiniteGame TradeGame(ParameterBox box, double price, double cost) {
  if (box.dim() != 1) throw InputError("TradeGame: theta is scalar");
  if (!(0.0 < cost && cost < price)) {
    throw InputError("TradeGame: need 0 < cost < price");
  }
  auto payoff = [price, cost](int player, std::span<const int> profile,
                              const ParameterPoint& theta) {
    const double v = theta[0];
    if (player == kBuyer) return profile[kBuyer] == kBuy ? v - price : 0.0;
    if (profile[kSeller] == kExit) return v;
    return profile[kBuyer] == kBuy ? price - cost : v - cost;
  };
  return FiniteGame({2, 2}, payoff, 1.0, std::move(box),
                    {{"exit", "enter"}, {"buy", "not_buy"}});
}

}  // namespace confset
