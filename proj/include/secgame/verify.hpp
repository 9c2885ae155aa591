// Copyright 2026 The secgame Authors
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

#ifndef SECGAME_VERIFY_HPP_
#define SECGAME_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "secgame/compact.hpp"
#include "secgame/error.hpp"
#include "secgame/game.hpp"
#include "secgame/lp.hpp"
#include "secgame/oracles.hpp"
#include "secgame/solvers.hpp"

namespace secgame {

inline constexpr std::uint64_t kNormalFormCap = 10'000'000;

// Explicit payoff matrices, rows indexed by attacks, columns by defenses.
struct NormalForm {
  std::vector<SubsetMask> attacker_strategies;
  std::vector<SubsetMask> defender_strategies;
  std::vector<std::vector<double>> attacker_payoff;
  std::vector<std::vector<double>> defender_payoff;
};

inline NormalForm ExpandNormalForm(const GameInstance& game,
                                   std::uint64_t cap = kNormalFormCap) {
  NormalForm nf;
  nf.attacker_strategies = game.attacker_space.Enumerate();
  nf.defender_strategies = EnumerateSystem(game.defender);
  const double cells = static_cast<double>(nf.attacker_strategies.size()) *
                       static_cast<double>(nf.defender_strategies.size());
  if (cells > static_cast<double>(cap)) {
    throw Error("normal form has " + std::to_string(cells) +
                " cells, above the cap of " + std::to_string(cap));
  }
  const std::size_t na = nf.attacker_strategies.size();
  const std::size_t nd = nf.defender_strategies.size();
  nf.attacker_payoff.assign(na, std::vector<double>(nd));
  nf.defender_payoff.assign(na, std::vector<double>(nd));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nd; ++j) {
      const SubsetMask a = nf.attacker_strategies[i];
      const SubsetMask d = nf.defender_strategies[j];
      nf.attacker_payoff[i][j] =
          DirectPayoff(a, d, game.utilities, Player::kAttacker);
      nf.defender_payoff[i][j] =
          DirectPayoff(a, d, game.utilities, Player::kDefender);
    }
  }
  return nf;
}

struct MinimaxSolution {
  double value = 0.0;       // attacker's payoff at equilibrium
  double dual_value = 0.0;  // same value from the attacker's LP
  std::vector<double> attacker;
  std::vector<double> defender;
};

// Zero-sum equilibrium of the attacker payoff matrix: the defender
// minimizes, the attacker maximizes.
inline MinimaxSolution BruteMinimax(const NormalForm& nf) {
  const auto& M = nf.attacker_payoff;
  const std::size_t na = M.size();
  const std::size_t nd = na == 0 ? 0 : M[0].size();
  if (na == 0 || nd == 0) throw Error("empty normal form");
  MinimaxSolution out;
  {
    // min u s.t. sum_j q_j M[i][j] <= u, sum q = 1.
    LinearProgram lp;
    lp.sense = Sense::kMinimize;
    lp.objective.assign(nd + 1, 0.0);
    lp.objective[nd] = 1.0;
    lp.free_variables = {static_cast<int>(nd)};
    for (std::size_t i = 0; i < na; ++i) {
      std::vector<double> row(M[i]);
      row.push_back(-1.0);
      lp.Add(std::move(row), Relation::kLessEqual, 0.0);
    }
    std::vector<double> convex(nd + 1, 1.0);
    convex[nd] = 0.0;
    lp.Add(std::move(convex), Relation::kEqual, 1.0);
    const LpSolution sol = SolveLp(lp);
    if (!sol.optimal()) {
      throw Error(std::string("minimax LP failed: ") + ToString(sol.status));
    }
    out.value = sol.objective;
    out.defender.assign(sol.x.begin(), sol.x.begin() + nd);
  }
  {
    // max v s.t. sum_i p_i M[i][j] >= v, sum p = 1.
    LinearProgram lp;
    lp.sense = Sense::kMaximize;
    lp.objective.assign(na + 1, 0.0);
    lp.objective[na] = 1.0;
    lp.free_variables = {static_cast<int>(na)};
    for (std::size_t j = 0; j < nd; ++j) {
      std::vector<double> row(na + 1);
      for (std::size_t i = 0; i < na; ++i) row[i] = M[i][j];
      row[na] = -1.0;
      lp.Add(std::move(row), Relation::kGreaterEqual, 0.0);
    }
    std::vector<double> convex(na + 1, 1.0);
    convex[na] = 0.0;
    lp.Add(std::move(convex), Relation::kEqual, 1.0);
    const LpSolution sol = SolveLp(lp);
    if (!sol.optimal()) {
      throw Error(std::string("maximin LP failed: ") + ToString(sol.status));
    }
    out.dual_value = sol.objective;
    out.attacker.assign(sol.x.begin(), sol.x.begin() + na);
  }
  return out;
}

struct SseSolution {
  double defender_value = 0.0;
  MixedStrategy defender;
  SubsetMask attack;
};

// One LP per attack: make it a best response, maximize the defender's
// payoff there, keep the best (first attack on ties).
inline SseSolution BruteSse(const GameInstance& game) {
  const NormalForm nf = ExpandNormalForm(game);
  const auto& Ma = nf.attacker_payoff;
  const auto& Md = nf.defender_payoff;
  const std::size_t na = Ma.size();
  const std::size_t nd = nf.defender_strategies.size();
  SseSolution best;
  bool found = false;
  for (std::size_t i = 0; i < na; ++i) {
    LinearProgram lp;
    lp.sense = Sense::kMaximize;
    lp.objective = Md[i];
    for (std::size_t k = 0; k < na; ++k) {
      if (k == i) continue;
      std::vector<double> row(nd);
      for (std::size_t j = 0; j < nd; ++j) row[j] = Ma[i][j] - Ma[k][j];
      lp.Add(std::move(row), Relation::kGreaterEqual, 0.0);
    }
    lp.Add(std::vector<double>(nd, 1.0), Relation::kEqual, 1.0);
    const LpSolution sol = SolveLp(lp);
    if (sol.status == LpStatus::kInfeasible) continue;
    if (!sol.optimal()) {
      throw Error(std::string("SSE LP failed: ") + ToString(sol.status));
    }
    if (!found || sol.objective > best.defender_value + 1e-9) {
      found = true;
      best.defender_value = sol.objective;
      best.attack = nf.attacker_strategies[i];
      best.defender.clear();
      for (std::size_t j = 0; j < nd; ++j) {
        if (sol.x[j] > 1e-12) {
          best.defender.push_back({nf.defender_strategies[j], sol.x[j]});
        }
      }
    }
  }
  if (!found) throw Error("no attack is a best response to any strategy");
  return best;
}

struct VerificationCheck {
  std::string name;
  double violation = 0.0;
  bool passed = true;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const auto& c) { return c.passed; });
  }
  double max_violation() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.violation);
    return m;
  }
  void Add(std::string name, double violation, double eps) {
    checks.push_back({std::move(name), violation, violation <= eps});
  }
};

namespace detail {

inline double DistributionError(const MixedStrategy& dist) {
  double total = 0.0, negative = 0.0;
  for (const auto& [m, p] : dist) {
    total += p;
    negative = std::max(negative, -p);
  }
  return std::max(std::abs(total - 1.0), negative);
}

inline double InfeasibleMass(const MixedStrategy& q,
                             const GameInstance& game) {
  std::vector<SubsetMask> system;
  try {
    system = EnumerateSystem(game.defender);
  } catch (const Error&) {
    return 0.0;
  }
  std::sort(system.begin(), system.end(),
            [](SubsetMask a, SubsetMask b) { return a.bits() < b.bits(); });
  double mass = 0.0;
  for (const auto& [d, p] : q) {
    if (!std::binary_search(
            system.begin(), system.end(), d,
            [](SubsetMask a, SubsetMask b) { return a.bits() < b.bits(); })) {
      mass += p;
    }
  }
  return mass;
}

inline double InvalidAttackMass(const MixedStrategy& p,
                                const GameInstance& game) {
  double mass = 0.0;
  for (const auto& [a, prob] : p) {
    if (!game.attacker_space.Contains(a)) mass += prob;
  }
  return mass;
}

// Best defender payoff against p over all pure defenses: the linear DOP,
// cross-checked by enumeration when the system is small enough.
inline double BestDefenseValue(const MixedStrategy& p,
                               const GameInstance& game) {
  const CompactModel model = BuildCompactModel(game);
  const CompactAttackerPoint pbar = ProjectAttacker(p, model.support);
  const std::size_t m = model.support.size();
  std::vector<double> w(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    w[k] = pbar.p[k] * model.weights.defender_loss[k];
    w[m + k] = pbar.p[k] * model.weights.defender_benefit[k];
  }
  const OracleAnswer ans =
      DopLinear(game.defender, w, model.support, Sense::kMaximize);
  double best = detail::MixedValue(p, {{ans.strategy, 1.0}}, game.utilities,
                                   Player::kDefender);
  std::vector<SubsetMask> system;
  try {
    system = EnumerateSystem(game.defender, std::uint64_t{1} << 16);
  } catch (const Error&) {
    return best;
  }
  for (SubsetMask d : system) {
    best = std::max(best, detail::MixedValue(p, {{d, 1.0}}, game.utilities,
                                             Player::kDefender));
  }
  return best;
}

inline double BestAttackValue(const MixedStrategy& q,
                              const GameInstance& game) {
  return AttackerBestResponse(q, game).second;
}

}  // namespace detail

// Checks that neither player gains more than eps by a pure deviation.
inline VerificationReport CheckNe(const MixedStrategy& p,
                                  const MixedStrategy& q,
                                  const GameInstance& game, double eps) {
  VerificationReport report;
  report.Add("attacker_distribution", detail::DistributionError(p), 1e-9);
  report.Add("defender_distribution", detail::DistributionError(q), 1e-9);
  report.Add("attacker_feasibility", detail::InvalidAttackMass(p, game), 1e-9);
  report.Add("defender_feasibility", detail::InfeasibleMass(q, game), 1e-9);
  const double ua = detail::MixedValue(p, q, game.utilities, Player::kAttacker);
  const double ud = detail::MixedValue(p, q, game.utilities, Player::kDefender);
  report.Add("attacker_best_response",
             std::max(detail::BestAttackValue(q, game) - ua, 0.0), eps);
  report.Add("defender_best_response",
             std::max(detail::BestDefenseValue(p, game) - ud, 0.0), eps);
  return report;
}

// Checks that p best-responds to q and that no commitment beats q's induced
// defender value by more than eps.
inline VerificationReport CheckSse(const MixedStrategy& p,
                                   const MixedStrategy& q,
                                   const GameInstance& game, double eps) {
  VerificationReport report;
  report.Add("attacker_distribution", detail::DistributionError(p), 1e-9);
  report.Add("defender_distribution", detail::DistributionError(q), 1e-9);
  report.Add("attacker_feasibility", detail::InvalidAttackMass(p, game), 1e-9);
  report.Add("defender_feasibility", detail::InfeasibleMass(q, game), 1e-9);
  const double ua = detail::MixedValue(p, q, game.utilities, Player::kAttacker);
  const double ud = detail::MixedValue(p, q, game.utilities, Player::kDefender);
  report.Add("attacker_best_response",
             std::max(detail::BestAttackValue(q, game) - ua, 0.0), eps);
  const SseSolution sse = BruteSse(game);
  report.Add("stackelberg_value", std::max(sse.defender_value - ud, 0.0), eps);
  return report;
}

}  // namespace secgame

#endif  // SECGAME_VERIFY_HPP_
