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

#ifndef SECGAME_SOLVERS_HPP_
#define SECGAME_SOLVERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "secgame/compact.hpp"
#include "secgame/error.hpp"
#include "secgame/game.hpp"
#include "secgame/lp.hpp"
#include "secgame/lpengine.hpp"
#include "secgame/model.hpp"
#include "secgame/oracles.hpp"

namespace secgame {

enum class Concept { kNash, kStackelberg };

inline const char* ToString(Concept c) {
  return c == Concept::kNash ? "ne" : "sse";
}

struct Diagnostics {
  int iterations = 0;
  std::string backend;
  std::size_t support_size = 0;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
};

struct EquilibriumResult {
  Concept solution_concept = Concept::kNash;
  MixedStrategy defender_mixed;
  MixedStrategy attacker_mixed;
  // Per-target attack probabilities (filled by the additive solver).
  std::vector<double> attacker_marginals;
  double defender_value = 0.0;
  double attacker_value = 0.0;
  std::vector<double> coverage;
  Diagnostics diagnostics;
};

// Per-target ratio of the defender's to the attacker's benefit-loss gap.
struct SaddleTransform {
  std::vector<double> scale;
};

enum class Direction { kForward, kInverse };

inline SaddleTransform MakeSaddleTransform(const UtilityProfile& profile,
                                           int n) {
  SaddleTransform h;
  h.scale.resize(n);
  for (int i = 0; i < n; ++i) {
    const SubsetMask s = SubsetMask::Singleton(i);
    const double gap_a = profile.benefit_attacker(s) - profile.loss_attacker(s);
    const double gap_d = profile.benefit_defender(s) - profile.loss_defender(s);
    if (!(gap_a > 0.0) || !(gap_d > 0.0)) {
      throw Error("saddle transform undefined at target " + std::to_string(i) +
                  ": benefit must exceed loss");
    }
    h.scale[i] = gap_d / gap_a;
    if (!std::isfinite(h.scale[i])) {
      throw Error("saddle transform is not finite at target " +
                  std::to_string(i));
    }
  }
  return h;
}

inline std::vector<double> ApplyH(const std::vector<double>& a,
                                  const SaddleTransform& h,
                                  Direction direction) {
  if (a.size() != h.scale.size()) throw Error("apply_h dimension mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = direction == Direction::kForward ? a[i] * h.scale[i]
                                              : a[i] / h.scale[i];
  }
  return out;
}

// Expected payoff of a pure attack against a defender mixed strategy.
inline double AttackValue(SubsetMask attack, const MixedStrategy& q,
                          const UtilityProfile& profile, Player player) {
  double v = 0.0;
  for (const auto& [d, prob] : q) {
    v += prob * DirectPayoff(attack, d, profile, player);
  }
  return v;
}

// Best pure attack against q over the attacker space; ties go to the first
// attack in canonical order.
inline std::pair<SubsetMask, double> AttackerBestResponse(
    const MixedStrategy& q, const GameInstance& game) {
  SubsetMask best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (SubsetMask a : game.attacker_space.Enumerate()) {
    const double v = AttackValue(a, q, game.utilities, Player::kAttacker);
    if (v > best_value + 1e-12) {
      best = a;
      best_value = v;
    }
  }
  return {best, best_value};
}

// Additive games: best attack given the coverage vector t, picking up to c
// targets with the largest positive expected payoff (lower index on ties).
inline std::pair<SubsetMask, double> AttackerBestResponseAdditive(
    const std::vector<double>& t, const GameInstance& game) {
  const int n = game.n();
  std::vector<double> value(n);
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    const SubsetMask s = SubsetMask::Singleton(i);
    value[i] = t.at(i) * game.utilities.loss_attacker(s) +
               (1.0 - t[i]) * game.utilities.benefit_attacker(s);
    if (value[i] > 1e-12) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return value[a] > value[b] + 1e-12; });
  if (static_cast<int>(order.size()) > game.budget()) {
    order.resize(game.budget());
  }
  SubsetMask best;
  double total = 0.0;
  for (int i : order) {
    best = best | SubsetMask::Singleton(i);
    total += value[i];
  }
  return {best, total};
}

namespace detail {

inline MixedStrategy MergeStrategies(
    const std::vector<std::pair<SubsetMask, double>>& weighted) {
  std::map<SubsetMask, double, CanonicalLess> merged;
  for (const auto& [m, p] : weighted) merged[m] += p;
  MixedStrategy out;
  double total = 0.0;
  for (const auto& [m, p] : merged) {
    if (p > 0.0) {
      out.push_back({m, p});
      total += p;
    }
  }
  for (auto& ws : out) ws.prob /= total;
  return out;
}

// Maps vertices to pure strategies, keeping at most 2|S|+1 of them.
inline MixedStrategy DefenderStrategyFrom(
    std::vector<double> lambda, std::vector<DefenderVertex> vertices,
    const DefenderOracleSpec& spec, const SupportSet& support,
    const SolverConfig& cfg, Diagnostics& diag) {
  if (vertices.size() > 2 * support.size() + 1) {
    std::vector<double> point(support.size() * 2, 0.0);
    const std::size_t m = support.size();
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        point[k] += lambda[j] * vertices[j].v1[k];
        point[m + k] += lambda[j] * vertices[j].v2[k];
      }
    }
    auto [l2, v2] = ConvexDecompose(point, spec, support, cfg, vertices);
    lambda = std::move(l2);
    vertices = std::move(v2);
    diag.notes.push_back("defender mixture re-decomposed");
  }
  std::vector<std::pair<SubsetMask, double>> weighted;
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    weighted.emplace_back(VertexToStrategy(vertices[j], support.n(), support),
                          lambda[j]);
  }
  return MergeStrategies(weighted);
}

inline double MixedValue(const MixedStrategy& p, const MixedStrategy& q,
                         const UtilityProfile& profile, Player player) {
  double v = 0.0;
  for (const auto& [a, pa] : p) v += pa * AttackValue(a, q, profile, player);
  return v;
}

}  // namespace detail

inline EquilibriumResult SolveZeroSum(const GameInstance& game,
                                      const SolverConfig& cfg = {}) {
  if (!game.utilities.zero_sum) {
    throw Error(
        "solve_zero_sum needs a zero-sum game; use the Stackelberg solver or "
        "the additive Nash solver instead");
  }
  game.Validate();
  const CompactModel model = BuildCompactModel(game);
  const CompactLpSolution lp = SolveCompactLp(
      model.weights, game.defender, model.support, game.attacker_space, cfg);
  EquilibriumResult r;
  r.solution_concept = Concept::kNash;
  r.diagnostics.backend = ToString(lp.backend);
  r.diagnostics.iterations = lp.iterations;
  r.diagnostics.support_size = model.support.size();
  r.defender_mixed =
      detail::DefenderStrategyFrom(lp.master.lambda, lp.master.vertices,
                                   game.defender, model.support, cfg,
                                   r.diagnostics);
  r.attacker_mixed = lp.attacker;
  r.attacker_value = lp.u;
  r.defender_value = -lp.u;
  r.coverage = CoverageMarginals(r.defender_mixed, game.n());
  r.diagnostics.metrics["compact_value"] = lp.u;
  r.diagnostics.metrics["u0_bound"] = U0Bound(model.weights, model.support);
  return r;
}

namespace detail {

// Column cache for the Stackelberg LPs: payoff of every attack against
// each pooled defender vertex, for both players.
struct SseColumns {
  VertexPool pool;
  std::vector<std::vector<double>> attacker;
  std::vector<std::vector<double>> defender;

  void Add(const DefenderVertex& v, const std::vector<AttackRow>& rows,
           const CompactWeights& w) {
    if (!pool.Add(v)) return;
    const auto ga = CoordinatePayoff(w, Player::kAttacker, v.v1, v.v2);
    const auto gd = CoordinatePayoff(w, Player::kDefender, v.v1, v.v2);
    std::vector<double> ca(rows.size()), cd(rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      ca[a] = RowValue(rows[a], ga);
      cd[a] = RowValue(rows[a], gd);
    }
    attacker.push_back(std::move(ca));
    defender.push_back(std::move(cd));
  }
};

struct SseLpOutcome {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> lambda;
};

// Pricing weights for attack `target`: the defender's own payoff at the
// target (scaled by `own`) minus sum_{A'} y_{A'} (U_a(target) - U_a(A')).
inline std::vector<double> SsePricing(const std::vector<AttackRow>& rows,
                                      std::size_t target,
                                      const std::vector<double>& y,
                                      double own, const CompactWeights& w) {
  const std::size_t m = w.size();
  std::vector<double> coef(m, 0.0);  // multiplies the attacker coordinates
  std::vector<char> in_target(m, 0);
  for (std::size_t k : rows[target].positions) in_target[k] = 1;
  double y_total = 0.0;
  for (std::size_t a = 0, r = 0; a < rows.size(); ++a) {
    if (a == target) continue;
    const double ya = y[r++];
    if (ya == 0.0) continue;
    y_total += ya;
    for (std::size_t k : rows[a].positions) coef[k] += ya;
  }
  std::vector<double> weights(2 * m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double c = (in_target[k] ? y_total : 0.0) - coef[k];
    weights[k] = (in_target[k] ? own * w.defender_loss[k] : 0.0) -
                 c * w.attacker_benefit[k];
    weights[m + k] = (in_target[k] ? own * w.defender_benefit[k] : 0.0) -
                     c * w.attacker_loss[k];
  }
  return weights;
}

// One Stackelberg sub-problem: make `target` a best response and maximize
// the defender's payoff, generating columns as needed.
inline SseLpOutcome SolveSseForAttack(std::size_t target,
                                      const std::vector<AttackRow>& rows,
                                      const CompactWeights& w,
                                      const DefenderOracleSpec& spec,
                                      const SupportSet& support,
                                      const SolverConfig& cfg,
                                      SseColumns& cols, int& iterations) {
  const std::size_t na = rows.size();
  const int cap = ColumnGenerationLimit(cfg);
  auto constraint_rows = [&](LinearProgram& lp, std::size_t extra,
                             double rhs) {
    const std::size_t nv = cols.pool.size();
    std::size_t slack = 0;
    for (std::size_t a = 0; a < na; ++a) {
      if (a == target) continue;
      std::vector<double> row(nv + extra, 0.0);
      for (std::size_t j = 0; j < nv; ++j) {
        row[j] = cols.attacker[j][target] - cols.attacker[j][a];
      }
      if (extra > 0) row[nv + slack++] = 1.0;
      lp.Add(std::move(row), Relation::kGreaterEqual, rhs);
    }
    std::vector<double> convex(nv + extra, 0.0);
    std::fill(convex.begin(), convex.begin() + nv, 1.0);
    lp.Add(std::move(convex), Relation::kEqual, 1.0);
  };
  auto price = [&](const LpSolution& sol, double own, double sign,
                   double threshold) -> bool {
    std::vector<double> y(sol.duals.begin(), sol.duals.end() - 1);
    for (double& v : y) v *= sign;
    std::vector<double> weights = SsePricing(rows, target, y, own, w);
    OracleAnswer ans = DopLinear(spec, weights, support, Sense::kMaximize);
    if (ans.objective_value - threshold <= cfg.opt_tol * 1e-3) return false;
    if (cols.pool.Contains(ans.strategy)) {
      Perturb(weights, 1e-12);
      ans = DopLinear(spec, weights, support, Sense::kMaximize);
      if (cols.pool.Contains(ans.strategy)) return false;
    }
    cols.Add(ans.vertex, rows, w);
    return true;
  };

  // Phase 1: minimize the total best-response shortfall.
  for (int iter = 0;; ++iter) {
    const std::size_t nv = cols.pool.size();
    LinearProgram lp;
    lp.sense = Sense::kMinimize;
    lp.objective.assign(nv + na - 1, 0.0);
    std::fill(lp.objective.begin() + nv, lp.objective.end(), 1.0);
    constraint_rows(lp, na - 1, 0.0);
    const LpSolution sol = SolveLp(lp);
    ++iterations;
    if (!sol.optimal()) {
      throw Error(std::string("SSE phase 1 failed: ") + ToString(sol.status));
    }
    if (sol.objective <= 1e-12) break;
    // Min problem: a column helps when sum y a_j + sigma > 0.
    if (!price(sol, 0.0, -1.0, -sol.duals.back())) {
      if (sol.objective > cfg.feas_tol) return {};
      break;
    }
    if (iter >= cap) {
      throw IterationLimitError("SSE phase 1 iteration cap reached",
                                sol.objective);
    }
  }

  // Phase 2: maximize the defender's payoff at the target attack.
  for (double rhs : {0.0, -cfg.feas_tol}) {
    for (int iter = 0;; ++iter) {
      const std::size_t nv = cols.pool.size();
      LinearProgram lp;
      lp.sense = Sense::kMaximize;
      lp.objective.assign(nv, 0.0);
      for (std::size_t j = 0; j < nv; ++j) {
        lp.objective[j] = cols.defender[j][target];
      }
      constraint_rows(lp, 0, rhs);
      const LpSolution sol = SolveLp(lp);
      ++iterations;
      if (sol.status == LpStatus::kInfeasible) break;
      if (!sol.optimal()) {
        throw Error(std::string("SSE phase 2 failed: ") +
                    ToString(sol.status));
      }
      // Max problem: a column helps when c_j - sum y a_j - sigma > 0.
      if (!price(sol, 1.0, 1.0, sol.duals.back())) {
        SseLpOutcome out;
        out.feasible = true;
        out.value = sol.objective;
        out.lambda = sol.x;
        return out;
      }
      if (iter >= cap) {
        throw IterationLimitError("SSE phase 2 iteration cap reached",
                                  sol.objective);
      }
    }
  }
  return {};
}

}  // namespace detail

inline EquilibriumResult SolveSse(const GameInstance& game,
                                  const SolverConfig& cfg = {}) {
  game.Validate();
  cfg.Validate();
  const CompactModel model = BuildCompactModel(game);
  const std::vector<SubsetMask> attacks = game.attacker_space.Enumerate();
  const auto rows = detail::AttackRows(attacks, model.support);
  detail::SseColumns cols;
  {
    std::vector<double> point(2 * model.support.size(), 0.5);
    cols.Add(DopLinear(game.defender, point, model.support, Sense::kMaximize)
                 .vertex,
             rows, model.weights);
  }
  int iterations = 0;
  int skipped = 0;
  std::size_t best_attack = attacks.size();
  detail::SseLpOutcome best;
  std::vector<DefenderVertex> best_vertices;
  for (std::size_t a = 0; a < attacks.size(); ++a) {
    detail::SseLpOutcome out = detail::SolveSseForAttack(
        a, rows, model.weights, game.defender, model.support, cfg, cols,
        iterations);
    if (!out.feasible) {
      ++skipped;
      continue;
    }
    if (best_attack == attacks.size() || out.value > best.value + 1e-9) {
      best_attack = a;
      best = std::move(out);
      best_vertices = cols.pool.vertices();
    }
  }
  if (best_attack == attacks.size()) {
    throw Error("internal error: no attack is a best response to any strategy");
  }
  EquilibriumResult r;
  r.solution_concept = Concept::kStackelberg;
  r.diagnostics.backend = "colgen";
  r.diagnostics.iterations = iterations;
  r.diagnostics.support_size = model.support.size();
  r.diagnostics.metrics["skipped_attacks"] = skipped;
  std::vector<double> lambda;
  std::vector<DefenderVertex> vertices;
  for (std::size_t j = 0; j < best.lambda.size(); ++j) {
    if (best.lambda[j] > 1e-12) {
      lambda.push_back(best.lambda[j]);
      vertices.push_back(best_vertices[j]);
    }
  }
  double total = 0.0;
  for (double l : lambda) total += l;
  for (double& l : lambda) l /= total;
  r.defender_mixed = detail::DefenderStrategyFrom(
      lambda, vertices, game.defender, model.support, cfg, r.diagnostics);
  r.attacker_mixed = {{attacks[best_attack], 1.0}};
  r.defender_value =
      AttackValue(attacks[best_attack], r.defender_mixed, game.utilities,
                  Player::kDefender);
  r.attacker_value =
      AttackValue(attacks[best_attack], r.defender_mixed, game.utilities,
                  Player::kAttacker);
  r.coverage = CoverageMarginals(r.defender_mixed, game.n());
  r.diagnostics.metrics["lp_value"] = best.value;
  return r;
}

namespace detail {

struct AdditiveData {
  std::vector<double> benefit_attacker, gap_attacker;
  std::vector<double> loss_defender, gap_defender;
};

inline AdditiveData ReadAdditive(const GameInstance& game) {
  AdditiveData d;
  const auto& u = game.utilities;
  for (int i = 0; i < game.n(); ++i) {
    const SubsetMask s = SubsetMask::Singleton(i);
    d.benefit_attacker.push_back(u.benefit_attacker(s));
    d.gap_attacker.push_back(u.benefit_attacker(s) - u.loss_attacker(s));
    d.loss_defender.push_back(u.loss_defender(s));
    d.gap_defender.push_back(u.benefit_defender(s) - u.loss_defender(s));
  }
  return d;
}

struct ThresholdOutcome {
  std::vector<double> marginals;  // attacker a = h^{-1}(duals)
  std::vector<double> coverage;   // t
  std::vector<double> lambda;
  std::vector<DefenderVertex> vertices;
};

// min sum_i h_i pi_i s.t. pi_i + gap_i t_i >= B_a(i) - tau, pi >= 0, with
// t = sum_j lambda_j x_j over generated covering vertices.
inline ThresholdOutcome SolveThresholdLp(double tau, const AdditiveData& d,
                                         const SaddleTransform& h,
                                         const DefenderOracleSpec& spec,
                                         const SupportSet& singles,
                                         const SolverConfig& cfg,
                                         VertexPool& pool, int& iterations) {
  const std::size_t n = d.benefit_attacker.size();
  const int cap = ColumnGenerationLimit(cfg);
  for (int iter = 0;; ++iter) {
    const auto& verts = pool.vertices();
    const std::size_t nv = verts.size();
    LinearProgram lp;
    lp.sense = Sense::kMinimize;
    lp.objective.assign(n + nv, 0.0);
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = h.scale[i];
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(n + nv, 0.0);
      row[i] = 1.0;
      const std::size_t k = singles.SingletonIndex(static_cast<int>(i));
      for (std::size_t j = 0; j < nv; ++j) {
        row[n + j] = d.gap_attacker[i] * verts[j].v2[k];
      }
      lp.Add(std::move(row), Relation::kGreaterEqual,
             d.benefit_attacker[i] - tau);
    }
    std::vector<double> convex(n + nv, 0.0);
    std::fill(convex.begin() + n, convex.end(), 1.0);
    lp.Add(std::move(convex), Relation::kEqual, 1.0);
    const LpSolution sol = SolveLp(lp);
    ++iterations;
    if (!sol.optimal()) {
      throw Error(std::string("additive master failed: ") +
                  ToString(sol.status));
    }
    std::vector<double> weights(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      weights[n + singles.SingletonIndex(static_cast<int>(i))] =
          sol.duals[i] * d.gap_attacker[i];
    }
    const double sigma = sol.duals[n];
    OracleAnswer ans = DopLinear(spec, weights, singles, Sense::kMaximize);
    bool add = ans.objective_value + sigma > cfg.opt_tol * 1e-3;
    if (add && pool.Contains(ans.strategy)) {
      Perturb(weights, 1e-12);
      ans = DopLinear(spec, weights, singles, Sense::kMaximize);
      add = !pool.Contains(ans.strategy);
    }
    if (!add) {
      ThresholdOutcome out;
      out.marginals.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        out.marginals[i] = std::clamp(sol.duals[i] / h.scale[i], 0.0, 1.0);
      }
      out.coverage.assign(n, 0.0);
      double total = 0.0;
      for (std::size_t j = 0; j < nv; ++j) {
        const double l = sol.x[n + j];
        if (l <= 1e-12) continue;
        out.lambda.push_back(l);
        out.vertices.push_back(verts[j]);
        total += l;
      }
      for (double& l : out.lambda) l /= total;
      for (std::size_t j = 0; j < out.vertices.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          out.coverage[i] +=
              out.lambda[j] *
              out.vertices[j].v2[singles.SingletonIndex(static_cast<int>(i))];
        }
      }
      return out;
    }
    if (iter >= cap) {
      throw IterationLimitError("additive column generation cap reached",
                                sol.objective);
    }
    pool.Add(ans.vertex);
  }
}

inline double Sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace detail

// Distribution over attacks of size at most ceil(sum a) whose inclusion
// probabilities are the marginals a (each in [0, 1]). Systematic sampling:
// target i owns the interval [A_{i-1}, A_i) of the cumulative sums, and the
// attack for offset u collects the targets whose interval holds u + m for
// some integer m.
inline MixedStrategy AttackFromMarginals(const std::vector<double>& a) {
  const std::size_t n = a.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cum[i + 1] = cum[i] + std::clamp(a[i], 0.0, 1.0);
  }
  std::vector<double> cuts = {0.0, 1.0};
  for (double c : cum) cuts.push_back(c - std::floor(c));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<SubsetMask, double>> weighted;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double width = cuts[k + 1] - cuts[k];
    if (width <= 1e-15) continue;
    const double u = 0.5 * (cuts[k] + cuts[k + 1]);
    SubsetMask attack;
    for (std::size_t i = 0; i < n; ++i) {
      // Is there an integer m with cum[i] <= u + m < cum[i + 1]?
      const double m = std::ceil(cum[i] - u);
      if (u + m < cum[i + 1]) {
        attack = attack | SubsetMask::Singleton(static_cast<int>(i));
      }
    }
    weighted.emplace_back(attack, width);
  }
  return detail::MergeStrategies(weighted);
}

inline EquilibriumResult SolveNeAdditive(const GameInstance& game,
                                         const SolverConfig& cfg = {}) {
  game.Validate();
  cfg.Validate();
  if (!IsAdditive(game.utilities, game.attacker_space)) {
    throw Error("solve_ne_additive needs additive utilities");
  }
  const int n = game.n();
  const int c = game.budget();
  const SaddleTransform h = MakeSaddleTransform(game.utilities, n);
  const detail::AdditiveData d = detail::ReadAdditive(game);
  const SupportSet singles = SupportSet::Singletons(n);
  detail::VertexPool pool;
  {
    std::vector<double> w(2 * n, 0.0);
    for (int i = 0; i < n; ++i) {
      w[n + singles.SingletonIndex(i)] = d.benefit_attacker[i];
    }
    pool.Add(DopLinear(game.defender, w, singles, Sense::kMaximize).vertex);
  }
  int iterations = 0;
  auto solve = [&](double tau) {
    return detail::SolveThresholdLp(tau, d, h, game.defender, singles, cfg,
                                    pool, iterations);
  };

  detail::ThresholdOutcome lo = solve(0.0);
  std::vector<double> marginals = lo.marginals;
  detail::ThresholdOutcome chosen = lo;
  double tau = 0.0;
  int bisections = 0;
  if (detail::Sum(lo.marginals) > c + 1e-12) {
    double tau_lo = 0.0;
    double tau_hi =
        *std::max_element(d.benefit_attacker.begin(), d.benefit_attacker.end()) +
        1.0;
    detail::ThresholdOutcome hi = solve(tau_hi);
    bool exact = false;
    for (; bisections < 80 && tau_hi - tau_lo > 1e-15; ++bisections) {
      const double mid = 0.5 * (tau_lo + tau_hi);
      detail::ThresholdOutcome out = solve(mid);
      const double total = detail::Sum(out.marginals);
      if (std::abs(total - c) < 1e-12) {
        chosen = std::move(out);
        marginals = chosen.marginals;
        tau = mid;
        exact = true;
        break;
      }
      if (total > c) {
        tau_lo = mid;
        lo = std::move(out);
      } else {
        tau_hi = mid;
        hi = std::move(out);
      }
    }
    if (!exact) {
      const double s_lo = detail::Sum(lo.marginals);
      const double s_hi = detail::Sum(hi.marginals);
      const double theta = s_lo > s_hi ? (c - s_hi) / (s_lo - s_hi) : 0.0;
      marginals.assign(n, 0.0);
      for (int i = 0; i < n; ++i) {
        marginals[i] = theta * lo.marginals[i] + (1.0 - theta) * hi.marginals[i];
      }
      chosen = std::move(hi);
      tau = tau_hi;
    }
  }

  EquilibriumResult r;
  r.solution_concept = Concept::kNash;
  r.diagnostics.backend = "colgen";
  r.diagnostics.iterations = iterations;
  r.diagnostics.support_size = static_cast<std::size_t>(n);
  r.diagnostics.metrics["threshold"] = tau;
  r.diagnostics.metrics["bisections"] = bisections;
  r.diagnostics.notes.push_back(
      "attacker strategy realized from per-target marginals");
  std::vector<std::pair<SubsetMask, double>> weighted;
  for (std::size_t j = 0; j < chosen.vertices.size(); ++j) {
    weighted.emplace_back(VertexToStrategy(chosen.vertices[j], n, singles),
                          chosen.lambda[j]);
  }
  r.defender_mixed = detail::MergeStrategies(weighted);
  r.coverage = CoverageMarginals(r.defender_mixed, n);
  r.attacker_marginals = marginals;
  r.attacker_mixed = AttackFromMarginals(marginals);
  double ua = 0.0, ud = 0.0, defender_gain = 0.0;
  for (int i = 0; i < n; ++i) {
    ua += marginals[i] * (d.benefit_attacker[i] - d.gap_attacker[i] * r.coverage[i]);
    ud += marginals[i] * (d.loss_defender[i] + d.gap_defender[i] * r.coverage[i]);
    defender_gain += marginals[i] * d.gap_defender[i] * r.coverage[i];
  }
  r.attacker_value = ua;
  r.defender_value = ud;
  // Post-verification against best responses.
  const auto [best_attack, best_attack_value] =
      AttackerBestResponseAdditive(r.coverage, game);
  (void)best_attack;
  std::vector<double> w(2 * n, 0.0);
  for (int i = 0; i < n; ++i) {
    w[n + singles.SingletonIndex(i)] = marginals[i] * d.gap_defender[i];
  }
  const OracleAnswer best_cover =
      DopLinear(game.defender, w, singles, Sense::kMaximize);
  r.diagnostics.metrics["attacker_regret"] =
      std::max(best_attack_value - ua, 0.0);
  r.diagnostics.metrics["defender_regret"] =
      std::max(best_cover.objective_value - defender_gain, 0.0);
  return r;
}

}  // namespace secgame

#endif  // SECGAME_SOLVERS_HPP_
