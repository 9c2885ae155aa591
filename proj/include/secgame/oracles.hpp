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

#ifndef SECGAME_ORACLES_HPP_
#define SECGAME_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "secgame/assignment.hpp"
#include "secgame/compact.hpp"
#include "secgame/error.hpp"
#include "secgame/sense.hpp"
#include "secgame/subset.hpp"
#include "secgame/support.hpp"

namespace secgame {

inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;
inline constexpr int kMaxSeparableComponent = 25;
inline constexpr double kBudgetScale = 1e3;
inline constexpr std::int64_t kMaxBudgetCapacity = std::int64_t{1} << 21;
inline constexpr double kTieTol = 1e-12;

// At most k targets.
struct UniformMatroid {
  int k = 0;
};
// An explicit list of allowed defender strategies.
struct ExplicitSystem {
  std::vector<SubsetMask> sets;
};
// Each resource covers one target among those it can reach.
struct BipartiteSystem {
  std::vector<SubsetMask> resources;
};
// Total cost of covered targets at most the budget.
struct BudgetSystem {
  std::vector<double> costs;
  double budget = 0.0;
};
// Every subset of [n] is allowed; objective terms must not cross components.
struct SeparableSystem {
  std::vector<SubsetMask> components;
};

using SystemVariant = std::variant<UniformMatroid, ExplicitSystem,
                                   BipartiteSystem, BudgetSystem,
                                   SeparableSystem>;

// The defender's feasible pure strategies over n targets.
struct DefenderOracleSpec {
  int n = 0;
  SystemVariant system;

  void Validate() const {
    SubsetMask::CheckCount(n);
    const SubsetMask full = SubsetMask::Full(n);
    auto within = [&](SubsetMask m, const char* what) {
      if (!m.subset_of(full)) {
        throw Error(std::string(what) + " " + m.ToString() +
                    " references a target >= n");
      }
    };
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, UniformMatroid>) {
            if (s.k < 0) throw Error("matroid rank must be nonnegative");
          } else if constexpr (std::is_same_v<T, ExplicitSystem>) {
            if (s.sets.empty()) throw Error("explicit system is empty");
            for (SubsetMask m : s.sets) within(m, "explicit set");
          } else if constexpr (std::is_same_v<T, BipartiteSystem>) {
            for (SubsetMask m : s.resources) within(m, "resource");
          } else if constexpr (std::is_same_v<T, BudgetSystem>) {
            if (static_cast<int>(s.costs.size()) != n) {
              throw Error("budget system needs one cost per target");
            }
            for (double c : s.costs) {
              if (!(c >= 0.0) || !std::isfinite(c)) {
                throw Error("budget costs must be finite and nonnegative");
              }
            }
            if (!(s.budget >= 0.0)) throw Error("budget must be nonnegative");
          } else {
            SubsetMask seen;
            for (SubsetMask m : s.components) {
              within(m, "component");
              if (!(m & seen).empty()) {
                throw Error("separable components overlap at " +
                            (m & seen).ToString());
              }
              seen = seen | m;
            }
          }
        },
        system);
  }

  std::string Name() const {
    static const char* kNames[] = {"matroid", "explicit", "bipartite",
                                   "budget", "separable"};
    return kNames[system.index()];
  }
};

// Multilinear polynomial in the coverage indicators x_i:
// constant + sum over terms T of coefficient(T) * prod_{i in T} x_i.
struct PseudoBooleanObjective {
  int n = 0;
  double constant = 0.0;
  std::map<SubsetMask, double, CanonicalLess> terms;

  double coefficient(SubsetMask m) const {
    if (m.empty()) return constant;
    auto it = terms.find(m);
    return it == terms.end() ? 0.0 : it->second;
  }

  void Add(SubsetMask m, double value) {
    if (m.empty()) {
      constant += value;
    } else {
      terms[m] += value;
    }
  }

  bool SingletonOnly() const {
    return std::all_of(terms.begin(), terms.end(), [](const auto& kv) {
      return kv.first.size() <= 1 || kv.second == 0.0;
    });
  }

  std::vector<double> SingletonWeights() const {
    std::vector<double> w(n, 0.0);
    for (const auto& [m, v] : terms) {
      if (m.size() == 1) w[m.indices().front()] += v;
    }
    return w;
  }

  double Evaluate(SubsetMask x) const {
    double total = constant;
    for (const auto& [m, v] : terms) {
      if (m.subset_of(x)) total += v;
    }
    return total;
  }

  PseudoBooleanObjective Negated() const {
    PseudoBooleanObjective out{n, -constant, {}};
    for (const auto& [m, v] : terms) out.terms.emplace(m, -v);
    return out;
  }
};

struct OracleAnswer {
  SubsetMask strategy;
  double objective_value = 0.0;
  DefenderVertex vertex;
};

// Rewrites w1·v1 + w2·v2 as a polynomial in the covered indicators, using
// prod_{i in V} (1 - x_i) = sum over W ⊆ V of (-1)^{|W|} x^W.
inline PseudoBooleanObjective ToPseudoBoolean(const std::vector<double>& w1,
                                              const std::vector<double>& w2,
                                              const SupportSet& support) {
  if (w1.size() != support.size() || w2.size() != support.size()) {
    throw Error("pseudo-Boolean weights must have length |S|");
  }
  PseudoBooleanObjective obj{support.n(), 0.0, {}};
  for (std::size_t k = 0; k < support.size(); ++k) {
    const SubsetMask v = support[k];
    if (w2[k] != 0.0) obj.Add(v, w2[k]);
    if (w1[k] != 0.0) {
      ForEachSubmask(v, [&](SubsetMask sub) {
        obj.Add(sub, (sub.size() % 2 == 0) ? w1[k] : -w1[k]);
      });
    }
  }
  std::erase_if(obj.terms, [](const auto& kv) { return kv.second == 0.0; });
  return obj;
}

namespace detail {

// Kuhn's augmenting paths: can every target in `targets` get its own
// resource?
inline bool Matchable(SubsetMask targets,
                      const std::vector<SubsetMask>& resources) {
  if (targets.size() > static_cast<int>(resources.size())) return false;
  std::vector<int> owner(resources.size(), -1);
  std::function<bool(int, std::vector<char>&)> augment =
      [&](int target, std::vector<char>& visited) {
        for (std::size_t r = 0; r < resources.size(); ++r) {
          if (!resources[r].contains(target) || visited[r]) continue;
          visited[r] = 1;
          if (owner[r] < 0 || augment(owner[r], visited)) {
            owner[r] = target;
            return true;
          }
        }
        return false;
      };
  for (int t : targets.indices()) {
    std::vector<char> visited(resources.size(), 0);
    if (!augment(t, visited)) return false;
  }
  return true;
}

inline void CheckCap(double estimate, std::uint64_t cap) {
  if (estimate > static_cast<double>(cap)) {
    throw Error("requires enumerable set system: about " +
                std::to_string(static_cast<long double>(estimate)) +
                " strategies exceed the cap of " + std::to_string(cap));
  }
}

inline bool BudgetFits(double total, double budget) {
  return total <= budget + 1e-9 * (1.0 + std::abs(budget));
}

// Separable components, with uncovered targets as singleton components.
inline std::vector<SubsetMask> AllComponents(const SeparableSystem& s, int n) {
  std::vector<SubsetMask> comps = s.components;
  SubsetMask covered;
  for (SubsetMask c : comps) covered = covered | c;
  for (int i = 0; i < n; ++i) {
    if (!covered.contains(i)) comps.push_back(SubsetMask::Singleton(i));
  }
  std::erase_if(comps, [](SubsetMask c) { return c.empty(); });
  return comps;
}

}  // namespace detail

// Every feasible defender strategy, in canonical order.
inline std::vector<SubsetMask> EnumerateSystem(
    const DefenderOracleSpec& spec, std::uint64_t cap = kEnumerationCap) {
  const int n = spec.n;
  std::vector<SubsetMask> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformMatroid>) {
          double total = 0.0;
          for (int k = 0; k <= std::min(s.k, n); ++k) {
            total += static_cast<double>(Binomial(n, k));
          }
          detail::CheckCap(total, cap);
          for (int k = 0; k <= std::min(s.k, n); ++k) {
            ForEachSubsetOfSize(n, k, [&](SubsetMask m) { out.push_back(m); });
          }
        } else if constexpr (std::is_same_v<T, ExplicitSystem>) {
          detail::CheckCap(static_cast<double>(s.sets.size()), cap);
          out = s.sets;
        } else if constexpr (std::is_same_v<T, BipartiteSystem>) {
          SubsetMask reach;
          for (SubsetMask r : s.resources) reach = reach | r;
          detail::CheckCap(std::ldexp(1.0, reach.size()), cap);
          ForEachSubmask(reach, [&](SubsetMask m) {
            if (detail::Matchable(m, s.resources)) out.push_back(m);
          });
        } else if constexpr (std::is_same_v<T, BudgetSystem>) {
          // Depth-first over targets, pruning by cost.
          std::vector<int> order;
          std::function<void(int, SubsetMask, double)> walk =
              [&](int i, SubsetMask chosen, double spent) {
                if (i == n) {
                  out.push_back(chosen);
                  detail::CheckCap(static_cast<double>(out.size()), cap);
                  return;
                }
                walk(i + 1, chosen, spent);
                const double next = spent + s.costs[i];
                if (detail::BudgetFits(next, s.budget)) {
                  walk(i + 1, chosen | SubsetMask::Singleton(i), next);
                }
              };
          walk(0, SubsetMask(), 0.0);
        } else {
          detail::CheckCap(std::ldexp(1.0, n), cap);
          ForEachSubmask(SubsetMask::Full(n),
                         [&](SubsetMask m) { out.push_back(m); });
        }
      },
      spec.system);
  std::sort(out.begin(), out.end(), CanonicalLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

struct Best {
  SubsetMask mask;
  double value = -std::numeric_limits<double>::infinity();
  bool found = false;

  // Prefers the smallest integer mask among values within kTieTol.
  void Offer(SubsetMask m, double v) {
    if (!found || v > value + kTieTol ||
        (v >= value - kTieTol && m.bits() < mask.bits())) {
      mask = m;
      value = v;
      found = true;
    }
  }
};

inline Best MaximizeByEnumeration(const DefenderOracleSpec& spec,
                                  const PseudoBooleanObjective& obj) {
  Best best;
  for (SubsetMask m : EnumerateSystem(spec)) best.Offer(m, obj.Evaluate(m));
  best.value = obj.Evaluate(best.mask);
  return best;
}

inline Best MaximizeMatroid(int k, const std::vector<double>& w,
                            double constant) {
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] > w[b]; });
  if (static_cast<int>(order.size()) > k) order.resize(std::max(k, 0));
  Best best{SubsetMask(), constant, true};
  for (int i : order) {
    best.mask = best.mask | SubsetMask::Singleton(i);
    best.value += w[i];
  }
  return best;
}

inline Best MaximizeBudget(const BudgetSystem& s, const std::vector<double>& w,
                           double constant) {
  const double cap_real = std::floor(s.budget * kBudgetScale + 1e-6);
  if (cap_real > static_cast<double>(kMaxBudgetCapacity)) {
    throw Error("budget DP scale overflow: scaled capacity " +
                std::to_string(cap_real) + " exceeds " +
                std::to_string(kMaxBudgetCapacity));
  }
  const auto capacity = static_cast<std::int64_t>(cap_real);
  struct Cell {
    double value = 0.0;
    std::uint64_t mask = 0;
  };
  std::vector<Cell> dp(capacity + 1);
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (!(w[i] > 0.0)) continue;
    const auto cost = static_cast<std::int64_t>(std::llround(s.costs[i] * kBudgetScale));
    if (cost > capacity) continue;
    for (std::int64_t c = capacity; c >= cost; --c) {
      const double candidate = dp[c - cost].value + w[i];
      if (candidate > dp[c].value + kTieTol) {
        dp[c] = {candidate, dp[c - cost].mask | (std::uint64_t{1} << i)};
      }
    }
  }
  return {SubsetMask(dp[capacity].mask), constant + dp[capacity].value, true};
}

inline Best MaximizeBipartite(const BipartiteSystem& s,
                              const std::vector<double>& w, double constant) {
  std::vector<int> targets;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] > 0.0) targets.push_back(i);
  }
  Best best{SubsetMask(), constant, true};
  if (targets.empty() || s.resources.empty()) return best;
  const std::size_t size = std::max(targets.size(), s.resources.size());
  std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
  for (std::size_t r = 0; r < s.resources.size(); ++r) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (s.resources[r].contains(targets[t])) cost[r][t] = -w[targets[t]];
    }
  }
  const std::vector<int> assignment = SolveAssignment(cost);
  for (std::size_t r = 0; r < s.resources.size(); ++r) {
    const int t = assignment[r];
    if (t >= 0 && t < static_cast<int>(targets.size()) && cost[r][t] < 0.0) {
      best.mask = best.mask | SubsetMask::Singleton(targets[t]);
      best.value += w[targets[t]];
    }
  }
  return best;
}

inline Best MaximizeSeparable(const SeparableSystem& s,
                              const PseudoBooleanObjective& obj) {
  const std::vector<SubsetMask> comps = AllComponents(s, obj.n);
  std::vector<PseudoBooleanObjective> parts(comps.size(),
                                            PseudoBooleanObjective{obj.n, 0.0, {}});
  for (const auto& [m, v] : obj.terms) {
    bool placed = false;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (m.subset_of(comps[c])) {
        parts[c].terms.emplace(m, v);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw Error("objective term " + m.ToString() +
                  " crosses separable components");
    }
  }
  Best best{SubsetMask(), obj.constant, true};
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].size() > kMaxSeparableComponent) {
      throw Error("separable component " + comps[c].ToString() +
                  " exceeds " + std::to_string(kMaxSeparableComponent) +
                  " targets");
    }
    if (parts[c].terms.empty()) continue;
    Best local;
    ForEachSubmask(comps[c], [&](SubsetMask m) {
      local.Offer(m, parts[c].Evaluate(m));
    });
    best.mask = best.mask | local.mask;
    best.value += parts[c].Evaluate(local.mask);
  }
  return best;
}

}  // namespace detail

// Optimizes a pseudo-Boolean objective over the defender's set system.
// When `support` is given, the answer's vertex is filled in.
inline OracleAnswer OracleSolve(const DefenderOracleSpec& spec,
                                const PseudoBooleanObjective& obj,
                                Sense sense,
                                const SupportSet* support = nullptr) {
  if (obj.n != spec.n) {
    throw Error("objective has n = " + std::to_string(obj.n) +
                " but the defender system has n = " + std::to_string(spec.n));
  }
  const PseudoBooleanObjective target =
      sense == Sense::kMaximize ? obj : obj.Negated();
  detail::Best best;
  const bool singleton = target.SingletonOnly();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SeparableSystem>) {
          best = detail::MaximizeSeparable(s, target);
        } else if (!singleton) {
          best = detail::MaximizeByEnumeration(spec, target);
        } else if constexpr (std::is_same_v<T, UniformMatroid>) {
          best = detail::MaximizeMatroid(s.k, target.SingletonWeights(),
                                         target.constant);
        } else if constexpr (std::is_same_v<T, BudgetSystem>) {
          best = detail::MaximizeBudget(s, target.SingletonWeights(),
                                        target.constant);
        } else if constexpr (std::is_same_v<T, BipartiteSystem>) {
          best = detail::MaximizeBipartite(s, target.SingletonWeights(),
                                           target.constant);
        } else {
          best = detail::MaximizeByEnumeration(spec, target);
        }
      },
      spec.system);
  OracleAnswer answer;
  answer.strategy = best.mask;
  answer.objective_value = obj.Evaluate(best.mask);
  if (support != nullptr) {
    answer.vertex = MakeDefenderVertex(best.mask, *support);
  }
  return answer;
}

// Optimizes w·(v1, v2) over the defender vertices.
inline OracleAnswer DopLinear(const DefenderOracleSpec& spec,
                              const std::vector<double>& w,
                              const SupportSet& support, Sense sense) {
  const std::size_t m = support.size();
  if (w.size() != 2 * m) throw Error("DOP weight vector must have length 2|S|");
  const std::vector<double> w1(w.begin(), w.begin() + m);
  const std::vector<double> w2(w.begin() + m, w.end());
  return OracleSolve(spec, ToPseudoBoolean(w1, w2, support), sense, &support);
}

}  // namespace secgame

#endif  // SECGAME_ORACLES_HPP_
