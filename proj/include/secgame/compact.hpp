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

#ifndef SECGAME_COMPACT_HPP_
#define SECGAME_COMPACT_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "secgame/error.hpp"
#include "secgame/model.hpp"
#include "secgame/subset.hpp"
#include "secgame/support.hpp"

namespace secgame {

struct WeightedSet {
  SubsetMask set;
  double prob = 0.0;
};

// Sparse mixed strategy over pure strategies (target subsets).
using MixedStrategy = std::vector<WeightedSet>;

inline constexpr double kDistributionTol = 1e-9;

inline void ValidateDistribution(const MixedStrategy& dist,
                                 const char* who = "distribution") {
  double total = 0.0;
  for (const auto& [set, prob] : dist) {
    if (!(prob >= -kDistributionTol) || !std::isfinite(prob)) {
      throw Error(std::string(who) + " has a negative or non-finite weight at " +
                  set.ToString());
    }
    total += prob;
  }
  if (std::abs(total - 1.0) > kDistributionTol) {
    throw Error(std::string(who) + " sums to " + std::to_string(total) +
                ", not 1");
  }
}

// Common-utility weights aligned with a support set, one pair per player.
struct CompactWeights {
  std::vector<double> attacker_benefit;
  std::vector<double> attacker_loss;
  std::vector<double> defender_benefit;
  std::vector<double> defender_loss;

  std::size_t size() const { return attacker_benefit.size(); }
  const std::vector<double>& benefit(Player p) const {
    return p == Player::kAttacker ? attacker_benefit : defender_benefit;
  }
  const std::vector<double>& loss(Player p) const {
    return p == Player::kAttacker ? attacker_loss : defender_loss;
  }
};

struct AttackerVertex {
  std::vector<double> coords;
  SubsetMask source;
};

struct DefenderVertex {
  std::vector<double> v1;  // V inside the uncovered targets
  std::vector<double> v2;  // V inside the covered targets
  std::optional<SubsetMask> source;

  // (v1, v2) as one vector of length 2|S|.
  std::vector<double> Stacked() const {
    std::vector<double> out(v1);
    out.insert(out.end(), v2.begin(), v2.end());
    return out;
  }
};

struct CompactDefenderPoint {
  std::vector<double> q1;
  std::vector<double> q2;
};

struct CompactAttackerPoint {
  std::vector<double> p;
};

inline CompactWeights BuildWeights(const CommonUtilityProfile& common,
                                   const SupportSet& support) {
  const std::size_t m = support.size();
  CompactWeights w{std::vector<double>(m), std::vector<double>(m),
                   std::vector<double>(m), std::vector<double>(m)};
  auto place = [&](const SetFunction& f, std::vector<double>& out) {
    for (const auto& [mask, value] : f.entries()) {
      if (support.contains(mask)) out[support.IndexOf(mask)] = value;
    }
  };
  place(common.benefit_attacker, w.attacker_benefit);
  place(common.loss_attacker, w.attacker_loss);
  place(common.benefit_defender, w.defender_benefit);
  place(common.loss_defender, w.defender_loss);
  return w;
}

namespace detail {

// out[k] += weight for every support member contained in `outer`.
inline void AddContained(SubsetMask outer, const SupportSet& support,
                         double weight, std::vector<double>& out) {
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (support[k].subset_of(outer)) out[k] += weight;
  }
}

}  // namespace detail

inline AttackerVertex MakeAttackerVertex(SubsetMask attack,
                                         const SupportSet& support,
                                         int budget) {
  if (attack.size() > budget) {
    throw Error("attack " + attack.ToString() + " exceeds the budget " +
                std::to_string(budget));
  }
  AttackerVertex v{std::vector<double>(support.size(), 0.0), attack};
  detail::AddContained(attack, support, 1.0, v.coords);
  return v;
}

inline DefenderVertex MakeDefenderVertex(SubsetMask defense,
                                         const SupportSet& support) {
  const std::size_t m = support.size();
  DefenderVertex v{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0),
                   defense};
  const SubsetMask uncovered = defense.complement(support.n());
  detail::AddContained(uncovered, support, 1.0, v.v1);
  detail::AddContained(defense, support, 1.0, v.v2);
  return v;
}

// Reads the pure strategy off the uncovered-side singleton coordinates.
inline SubsetMask VertexToStrategy(const DefenderVertex& v, int n,
                                   const SupportSet& support) {
  constexpr double kTol = 1e-9;
  SubsetMask uncovered;
  for (int i = 0; i < n; ++i) {
    const std::size_t k = support.SingletonIndex(i);
    const double x = v.v1.at(k);
    if (std::abs(x) > kTol && std::abs(x - 1.0) > kTol) {
      throw Error("vertex coordinate for target " + std::to_string(i) +
                  " is not binary (" + std::to_string(x) + ")");
    }
    if (!v.v2.empty() && std::abs(x + v.v2.at(k) - 1.0) > kTol) {
      throw Error("vertex violates complementarity at target " +
                  std::to_string(i));
    }
    if (std::abs(x) > kTol) uncovered = uncovered | SubsetMask::Singleton(i);
  }
  return uncovered.complement(n);
}

inline CompactAttackerPoint ProjectAttacker(const MixedStrategy& dist,
                                            const SupportSet& support) {
  ValidateDistribution(dist, "attacker distribution");
  CompactAttackerPoint out{std::vector<double>(support.size(), 0.0)};
  for (const auto& [set, prob] : dist) {
    detail::AddContained(set, support, prob, out.p);
  }
  return out;
}

inline CompactDefenderPoint ProjectDefender(const MixedStrategy& dist,
                                            const SupportSet& support) {
  ValidateDistribution(dist, "defender distribution");
  const std::size_t m = support.size();
  CompactDefenderPoint out{std::vector<double>(m, 0.0),
                           std::vector<double>(m, 0.0)};
  for (const auto& [set, prob] : dist) {
    detail::AddContained(set.complement(support.n()), support, prob, out.q1);
    detail::AddContained(set, support, prob, out.q2);
  }
  return out;
}

// Expected payoff through the compact decomposition. The attacker's benefit
// accrues on the uncovered side (q1), the defender's on the covered side (q2).
inline double CompactPayoff(const CompactAttackerPoint& pbar,
                            const CompactDefenderPoint& q,
                            const CompactWeights& w, Player player) {
  const std::size_t m = w.size();
  if (pbar.p.size() != m || q.q1.size() != m || q.q2.size() != m) {
    throw Error("compact payoff dimension mismatch");
  }
  const auto& b = w.benefit(player);
  const auto& l = w.loss(player);
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double term = player == Player::kAttacker
                            ? b[k] * q.q1[k] + l[k] * q.q2[k]
                            : l[k] * q.q1[k] + b[k] * q.q2[k];
    total += pbar.p[k] * term;
  }
  return total;
}

inline double DirectPayoff(SubsetMask attack, SubsetMask defense,
                           const UtilityProfile& profile, Player player) {
  const SubsetMask hit = attack - defense;
  const SubsetMask caught = attack & defense;
  if (player == Player::kAttacker) {
    return profile.benefit_attacker(hit) + profile.loss_attacker(caught);
  }
  return profile.benefit_defender(caught) + profile.loss_defender(hit);
}

inline std::vector<double> CoverageMarginals(const MixedStrategy& dist,
                                             int n) {
  std::vector<double> t(n, 0.0);
  for (const auto& [set, prob] : dist) {
    for (int i : set.indices()) {
      if (i < n) t[i] += prob;
    }
  }
  return t;
}

}  // namespace secgame

#endif  // SECGAME_COMPACT_HPP_
