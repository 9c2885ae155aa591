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

#ifndef SECGAME_MODEL_HPP_
#define SECGAME_MODEL_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "secgame/error.hpp"
#include "secgame/set_function.hpp"
#include "secgame/subset.hpp"
#include "secgame/support.hpp"

namespace secgame {

enum class Player { kAttacker, kDefender };

inline constexpr double kCommonUtilityTol = 1e-12;

// The attacker's strategies: every subset of [n] with at most c targets.
struct AttackerSpace {
  int n = 0;
  int c = 1;

  AttackerSpace() = default;
  AttackerSpace(int n_targets, int budget) : n(n_targets), c(budget) {
    SubsetMask::CheckCount(n);
    if (c < 0) throw Error("attacker budget must be nonnegative");
    if (c > n) c = n;
  }

  std::uint64_t Size() const {
    std::uint64_t total = 0;
    for (int k = 0; k <= c; ++k) total += Binomial(n, k);
    return total;
  }

  bool Contains(SubsetMask a) const {
    return a.size() <= c && a.subset_of(SubsetMask::Full(n));
  }

  // Canonical order, starting with the empty set.
  std::vector<SubsetMask> Enumerate() const {
    std::vector<SubsetMask> out;
    out.reserve(Size());
    for (int k = 0; k <= c; ++k) {
      ForEachSubsetOfSize(n, k, [&](SubsetMask m) { out.push_back(m); });
    }
    return out;
  }
};

struct UtilityProfile {
  SetFunction benefit_attacker;
  SetFunction loss_attacker;
  SetFunction benefit_defender;
  SetFunction loss_defender;
  bool zero_sum = false;
};

// Möbius transforms of the four utility functions.
struct CommonUtilityProfile {
  SetFunction benefit_attacker;
  SetFunction loss_attacker;
  SetFunction benefit_defender;
  SetFunction loss_defender;
};

// Checks benefit > loss for both players on every nonempty attack, and the
// zero-sum identities when the profile is flagged zero-sum.
inline void ValidateProfile(const UtilityProfile& profile,
                            const AttackerSpace& space) {
  for (SubsetMask a : space.Enumerate()) {
    if (a.empty()) continue;
    if (!(profile.benefit_attacker(a) > profile.loss_attacker(a))) {
      throw Error("attacker benefit must exceed loss at " + a.ToString());
    }
    if (!(profile.benefit_defender(a) > profile.loss_defender(a))) {
      throw Error("defender benefit must exceed loss at " + a.ToString());
    }
    if (profile.zero_sum) {
      const double tol = 1e-9 * (1.0 + std::abs(profile.benefit_attacker(a)) +
                                 std::abs(profile.loss_attacker(a)));
      if (std::abs(profile.benefit_attacker(a) + profile.loss_defender(a)) >
              tol ||
          std::abs(profile.benefit_defender(a) + profile.loss_attacker(a)) >
              tol) {
        throw Error("zero-sum profile violates B_a = -L_d, B_d = -L_a at " +
                    a.ToString());
      }
    }
  }
}

// Builds a zero-sum profile from the attacker's benefit and loss:
// B_d = -L_a and L_d = -B_a.
inline UtilityProfile ZeroSumComplete(const SetFunction& benefit_attacker,
                                      const SetFunction& loss_attacker,
                                      const AttackerSpace& space) {
  UtilityProfile p;
  p.benefit_attacker = benefit_attacker;
  p.loss_attacker = loss_attacker;
  p.benefit_defender = loss_attacker.Negated();
  p.loss_defender = benefit_attacker.Negated();
  p.zero_sum = true;
  for (SubsetMask a : space.Enumerate()) {
    if (a.empty()) continue;
    if (!(benefit_attacker(a) > loss_attacker(a))) {
      throw Error("attacker benefit must exceed loss at " + a.ToString());
    }
  }
  return p;
}

namespace detail {

// True when f is additive by construction on sets of size <= c, so the
// transform reduces to the singleton values.
inline bool AdditiveByConstruction(const SetFunction& f, int c) {
  if (c <= 1) return true;
  for (const auto& [mask, value] : f.entries()) {
    if (mask.size() > 1) return false;
  }
  return f.has_per_target() || f.entries().empty();
}

inline SetFunction SingletonPart(const SetFunction& f, int n) {
  SetFunction g;
  for (int i = 0; i < n; ++i) {
    const SubsetMask s = SubsetMask::Singleton(i);
    if (const double v = f(s); v != 0.0) g.Set(s, v);
  }
  return g;
}

}  // namespace detail

inline CommonUtilityProfile CommonUtilities(const UtilityProfile& profile,
                                            const AttackerSpace& space) {
  std::vector<SubsetMask> domain;
  auto transform = [&](const SetFunction& f) {
    if (detail::AdditiveByConstruction(f, space.c)) {
      return detail::SingletonPart(f, space.n);
    }
    if (domain.empty()) {
      domain = space.Enumerate();
      domain.erase(domain.begin());  // drop the empty set
    }
    return MobiusTransform(f, domain);
  };
  return {transform(profile.benefit_attacker), transform(profile.loss_attacker),
          transform(profile.benefit_defender),
          transform(profile.loss_defender)};
}

// Subsets where any common utility is nonzero, plus every singleton.
inline SupportSet SupportSetOf(const CommonUtilityProfile& common, int n) {
  std::vector<SubsetMask> members;
  for (const SetFunction* f :
       {&common.benefit_attacker, &common.loss_attacker,
        &common.benefit_defender, &common.loss_defender}) {
    for (const auto& [mask, value] : f->entries()) {
      if (std::abs(value) > kCommonUtilityTol) members.push_back(mask);
    }
  }
  return SupportSet(n, std::move(members));
}

// True when every common utility vanishes on sets of two or more targets.
inline bool IsAdditive(const CommonUtilityProfile& common) {
  for (const SetFunction* f :
       {&common.benefit_attacker, &common.loss_attacker,
        &common.benefit_defender, &common.loss_defender}) {
    for (const auto& [mask, value] : f->entries()) {
      if (mask.size() > 1 && std::abs(value) > kCommonUtilityTol) return false;
    }
  }
  return true;
}

inline bool IsAdditive(const UtilityProfile& profile,
                       const AttackerSpace& space) {
  return IsAdditive(CommonUtilities(profile, space));
}

}  // namespace secgame

#endif  // SECGAME_MODEL_HPP_
