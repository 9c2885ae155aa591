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

#ifndef SECGAME_RANDOM_INSTANCES_HPP_
#define SECGAME_RANDOM_INSTANCES_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "secgame/game.hpp"
#include "secgame/model.hpp"
#include "secgame/oracles.hpp"
#include "secgame/set_function.hpp"

namespace secgame {

// Seeded generators for test and benchmark games. Benefits exceed losses by
// construction: L ~ U[-2, 0], B = L + U(0.5, 3).
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int UniformInt(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  // Up to `max_entries` random entries on subsets of [n]; integer values in
  // [-10, 10] when `integer` is set.
  SetFunction RandomSetFunction(int n, int max_entries, bool integer) {
    SetFunction f;
    const int count = UniformInt(0, max_entries);
    const std::uint64_t limit =
        n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (int k = 0; k < count && limit > 0; ++k) {
      const SubsetMask m(std::uniform_int_distribution<std::uint64_t>(1, limit)(rng_));
      f.Set(m, integer ? static_cast<double>(UniformInt(-10, 10))
                       : Uniform(-10.0, 10.0));
    }
    return f;
  }

  // Non-additive benefit/loss pair with an explicit value on every nonempty
  // attack.
  std::pair<SetFunction, SetFunction> RandomBenefitLoss(
      const AttackerSpace& space) {
    SetFunction benefit, loss;
    for (SubsetMask a : space.Enumerate()) {
      if (a.empty()) continue;
      const double l = Uniform(-2.0, 0.0);
      loss.Set(a, l);
      benefit.Set(a, l + Uniform(0.5, 3.0));
    }
    return {benefit, loss};
  }

  std::pair<SetFunction, SetFunction> RandomAdditiveBenefitLoss(int n) {
    std::vector<double> b(n), l(n);
    for (int i = 0; i < n; ++i) {
      l[i] = Uniform(-2.0, 0.0);
      b[i] = l[i] + Uniform(0.5, 3.0);
    }
    return {SetFunction::Additive(b), SetFunction::Additive(l)};
  }

  UtilityProfile RandomZeroSumProfile(const AttackerSpace& space) {
    auto [b, l] = RandomBenefitLoss(space);
    return ZeroSumComplete(b, l, space);
  }

  UtilityProfile RandomGeneralProfile(const AttackerSpace& space) {
    auto [ba, la] = RandomBenefitLoss(space);
    auto [bd, ld] = RandomBenefitLoss(space);
    return {ba, la, bd, ld, false};
  }

  UtilityProfile RandomAdditiveProfile(const AttackerSpace& space,
                                       bool zero_sum) {
    auto [ba, la] = RandomAdditiveBenefitLoss(space.n);
    if (zero_sum) return ZeroSumComplete(ba, la, space);
    auto [bd, ld] = RandomAdditiveBenefitLoss(space.n);
    return {ba, la, bd, ld, false};
  }

  DefenderOracleSpec RandomMatroid(int n, int max_k = 3) {
    return {n, UniformMatroid{UniformInt(1, std::min(max_k, n))}};
  }

  // Integer costs in 1..5 and a budget in 2..10.
  DefenderOracleSpec RandomBudget(int n) {
    BudgetSystem s;
    for (int i = 0; i < n; ++i) s.costs.push_back(UniformInt(1, 5));
    s.budget = UniformInt(2, 10);
    return {n, s};
  }

  DefenderOracleSpec RandomBipartite(int n) {
    BipartiteSystem s;
    const int resources = UniformInt(1, std::max(1, n / 2 + 1));
    for (int r = 0; r < resources; ++r) {
      SubsetMask reach;
      while (reach.empty()) {
        for (int i = 0; i < n; ++i) {
          if (Uniform(0.0, 1.0) < 0.35) reach = reach | SubsetMask::Singleton(i);
        }
      }
      s.resources.push_back(reach);
    }
    return {n, s};
  }

  // Disjoint components of size at most 3 covering a random part of [n].
  DefenderOracleSpec RandomSeparable(int n) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng_);
    SeparableSystem s;
    for (int pos = 0; pos < n;) {
      const int size = std::min(UniformInt(1, 3), n - pos);
      SubsetMask comp;
      for (int k = 0; k < size; ++k) {
        comp = comp | SubsetMask::Singleton(order[pos + k]);
      }
      s.components.push_back(comp);
      pos += size;
    }
    return {n, s};
  }

  DefenderOracleSpec RandomExplicit(int n, int count) {
    ExplicitSystem s;
    const std::uint64_t limit = (std::uint64_t{1} << n) - 1;
    for (int k = 0; k < count; ++k) {
      s.sets.push_back(
          SubsetMask(std::uniform_int_distribution<std::uint64_t>(0, limit)(rng_)));
    }
    return {n, s};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace secgame

#endif  // SECGAME_RANDOM_INSTANCES_HPP_
