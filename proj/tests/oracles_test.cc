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

#include "secgame/oracles.hpp"

#include <algorithm>
#include <vector>

#include "gtest/gtest.h"
#include "secgame/random_instances.hpp"

namespace secgame {
namespace {

using Vec = std::vector<double>;

SubsetMask Set(std::initializer_list<int> idx) {
  return SubsetMask::FromIndices(std::vector<int>(idx));
}

PseudoBooleanObjective Linear(const Vec& w) {
  PseudoBooleanObjective obj{static_cast<int>(w.size()), 0.0, {}};
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    obj.Add(SubsetMask::Singleton(i), w[i]);
  }
  return obj;
}

// Reference: best value over an explicit list of strategies.
double BestOver(const std::vector<SubsetMask>& sets,
                const PseudoBooleanObjective& obj, Sense sense) {
  double best = sense == Sense::kMaximize ? -1e300 : 1e300;
  for (SubsetMask m : sets) {
    const double v = obj.Evaluate(m);
    best = sense == Sense::kMaximize ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

// Reference feasibility check independent of the backends.
bool Feasible(const DefenderOracleSpec& spec, SubsetMask m) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformMatroid>) {
          return m.size() <= s.k;
        } else if constexpr (std::is_same_v<T, ExplicitSystem>) {
          return std::find(s.sets.begin(), s.sets.end(), m) != s.sets.end();
        } else if constexpr (std::is_same_v<T, BudgetSystem>) {
          double total = 0.0;
          for (int i : m.indices()) total += s.costs[i];
          return total <= s.budget + 1e-9;
        } else if constexpr (std::is_same_v<T, BipartiteSystem>) {
          // Try every injective assignment of targets to resources.
          const std::vector<int> targets = m.indices();
          std::vector<int> perm(s.resources.size());
          for (std::size_t r = 0; r < perm.size(); ++r) perm[r] = static_cast<int>(r);
          if (targets.size() > perm.size()) return false;
          do {
            bool ok = true;
            for (std::size_t t = 0; t < targets.size() && ok; ++t) {
              ok = s.resources[perm[t]].contains(targets[t]);
            }
            if (ok) return true;
          } while (std::next_permutation(perm.begin(), perm.end()));
          return false;
        } else {
          return true;
        }
      },
      spec.system);
}

TEST(ToPseudoBooleanTest, OneVariable) {
  const PseudoBooleanObjective obj =
      ToPseudoBoolean(Vec{2.5}, Vec{4.0}, SupportSet::Singletons(1));
  EXPECT_DOUBLE_EQ(obj.constant, 2.5);
  EXPECT_DOUBLE_EQ(obj.coefficient(Set({0})), 1.5);
}

TEST(ToPseudoBooleanTest, PairExpansion) {
  const SupportSet s(2, {Set({0, 1})});
  const PseudoBooleanObjective obj = ToPseudoBoolean(Vec{1, 2, 3}, Vec{4, 5, 6}, s);
  EXPECT_DOUBLE_EQ(obj.constant, 6);
  EXPECT_DOUBLE_EQ(obj.coefficient(Set({0})), 0);
  EXPECT_DOUBLE_EQ(obj.coefficient(Set({1})), 0);
  EXPECT_DOUBLE_EQ(obj.coefficient(Set({0, 1})), 9);
}

TEST(ToPseudoBooleanTest, ZeroWeights) {
  const SupportSet s(3, {Set({0, 2})});
  const PseudoBooleanObjective obj = ToPseudoBoolean(Vec(4, 0.0), Vec(4, 0.0), s);
  EXPECT_EQ(obj.constant, 0.0);
  EXPECT_TRUE(obj.terms.empty());
  EXPECT_THROW(ToPseudoBoolean(Vec(3, 0.0), Vec(4, 0.0), s), Error);
}

TEST(ToPseudoBooleanTest, AgreesWithVertexForm) {
  InstanceGenerator gen(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.UniformInt(1, 10);
    std::vector<SubsetMask> extra;
    for (int k = 0; k < 6; ++k) {
      SubsetMask m(static_cast<std::uint64_t>(gen.UniformInt(0, (1 << n) - 1)));
      if (m.size() >= 2 && m.size() <= 3) extra.push_back(m);
    }
    const SupportSet s(n, extra);
    Vec w1(s.size()), w2(s.size());
    for (auto& x : w1) x = gen.Uniform(-5, 5);
    for (auto& x : w2) x = gen.Uniform(-5, 5);
    const PseudoBooleanObjective obj = ToPseudoBoolean(w1, w2, s);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const DefenderVertex v = MakeDefenderVertex(SubsetMask(b), s);
      double direct = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) direct += w1[k] * v.v1[k] + w2[k] * v.v2[k];
      ASSERT_NEAR(obj.Evaluate(SubsetMask(b)), direct, 1e-9);
    }
  }
}

TEST(OracleSolveTest, MatroidTopK) {
  const DefenderOracleSpec spec{3, UniformMatroid{2}};
  const OracleAnswer a = OracleSolve(spec, Linear({5, 1, 3}), Sense::kMaximize);
  EXPECT_EQ(a.strategy, Set({0, 2}));
  EXPECT_DOUBLE_EQ(a.objective_value, 8);
}

TEST(OracleSolveTest, BudgetKnapsack) {
  const DefenderOracleSpec spec{3, BudgetSystem{{2, 3, 4}, 5}};
  const OracleAnswer a = OracleSolve(spec, Linear({3, 4, 5}), Sense::kMaximize);
  EXPECT_EQ(a.strategy, Set({0, 1}));
  EXPECT_DOUBLE_EQ(a.objective_value, 7);
}

TEST(OracleSolveTest, BipartiteMatching) {
  const DefenderOracleSpec spec{3, BipartiteSystem{{Set({0, 1}), Set({1, 2})}}};
  const OracleAnswer a = OracleSolve(spec, Linear({1, 5, 2}), Sense::kMaximize);
  EXPECT_EQ(a.strategy, Set({1, 2}));
  EXPECT_DOUBLE_EQ(a.objective_value, 7);
}

TEST(OracleSolveTest, MinimizeAndVertex) {
  const DefenderOracleSpec spec{3, UniformMatroid{2}};
  const SupportSet s = SupportSet::Singletons(3);
  const OracleAnswer a = OracleSolve(spec, Linear({5, -1, -3}), Sense::kMinimize, &s);
  EXPECT_EQ(a.strategy, Set({1, 2}));
  EXPECT_DOUBLE_EQ(a.objective_value, -4);
  EXPECT_EQ(a.vertex.v2, (Vec{0, 1, 1}));
}

TEST(OracleSolveTest, DimensionMismatch) {
  const DefenderOracleSpec spec{3, UniformMatroid{1}};
  EXPECT_THROW(OracleSolve(spec, Linear({1, 2}), Sense::kMaximize), Error);
}

TEST(OracleSolveTest, SeparableRejectsCrossingTerms) {
  const DefenderOracleSpec spec{4, SeparableSystem{{Set({0, 1}), Set({2, 3})}}};
  PseudoBooleanObjective obj{4, 0.0, {}};
  obj.Add(Set({1, 2}), 1.0);
  EXPECT_THROW(OracleSolve(spec, obj, Sense::kMaximize), Error);
  obj = PseudoBooleanObjective{4, 0.0, {}};
  obj.Add(Set({0, 1}), 3.0);
  obj.Add(Set({0}), -1.0);
  obj.Add(Set({3}), 2.0);
  const OracleAnswer a = OracleSolve(spec, obj, Sense::kMaximize);
  EXPECT_EQ(a.strategy, Set({0, 1, 3}));
  EXPECT_DOUBLE_EQ(a.objective_value, 4.0);
}

TEST(OracleSolveTest, BudgetScaleOverflow) {
  const DefenderOracleSpec spec{2, BudgetSystem{{1, 1}, 1e7}};
  EXPECT_THROW(OracleSolve(spec, Linear({1, 1}), Sense::kMaximize), Error);
}

TEST(OracleSolveTest, NonSingletonObjectiveNeedsEnumerableSystem) {
  const DefenderOracleSpec spec{30, UniformMatroid{15}};
  PseudoBooleanObjective obj{30, 0.0, {}};
  obj.Add(Set({0, 1}), 1.0);
  try {
    OracleSolve(spec, obj, Sense::kMaximize);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("requires enumerable set system"),
              std::string::npos);
  }
}

TEST(DopLinearTest, ConstantObjective) {
  const SupportSet s(3, {Set({0, 1})});
  const DefenderOracleSpec spec{3, UniformMatroid{1}};
  const OracleAnswer a = DopLinear(spec, Vec(8, 0.0), s, Sense::kMaximize);
  EXPECT_TRUE(Feasible(spec, a.strategy));
  EXPECT_DOUBLE_EQ(a.objective_value, 0.0);
}

TEST(DopLinearTest, CardinalityObjective) {
  const SupportSet s = SupportSet::Singletons(5);
  const DefenderOracleSpec spec{5, UniformMatroid{3}};
  Vec w(10, 0.0);
  for (int i = 5; i < 10; ++i) w[i] = 1.0;
  const OracleAnswer a = DopLinear(spec, w, s, Sense::kMaximize);
  EXPECT_EQ(a.strategy.size(), 3);
  EXPECT_DOUBLE_EQ(a.objective_value, 3.0);
}

TEST(DopLinearTest, ExplicitTwoPoints) {
  InstanceGenerator gen(4);
  const SupportSet s(3, {Set({1, 2})});
  const std::vector<SubsetMask> sets{Set({0}), Set({1, 2})};
  const DefenderOracleSpec spec{3, ExplicitSystem{sets}};
  for (int trial = 0; trial < 20; ++trial) {
    Vec w(2 * s.size());
    for (auto& x : w) x = gen.Uniform(-3, 3);
    auto value = [&](SubsetMask d) {
      const auto stacked = MakeDefenderVertex(d, s).Stacked();
      double total = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) total += w[k] * stacked[k];
      return total;
    };
    const double expected = std::max(value(sets[0]), value(sets[1]));
    const OracleAnswer a = DopLinear(spec, w, s, Sense::kMaximize);
    EXPECT_NEAR(a.objective_value, expected, 1e-9);
    EXPECT_NEAR(value(a.strategy), expected, 1e-9);
  }
}

TEST(EnumerateSystemTest, Examples) {
  EXPECT_EQ(EnumerateSystem({3, UniformMatroid{1}}),
            (std::vector<SubsetMask>{SubsetMask(), Set({0}), Set({1}), Set({2})}));
  EXPECT_EQ(EnumerateSystem({3, ExplicitSystem{{Set({1, 2}), Set({0}), Set({1, 2})}}}),
            (std::vector<SubsetMask>{Set({0}), Set({1, 2})}));
  EXPECT_EQ(EnumerateSystem({2, BudgetSystem{{1, 1}, 1}}),
            (std::vector<SubsetMask>{SubsetMask(), Set({0}), Set({1})}));
  EXPECT_THROW(EnumerateSystem({10, SeparableSystem{}}, 100), Error);
}

TEST(EnumerateSystemTest, MatchesFeasibilityFilter) {
  InstanceGenerator gen(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.UniformInt(1, 8);
    const DefenderOracleSpec spec = trial % 4 == 0   ? gen.RandomMatroid(n)
                                    : trial % 4 == 1 ? gen.RandomBudget(n)
                                    : trial % 4 == 2 ? gen.RandomBipartite(n)
                                                     : gen.RandomExplicit(n, 5);
    std::vector<SubsetMask> expected;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      if (Feasible(spec, SubsetMask(b))) expected.emplace_back(b);
    }
    std::sort(expected.begin(), expected.end(), CanonicalLess{});
    EXPECT_EQ(EnumerateSystem(spec), expected) << spec.Name();
  }
}

TEST(OracleSolveTest, BackendsMatchEnumeration) {
  InstanceGenerator gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.UniformInt(1, 10);
    DefenderOracleSpec spec;
    switch (trial % 5) {
      case 0: spec = gen.RandomMatroid(n); break;
      case 1: spec = gen.RandomBudget(n); break;
      case 2: spec = gen.RandomBipartite(n); break;
      case 3: spec = gen.RandomSeparable(n); break;
      default: spec = gen.RandomExplicit(n, 6); break;
    }
    std::vector<SubsetMask> extra;
    if (trial % 2 == 1 && n >= 2 && trial % 5 != 3) extra.push_back(Set({0, n - 1}));
    const SupportSet s(n, extra);
    Vec w(2 * s.size());
    for (auto& x : w) x = gen.Uniform(-4, 4);
    const Vec w1(w.begin(), w.begin() + s.size());
    const Vec w2(w.begin() + s.size(), w.end());
    const PseudoBooleanObjective obj = ToPseudoBoolean(w1, w2, s);
    std::vector<SubsetMask> all;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      if (Feasible(spec, SubsetMask(b))) all.emplace_back(b);
    }
    for (Sense sense : {Sense::kMaximize, Sense::kMinimize}) {
      const OracleAnswer a = DopLinear(spec, w, s, sense);
      const double best = BestOver(all, obj, sense);
      ASSERT_TRUE(Feasible(spec, a.strategy)) << spec.Name();
      ASSERT_NEAR(a.objective_value, best, 1e-9) << spec.Name() << " trial " << trial;
      ASSERT_NEAR(obj.Evaluate(a.strategy), best, 1e-9);
    }
  }
}

TEST(OracleSolveTest, GreedyMatroidIsOptimal) {
  InstanceGenerator gen(99);
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      Vec w(n);
      for (auto& x : w) x = gen.Uniform(-2, 6);
      const PseudoBooleanObjective obj = Linear(w);
      double best = -1e300;
      for (int size = 0; size <= k; ++size) {
        ForEachSubsetOfSize(n, size, [&](SubsetMask m) { best = std::max(best, obj.Evaluate(m)); });
      }
      EXPECT_NEAR(OracleSolve({n, UniformMatroid{k}}, obj, Sense::kMaximize).objective_value,
                  best, 1e-9);
    }
  }
}

TEST(OracleSolveTest, KnapsackDpIsOptimal) {
  InstanceGenerator gen(123);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.UniformInt(1, 15);
    BudgetSystem sys;
    for (int i = 0; i < n; ++i) sys.costs.push_back(gen.UniformInt(1, 100));
    sys.budget = gen.UniformInt(0, 50 * n);
    Vec w(n);
    for (auto& x : w) x = gen.Uniform(-1, 10);
    const PseudoBooleanObjective obj = Linear(w);
    double best = -1e300;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      double cost = 0.0;
      for (int i : SubsetMask(b).indices()) cost += sys.costs[i];
      if (cost <= sys.budget) best = std::max(best, obj.Evaluate(SubsetMask(b)));
    }
    const OracleAnswer a = OracleSolve({n, sys}, obj, Sense::kMaximize);
    EXPECT_NEAR(a.objective_value, best, 1e-9);
    EXPECT_TRUE(Feasible({n, sys}, a.strategy));
  }
}

TEST(DefenderOracleSpecTest, Validation) {
  EXPECT_THROW((DefenderOracleSpec{3, ExplicitSystem{}}).Validate(), Error);
  EXPECT_THROW((DefenderOracleSpec{2, BudgetSystem{{1, -1}, 1}}).Validate(), Error);
  EXPECT_THROW((DefenderOracleSpec{2, BudgetSystem{{1}, 1}}).Validate(), Error);
  EXPECT_THROW((DefenderOracleSpec{4, SeparableSystem{{Set({0, 1}), Set({1, 2})}}}).Validate(),
               Error);
  EXPECT_THROW((DefenderOracleSpec{2, BipartiteSystem{{Set({2})}}}).Validate(), Error);
  EXPECT_NO_THROW((DefenderOracleSpec{2, UniformMatroid{5}}).Validate());
}

}  // namespace
}  // namespace secgame
