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

#include "secgame/lpengine.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "secgame/game.hpp"
#include "secgame/random_instances.hpp"
#include "secgame/verify.hpp"

namespace secgame {
namespace {

using Vec = std::vector<double>;

SubsetMask Set(std::initializer_list<int> idx) {
  return SubsetMask::FromIndices(std::vector<int>(idx));
}

Vec Mix(const std::vector<std::pair<double, DefenderVertex>>& parts) {
  Vec out(parts.front().second.Stacked().size(), 0.0);
  for (const auto& [w, v] : parts) {
    const Vec s = v.Stacked();
    for (std::size_t k = 0; k < s.size(); ++k) out[k] += w * s[k];
  }
  return out;
}

double Residual(const Vec& point, const Vec& lambda,
                const std::vector<DefenderVertex>& vertices) {
  Vec rebuilt(point.size(), 0.0);
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    const Vec s = vertices[j].Stacked();
    for (std::size_t k = 0; k < s.size(); ++k) rebuilt[k] += lambda[j] * s[k];
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < point.size(); ++k) {
    worst = std::max(worst, std::abs(rebuilt[k] - point[k]));
  }
  return worst;
}

const SolverConfig kConfig;

TEST(MembershipTest, VertexIsInside) {
  const SupportSet s(4, {Set({0, 1}), Set({2, 3})});
  const DefenderOracleSpec spec{4, UniformMatroid{2}};
  for (SubsetMask d : EnumerateSystem(spec)) {
    EXPECT_TRUE(Membership(MakeDefenderVertex(d, s).Stacked(), spec, s, kConfig).inside);
  }
}

TEST(MembershipTest, MidpointIsInside) {
  const SupportSet s(3, {Set({0, 1})});
  const DefenderOracleSpec spec{3, UniformMatroid{1}};
  const Vec mid = Mix({{0.5, MakeDefenderVertex(Set({0}), s)},
                       {0.5, MakeDefenderVertex(Set({2}), s)}});
  EXPECT_TRUE(Membership(mid, spec, s, kConfig).inside);
}

TEST(MembershipTest, ComplementarityViolationIsSeparated) {
  const SupportSet s = SupportSet::Singletons(2);
  const DefenderOracleSpec spec{2, UniformMatroid{2}};
  const Vec point{1.0, 0.0, 0.5, 1.0};  // q1 + q2 = 1.5 on target 0
  const SeparationResult r = Membership(point, spec, s, kConfig);
  ASSERT_FALSE(r.inside);
  EXPECT_GT(detail::Dot(r.coeff, point), r.offset);
  EXPECT_NEAR(detail::MaxAbs(r.coeff), 1.0, 1e-12);
  for (SubsetMask d : EnumerateSystem(spec)) {
    EXPECT_LE(detail::Dot(r.coeff, MakeDefenderVertex(d, s).Stacked()), r.offset + 1e-9);
  }
}

TEST(MembershipTest, SeparationIsSound) {
  InstanceGenerator gen(31);
  int separated = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.UniformInt(1, 8);
    const DefenderOracleSpec spec = trial % 3 == 0   ? gen.RandomMatroid(n)
                                    : trial % 3 == 1 ? gen.RandomBudget(n)
                                                     : gen.RandomExplicit(n, 4);
    std::vector<SubsetMask> extra;
    if (n >= 2) extra.push_back(Set({0, 1}));
    const SupportSet s(n, extra);
    Vec point(2 * s.size());
    for (auto& x : point) x = gen.Uniform(0, 1);
    const SeparationResult r = Membership(point, spec, s, kConfig);
    if (r.inside) continue;
    ++separated;
    EXPECT_GT(detail::Dot(r.coeff, point), r.offset);
    for (SubsetMask d : EnumerateSystem(spec)) {
      EXPECT_LE(detail::Dot(r.coeff, MakeDefenderVertex(d, s).Stacked()), r.offset + 1e-9)
          << "trial " << trial;
    }
  }
  EXPECT_GT(separated, 30);
}

class CompactFixture : public ::testing::Test {
 protected:
  // Zero-sum game on 3 targets with a pair synergy, matroid k = 1.
  void SetUp() override {
    SetFunction b = SetFunction::Additive({1, 2, 3});
    b.Set(Set({0, 1}), 5.0);
    game_.attacker_space = AttackerSpace(3, 2);
    game_.defender = {3, UniformMatroid{1}};
    game_.utilities = ZeroSumComplete(b, SetFunction::Additive({0, 0, 0}),
                                      game_.attacker_space);
    model_ = BuildCompactModel(game_);
  }
  GameInstance game_;
  CompactModel model_;
};

TEST_F(CompactFixture, LargeUAtVertexIsInside) {
  const DefenderVertex v = MakeDefenderVertex(Set({0}), model_.support);
  const SeparationResult r =
      SeparationCompactLp(v.v1, v.v2, 1e6, model_.weights, game_.attacker_space.Enumerate(),
                          game_.defender, model_.support, kConfig);
  EXPECT_TRUE(r.inside);
}

TEST_F(CompactFixture, LowUReturnsMostValuableAttack) {
  // Covering {0}: attack {1,2} earns 5 and {0,1} earns 2.
  const DefenderVertex v = MakeDefenderVertex(Set({0}), model_.support);
  const SeparationResult r =
      SeparationCompactLp(v.v1, v.v2, 4.0, model_.weights, game_.attacker_space.Enumerate(),
                          game_.defender, model_.support, kConfig);
  ASSERT_FALSE(r.inside);
  EXPECT_TRUE(r.attacker_cut);
  EXPECT_NEAR(r.violation, 1.0, 1e-12);
  Vec z = v.Stacked();
  z.push_back(4.0);
  EXPECT_GT(detail::Dot(r.coeff, z), r.offset);
}

TEST_F(CompactFixture, OutsidePointGetsMembershipCut) {
  const std::size_t m = model_.support.size();
  const Vec q1(m, 1.0), q2(m, 1.0);
  const SeparationResult r =
      SeparationCompactLp(q1, q2, 1e6, model_.weights, game_.attacker_space.Enumerate(),
                          game_.defender, model_.support, kConfig);
  ASSERT_FALSE(r.inside);
  EXPECT_FALSE(r.attacker_cut);
  ASSERT_EQ(r.coeff.size(), 2 * m + 1);
  EXPECT_EQ(r.coeff.back(), 0.0);
}

TEST(U0BoundTest, Formula) {
  CompactWeights w{{2, -1, 0}, {1, 0, 0.5}, {0, 0, 0}, {0, 0, 0}};
  EXPECT_DOUBLE_EQ(U0Bound(w, SupportSet(2, {Set({0, 1})})), 11.0);
  CompactWeights zero{{0}, {0}, {0}, {0}};
  EXPECT_DOUBLE_EQ(U0Bound(zero, SupportSet::Singletons(1)), 2.0);
}

TEST(U0BoundTest, BoundsEveryVertexPair) {
  InstanceGenerator gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.UniformInt(1, 8);
    const AttackerSpace space(n, gen.UniformInt(1, 2));
    const UtilityProfile p = gen.RandomZeroSumProfile(space);
    const CommonUtilityProfile common = CommonUtilities(p, space);
    const SupportSet s = SupportSetOf(common, n);
    const CompactWeights w = BuildWeights(common, s);
    const double bound = U0Bound(w, s);
    for (SubsetMask a : space.Enumerate()) {
      const auto pa = ProjectAttacker({{a, 1.0}}, s);
      for (std::uint64_t d = 0; d < (std::uint64_t{1} << n); ++d) {
        const auto qd = ProjectDefender({{SubsetMask(d), 1.0}}, s);
        ASSERT_LT(std::abs(CompactPayoff(pa, qd, w, Player::kAttacker)), bound);
      }
    }
  }
}

TEST(U0BoundTest, NoAttackerCutJustBelowBound) {
  InstanceGenerator gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.UniformInt(1, 8);
    GameInstance game{AttackerSpace(n, gen.UniformInt(1, 2)), gen.RandomMatroid(n), {}};
    game.utilities = gen.RandomZeroSumProfile(game.attacker_space);
    const CompactModel model = BuildCompactModel(game);
    const std::size_t m = model.support.size();
    Vec q1(m), q2(m);
    for (auto& x : q1) x = gen.Uniform(0, 1);
    for (auto& x : q2) x = gen.Uniform(0, 1);
    const SeparationResult r = SeparationCompactLp(
        q1, q2, U0Bound(model.weights, model.support) - 1.0, model.weights,
        game.attacker_space.Enumerate(), game.defender, model.support, kConfig);
    EXPECT_FALSE(r.attacker_cut) << "trial " << trial;
  }
}

GameInstance SymmetricTwoTargets() {
  GameInstance g{AttackerSpace(2, 1), {2, UniformMatroid{1}}, {}};
  g.utilities = ZeroSumComplete(SetFunction::Additive({1, 1}),
                                SetFunction::Additive({0, 0}), g.attacker_space);
  return g;
}

double CompactValue(const GameInstance& game, const SolverConfig& cfg) {
  const CompactModel model = BuildCompactModel(game);
  return SolveCompactLp(model.weights, game.defender, model.support, game.attacker_space, cfg).u;
}

TEST(SolveCompactLpTest, SymmetricGameHasValueHalf) {
  const GameInstance g = SymmetricTwoTargets();
  const CompactModel model = BuildCompactModel(g);
  const CompactLpSolution sol =
      SolveCompactLp(model.weights, g.defender, model.support, g.attacker_space, kConfig);
  EXPECT_NEAR(sol.u, 0.5, 1e-9);
  EXPECT_NEAR(sol.q2[0], 0.5, 1e-9);
  EXPECT_NEAR(sol.q2[1], 0.5, 1e-9);
  double total = 0.0;
  for (double l : sol.master.lambda) total += l;
  EXPECT_NEAR(total, 1.0, 1e-9);
  ValidateDistribution(sol.attacker);
}

TEST(SolveCompactLpTest, FullCoverageKillsBenefit) {
  GameInstance g{AttackerSpace(4, 2), {4, UniformMatroid{4}}, {}};
  SetFunction b = SetFunction::Additive({1, 2, 3, 4});
  b.Set(Set({1, 3}), 9.0);
  g.utilities = ZeroSumComplete(b, SetFunction::Additive({0, 0, 0, 0}), g.attacker_space);
  EXPECT_NEAR(CompactValue(g, kConfig), 0.0, 1e-9);
}

TEST(SolveCompactLpTest, EmptyAttackOnly) {
  GameInstance g{AttackerSpace(3, 0), {3, UniformMatroid{1}}, {}};
  g.utilities = ZeroSumComplete(SetFunction::Additive({1, 2, 3}),
                                SetFunction::Additive({0, 0, 0}), g.attacker_space);
  EXPECT_NEAR(CompactValue(g, kConfig), 0.0, 1e-12);
}

TEST(SolveCompactLpTest, MatchesNormalFormValue) {
  InstanceGenerator gen(51);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = gen.UniformInt(2, 6);
    GameInstance g{AttackerSpace(n, gen.UniformInt(1, 2)), {}, {}};
    switch (trial % 3) {
      case 0: g.defender = gen.RandomMatroid(n); break;
      case 1: g.defender = gen.RandomBudget(n); break;
      default: g.defender = gen.RandomExplicit(n, 4); break;
    }
    g.utilities = gen.RandomZeroSumProfile(g.attacker_space);
    const double expected = BruteMinimax(ExpandNormalForm(g)).value;
    EXPECT_NEAR(CompactValue(g, kConfig), expected, 1e-6) << "trial " << trial;
  }
}

TEST(SolveCompactLpTest, BackendsAgree) {
  InstanceGenerator gen(61);
  SolverConfig ellipsoid;
  ellipsoid.backend = Backend::kEllipsoid;
  for (int trial = 0; trial < 6; ++trial) {
    const int n = gen.UniformInt(2, 4);
    GameInstance g{AttackerSpace(n, gen.UniformInt(1, 2)), gen.RandomMatroid(n), {}};
    g.utilities = gen.RandomZeroSumProfile(g.attacker_space);
    EXPECT_NEAR(CompactValue(g, ellipsoid), CompactValue(g, kConfig), kConfig.opt_tol)
        << "trial " << trial;
  }
  EXPECT_NEAR(CompactValue(SymmetricTwoTargets(), ellipsoid), 0.5, 1e-6);
}

TEST(ConvexDecomposeTest, VertexDecomposesToItself) {
  const SupportSet s(3, {Set({0, 2})});
  const DefenderOracleSpec spec{3, UniformMatroid{2}};
  const DefenderVertex v = MakeDefenderVertex(Set({0, 2}), s);
  const auto [lambda, vertices] = ConvexDecompose(v.Stacked(), spec, s, kConfig);
  ASSERT_EQ(vertices.size(), 1u);
  EXPECT_NEAR(lambda[0], 1.0, 1e-12);
  EXPECT_EQ(*vertices[0].source, Set({0, 2}));
}

TEST(ConvexDecomposeTest, TwoVertexMixture) {
  const SupportSet s(3, {Set({0, 1})});
  const DefenderOracleSpec spec{3, UniformMatroid{2}};
  const Vec point = Mix({{0.3, MakeDefenderVertex(Set({0}), s)},
                         {0.7, MakeDefenderVertex(Set({1, 2}), s)}});
  const auto [lambda, vertices] = ConvexDecompose(point, spec, s, kConfig);
  EXPECT_LT(Residual(point, lambda, vertices), 1e-7);
  EXPECT_LE(vertices.size(), 2 * s.size() + 1);
}

TEST(ConvexDecomposeTest, UniformFourVertexMixture) {
  const SupportSet s(3, {Set({0, 1})});
  ASSERT_EQ(s.size(), 4u);
  const DefenderOracleSpec spec{3, UniformMatroid{3}};
  const Vec point = Mix({{0.25, MakeDefenderVertex(Set({0}), s)},
                         {0.25, MakeDefenderVertex(Set({1}), s)},
                         {0.25, MakeDefenderVertex(Set({0, 2}), s)},
                         {0.25, MakeDefenderVertex(Set({1, 2}), s)}});
  const auto [lambda, vertices] = ConvexDecompose(point, spec, s, kConfig);
  EXPECT_LE(vertices.size(), 9u);
  EXPECT_LT(Residual(point, lambda, vertices), 1e-7);
  double total = 0.0;
  for (double l : lambda) {
    EXPECT_GE(l, 0.0);
    total += l;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(ConvexDecomposeTest, OutsidePointThrows) {
  const SupportSet s = SupportSet::Singletons(2);
  const DefenderOracleSpec spec{2, UniformMatroid{1}};
  EXPECT_THROW(ConvexDecompose(Vec{0, 0, 1, 1}, spec, s, kConfig), Error);
}

TEST(ConvexDecomposeTest, RandomMixturesRespectBound) {
  InstanceGenerator gen(71);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.UniformInt(2, 7);
    const DefenderOracleSpec spec = gen.RandomMatroid(n);
    const SupportSet s(n, {Set({0, 1})});
    const auto feasible = EnumerateSystem(spec);
    std::vector<std::pair<double, DefenderVertex>> parts;
    double total = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double w = gen.Uniform(0.05, 1.0);
      total += w;
      parts.emplace_back(w, MakeDefenderVertex(
                                feasible[gen.UniformInt(0, static_cast<int>(feasible.size()) - 1)],
                                s));
    }
    for (auto& part : parts) part.first /= total;
    const Vec point = Mix(parts);
    const auto [lambda, vertices] = ConvexDecompose(point, spec, s, kConfig);
    EXPECT_LE(vertices.size(), 2 * s.size() + 1);
    EXPECT_LT(Residual(point, lambda, vertices), kConfig.feas_tol);
  }
}

TEST(SolverConfigTest, Validation) {
  SolverConfig cfg;
  cfg.feas_tol = 0.0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = SolverConfig{};
  cfg.max_iters = -1;
  EXPECT_THROW(cfg.Validate(), Error);
  EXPECT_EQ(EllipsoidLimit(SolverConfig{}, 2), 250);
  EXPECT_EQ(ColumnGenerationLimit(SolverConfig{}), 500);
}

}  // namespace
}  // namespace secgame
