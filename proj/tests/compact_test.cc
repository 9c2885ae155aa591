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

#include "secgame/compact.hpp"

#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "secgame/random_instances.hpp"

namespace secgame {
namespace {

using Vec = std::vector<double>;

SubsetMask Set(std::initializer_list<int> idx) {
  return SubsetMask::FromIndices(std::vector<int>(idx));
}

// Singletons {0},{1},{2} followed by the pair {0,1}.
SupportSet ThreeWithPair() { return SupportSet(3, {Set({0, 1})}); }

TEST(BuildWeightsTest, PlacesCommonUtilities) {
  CommonUtilityProfile common;
  common.benefit_attacker.Set(Set({0, 1}), 2.0);
  const SupportSet s(2, {Set({0, 1})});
  const CompactWeights w = BuildWeights(common, s);
  EXPECT_EQ(w.attacker_benefit, (Vec{0, 0, 2}));
  EXPECT_EQ(w.defender_benefit, (Vec{0, 0, 0}));
}

TEST(BuildWeightsTest, AdditiveProfileUsesSingletonsOnly) {
  const AttackerSpace space(3, 2);
  const UtilityProfile p = ZeroSumComplete(SetFunction::Additive({3, 4, 5}),
                                           SetFunction::Additive({1, 1, 1}), space);
  const CommonUtilityProfile common = CommonUtilities(p, space);
  const SupportSet s = SupportSetOf(common, 3);
  ASSERT_EQ(s.size(), 3u);
  const CompactWeights w = BuildWeights(common, s);
  EXPECT_EQ(w.attacker_benefit, (Vec{3, 4, 5}));
  EXPECT_EQ(w.defender_loss, (Vec{-3, -4, -5}));
}

TEST(BuildWeightsTest, ZeroProfile) {
  const CompactWeights w = BuildWeights(CommonUtilityProfile{}, SupportSet::Singletons(2));
  for (const Vec* v : {&w.attacker_benefit, &w.attacker_loss, &w.defender_benefit,
                       &w.defender_loss}) {
    EXPECT_EQ(*v, (Vec{0, 0}));
  }
}

TEST(AttackerVertexTest, SubsetIndicators) {
  const SupportSet s = ThreeWithPair();
  EXPECT_EQ(MakeAttackerVertex(Set({0, 1}), s, 2).coords, (Vec{1, 1, 0, 1}));
  EXPECT_EQ(MakeAttackerVertex(SubsetMask(), s, 2).coords, (Vec{0, 0, 0, 0}));
  EXPECT_EQ(MakeAttackerVertex(Set({2}), s, 2).coords, (Vec{0, 0, 1, 0}));
  EXPECT_THROW(MakeAttackerVertex(Set({0, 1, 2}), s, 2), Error);
}

TEST(AttackerVertexTest, DistinctVerticesPerAttack) {
  const AttackerSpace space(5, 2);
  const SupportSet s(5, {Set({0, 1}), Set({2, 4})});
  std::set<Vec> seen;
  for (SubsetMask a : space.Enumerate()) seen.insert(MakeAttackerVertex(a, s, 2).coords);
  EXPECT_EQ(seen.size(), space.Size());
}

TEST(DefenderVertexTest, Indicators) {
  const SupportSet s = ThreeWithPair();
  const DefenderVertex v = MakeDefenderVertex(Set({1}), s);
  EXPECT_EQ(v.v1, (Vec{1, 0, 1, 0}));
  EXPECT_EQ(v.v2, (Vec{0, 1, 0, 0}));
  const DefenderVertex full = MakeDefenderVertex(SubsetMask::Full(3), s);
  EXPECT_EQ(full.v1, (Vec{0, 0, 0, 0}));
  EXPECT_EQ(full.v2, (Vec{1, 1, 1, 1}));
  const DefenderVertex none = MakeDefenderVertex(SubsetMask(), s);
  EXPECT_EQ(none.v1, (Vec{1, 1, 1, 1}));
  EXPECT_EQ(none.v2, (Vec{0, 0, 0, 0}));
}

TEST(VertexToStrategyTest, Examples) {
  const SupportSet s = ThreeWithPair();
  EXPECT_EQ(VertexToStrategy(MakeDefenderVertex(Set({1}), s), 3, s), Set({1}));
  DefenderVertex all_uncovered{Vec{1, 1, 1, 0}, {}, std::nullopt};
  EXPECT_EQ(VertexToStrategy(all_uncovered, 3, s), SubsetMask());
  DefenderVertex all_covered{Vec{0, 0, 0, 0}, {}, std::nullopt};
  EXPECT_EQ(VertexToStrategy(all_covered, 3, s), SubsetMask::Full(3));
}

TEST(VertexToStrategyTest, RejectsFractionalPoint) {
  const SupportSet s = SupportSet::Singletons(2);
  DefenderVertex half{Vec{0.5, 1}, Vec{0.5, 0}, std::nullopt};
  EXPECT_THROW(VertexToStrategy(half, 2, s), Error);
  DefenderVertex broken{Vec{1, 1}, Vec{1, 0}, std::nullopt};
  EXPECT_THROW(VertexToStrategy(broken, 2, s), Error);
}

TEST(VertexToStrategyTest, RoundTripAndComplementarity) {
  for (int n = 1; n <= 12; ++n) {
    std::vector<SubsetMask> extra;
    if (n >= 2) extra.push_back(Set({0, n - 1}));
    if (n >= 3) extra.push_back(Set({0, 1, 2}));
    const SupportSet s(n, extra);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const DefenderVertex v = MakeDefenderVertex(SubsetMask(b), s);
      ASSERT_EQ(VertexToStrategy(v, n, s), SubsetMask(b));
      for (int i = 0; i < n; ++i) {
        const std::size_t k = s.SingletonIndex(i);
        ASSERT_EQ(v.v1[k] + v.v2[k], 1.0);
      }
    }
  }
}

TEST(ProjectTest, AttackerExamples) {
  const SupportSet s = ThreeWithPair();
  EXPECT_EQ(ProjectAttacker({{Set({0, 1}), 1.0}}, s).p,
            MakeAttackerVertex(Set({0, 1}), s, 2).coords);
  EXPECT_EQ(ProjectAttacker({{Set({0}), 0.5}, {Set({1}), 0.5}}, s).p,
            (Vec{0.5, 0.5, 0, 0}));
  const Vec third = ProjectAttacker(
      {{Set({0}), 1.0 / 3}, {Set({1}), 1.0 / 3}, {Set({2}), 1.0 / 3}}, s).p;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(third[i], 1.0 / 3, 1e-15);
  EXPECT_THROW(ProjectAttacker({{Set({0}), 0.6}}, s), Error);
  EXPECT_THROW(ProjectAttacker({{Set({0}), 1.5}, {Set({1}), -0.5}}, s), Error);
}

TEST(ProjectTest, DefenderExamples) {
  const SupportSet s = ThreeWithPair();
  const CompactDefenderPoint point = ProjectDefender({{Set({2}), 1.0}}, s);
  const DefenderVertex v = MakeDefenderVertex(Set({2}), s);
  EXPECT_EQ(point.q1, v.v1);
  EXPECT_EQ(point.q2, v.v2);

  const SupportSet two = SupportSet::Singletons(2);
  const CompactDefenderPoint half = ProjectDefender({{Set({0}), 0.5}, {Set({1}), 0.5}}, two);
  EXPECT_DOUBLE_EQ(half.q1[0], 0.5);
  EXPECT_DOUBLE_EQ(half.q2[0], 0.5);
  EXPECT_THROW(ProjectDefender({}, two), Error);
}

TEST(ProjectTest, DefenderComplementarityForRandomDistributions) {
  InstanceGenerator gen(3);
  const SupportSet s(6, {Set({0, 1}), Set({1, 2, 3})});
  for (int trial = 0; trial < 50; ++trial) {
    MixedStrategy q;
    double total = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double w = gen.Uniform(0.01, 1.0);
      q.push_back({SubsetMask(static_cast<std::uint64_t>(gen.UniformInt(0, 63))), w});
      total += w;
    }
    for (auto& ws : q) ws.prob /= total;
    const CompactDefenderPoint p = ProjectDefender(q, s);
    for (int i = 0; i < 6; ++i) {
      const std::size_t k = s.SingletonIndex(i);
      EXPECT_NEAR(p.q1[k] + p.q2[k], 1.0, 1e-12);
    }
  }
}

// Single-target example with B_a({0}) = 5, L_a({0}) = -2 on two targets.
TEST(CompactPayoffTest, PureExamples) {
  const AttackerSpace space(2, 1);
  const UtilityProfile profile = ZeroSumComplete(
      SetFunction::Additive({5, 7}), SetFunction::Additive({-2, -3}), space);
  const CommonUtilityProfile common = CommonUtilities(profile, space);
  const SupportSet s = SupportSetOf(common, 2);
  const CompactWeights w = BuildWeights(common, s);
  const auto attack = ProjectAttacker({{Set({0}), 1.0}}, s);
  EXPECT_DOUBLE_EQ(
      CompactPayoff(attack, ProjectDefender({{Set({0}), 1.0}}, s), w, Player::kAttacker),
      -2.0);
  EXPECT_DOUBLE_EQ(
      CompactPayoff(attack, ProjectDefender({{Set({1}), 1.0}}, s), w, Player::kAttacker),
      5.0);
  const CompactWeights zero = BuildWeights(CommonUtilityProfile{}, s);
  EXPECT_DOUBLE_EQ(
      CompactPayoff(attack, ProjectDefender({{Set({1}), 1.0}}, s), zero, Player::kDefender),
      0.0);
  EXPECT_THROW(CompactPayoff(CompactAttackerPoint{{1.0}},
                             ProjectDefender({{Set({1}), 1.0}}, s), w, Player::kAttacker),
               Error);
}

TEST(DirectPayoffTest, Examples) {
  const AttackerSpace space(2, 2);
  SetFunction b = SetFunction::Additive({3, 4});
  SetFunction l = SetFunction::Additive({-1, -2});
  const UtilityProfile p = ZeroSumComplete(b, l, space);
  EXPECT_DOUBLE_EQ(DirectPayoff(Set({0, 1}), Set({1}), p, Player::kAttacker), 3 - 2);
  EXPECT_DOUBLE_EQ(DirectPayoff(Set({0, 1}), Set({0, 1}), p, Player::kAttacker), -3);
  EXPECT_DOUBLE_EQ(DirectPayoff(Set({0, 1}), SubsetMask(), p, Player::kDefender), -7);
}

TEST(DecompositionTest, CompactMatchesDirectOnPurePairs) {
  InstanceGenerator gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.UniformInt(1, 8);
    const AttackerSpace space(n, gen.UniformInt(1, 2));
    const UtilityProfile profile = trial % 2 == 0 ? gen.RandomZeroSumProfile(space)
                                                  : gen.RandomGeneralProfile(space);
    const CommonUtilityProfile common = CommonUtilities(profile, space);
    const SupportSet s = SupportSetOf(common, n);
    const CompactWeights w = BuildWeights(common, s);
    for (SubsetMask a : space.Enumerate()) {
      const auto pa = ProjectAttacker({{a, 1.0}}, s);
      for (std::uint64_t d = 0; d < (std::uint64_t{1} << n); ++d) {
        const auto qd = ProjectDefender({{SubsetMask(d), 1.0}}, s);
        for (Player who : {Player::kAttacker, Player::kDefender}) {
          ASSERT_NEAR(CompactPayoff(pa, qd, w, who),
                      DirectPayoff(a, SubsetMask(d), profile, who), 1e-9)
              << "trial " << trial << " A=" << a.ToString() << " D=" << d;
        }
      }
    }
  }
}

TEST(CoverageMarginalsTest, Examples) {
  EXPECT_EQ(CoverageMarginals({{Set({0, 2}), 1.0}}, 3), (Vec{1, 0, 1}));
  EXPECT_EQ(CoverageMarginals({{Set({0}), 0.5}, {Set({1}), 0.5}}, 3), (Vec{0.5, 0.5, 0}));
  EXPECT_EQ(CoverageMarginals({{SubsetMask(), 1.0}}, 2), (Vec{0, 0}));
}

}  // namespace
}  // namespace secgame
