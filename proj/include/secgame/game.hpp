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

#ifndef SECGAME_GAME_HPP_
#define SECGAME_GAME_HPP_

#include <string>

#include "secgame/compact.hpp"
#include "secgame/error.hpp"
#include "secgame/model.hpp"
#include "secgame/oracles.hpp"
#include "secgame/support.hpp"

namespace secgame {

struct GameInstance {
  AttackerSpace attacker_space;
  DefenderOracleSpec defender;
  UtilityProfile utilities;

  int n() const { return attacker_space.n; }
  int budget() const { return attacker_space.c; }

  void Validate() const {
    if (defender.n != attacker_space.n) {
      throw Error("defender system has n = " + std::to_string(defender.n) +
                  " but the game has n = " + std::to_string(attacker_space.n));
    }
    defender.Validate();
    const SubsetMask full = SubsetMask::Full(n());
    for (const SetFunction* f :
         {&utilities.benefit_attacker, &utilities.loss_attacker,
          &utilities.benefit_defender, &utilities.loss_defender}) {
      if (f->has_per_target() &&
          static_cast<int>(f->per_target().size()) != n()) {
        throw Error("per-target utility vector must have length n");
      }
      for (const auto& [mask, value] : f->entries()) {
        if (!mask.subset_of(full)) {
          throw Error("utility key " + mask.ToString() +
                      " references a target >= n");
        }
        if (mask.size() > budget()) {
          throw Error("utility key " + mask.ToString() +
                      " is larger than the attacker budget " +
                      std::to_string(budget()));
        }
      }
    }
    ValidateProfile(utilities, attacker_space);
  }
};

// Support set and weights derived from a game's utilities.
struct CompactModel {
  CommonUtilityProfile common;
  SupportSet support;
  CompactWeights weights;
};

inline CompactModel BuildCompactModel(const GameInstance& game) {
  CompactModel m;
  m.common = CommonUtilities(game.utilities, game.attacker_space);
  m.support = SupportSetOf(m.common, game.n());
  m.weights = BuildWeights(m.common, m.support);
  return m;
}

}  // namespace secgame

#endif  // SECGAME_GAME_HPP_
