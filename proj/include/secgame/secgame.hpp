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

#ifndef SECGAME_SECGAME_HPP_
#define SECGAME_SECGAME_HPP_

#include "secgame/assignment.hpp"
#include "secgame/compact.hpp"
#include "secgame/error.hpp"
#include "secgame/game.hpp"
#include "secgame/lp.hpp"
#include "secgame/lpengine.hpp"
#include "secgame/model.hpp"
#include "secgame/network.hpp"
#include "secgame/oracles.hpp"
#include "secgame/random_instances.hpp"
#include "secgame/sense.hpp"
#include "secgame/set_function.hpp"
#include "secgame/solvers.hpp"
#include "secgame/subset.hpp"
#include "secgame/support.hpp"
#include "secgame/verify.hpp"

#endif  // SECGAME_SECGAME_HPP_
