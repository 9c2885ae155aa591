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

#ifndef SECGAME_IO_HPP_
#define SECGAME_IO_HPP_

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"
#include "secgame/compact.hpp"
#include "secgame/error.hpp"
#include "secgame/game.hpp"
#include "secgame/model.hpp"
#include "secgame/oracles.hpp"
#include "secgame/solvers.hpp"
#include "secgame/support.hpp"

namespace secgame {

using Json = nlohmann::ordered_json;

// Rounds to 9 significant digits and folds -0 into 0.
inline double Round9(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline Json SetToJson(SubsetMask m) {
  Json arr = Json::array();
  for (int i : m.indices()) arr.push_back(i);
  return arr;
}

inline SubsetMask SetFromJson(const Json& j, int n) {
  if (!j.is_array()) throw Error("a set must be an array of target indices");
  SubsetMask m;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error("target indices must be integers");
    const int i = v.get<int>();
    if (i < 0 || i >= n) {
      throw Error("target index " + std::to_string(i) + " outside [0, " +
                  std::to_string(n) + ")");
    }
    m = m | SubsetMask::Singleton(i);
  }
  return m;
}

inline Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

namespace detail {

inline double Number(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number()) throw Error(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

inline std::vector<SubsetMask> SetList(const Json& j, int n) {
  if (!j.is_array()) throw Error("expected a list of sets");
  std::vector<SubsetMask> out;
  for (const auto& s : j) out.push_back(SetFromJson(s, n));
  return out;
}

}  // namespace detail

inline DefenderOracleSpec DefenderSpecFromJson(const Json& j, int n) {
  if (!j.is_object() || !j.contains("type")) {
    throw Error("defender_system needs a 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  DefenderOracleSpec spec;
  spec.n = n;
  if (type == "matroid") {
    spec.system = UniformMatroid{static_cast<int>(detail::Number(j, "k"))};
  } else if (type == "explicit") {
    spec.system = ExplicitSystem{detail::SetList(j.at("sets"), n)};
  } else if (type == "bipartite") {
    spec.system = BipartiteSystem{detail::SetList(j.at("resources"), n)};
  } else if (type == "budget") {
    BudgetSystem b;
    b.costs = j.at("costs").get<std::vector<double>>();
    b.budget = detail::Number(j, "budget");
    spec.system = b;
  } else if (type == "separable") {
    spec.system = SeparableSystem{detail::SetList(j.at("components"), n)};
  } else {
    throw Error("unknown defender system type '" + type + "'");
  }
  spec.Validate();
  return spec;
}

inline Json DefenderSpecToJson(const DefenderOracleSpec& spec) {
  Json j;
  j["type"] = spec.Name();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        auto sets = [](const std::vector<SubsetMask>& v) {
          Json a = Json::array();
          for (SubsetMask m : v) a.push_back(SetToJson(m));
          return a;
        };
        if constexpr (std::is_same_v<T, UniformMatroid>) {
          j["k"] = s.k;
        } else if constexpr (std::is_same_v<T, ExplicitSystem>) {
          j["sets"] = sets(s.sets);
        } else if constexpr (std::is_same_v<T, BipartiteSystem>) {
          j["resources"] = sets(s.resources);
        } else if constexpr (std::is_same_v<T, BudgetSystem>) {
          j["costs"] = s.costs;
          j["budget"] = s.budget;
        } else {
          j["components"] = sets(s.components);
        }
      },
      spec.system);
  return j;
}

// Loads a game spec document. Zero-sum games may omit the defender's
// utilities; they are completed from the attacker's.
inline GameInstance GameFromJson(const Json& j) {
  if (!j.is_object()) throw Error("game spec must be an object");
  const int n = static_cast<int>(detail::Number(j, "n"));
  SubsetMask::CheckCount(n);
  const int budget = static_cast<int>(detail::Number(j, "attacker_budget"));
  if (budget < 1) throw Error("attacker_budget must be at least 1");
  const bool zero_sum = j.value("zero_sum", false);
  if (!j.contains("utilities")) throw Error("missing field 'utilities'");
  const Json& u = j.at("utilities");

  SetFunction f[4];
  bool present[4] = {false, false, false, false};
  static const char* kAdditiveKeys[4] = {"benefit_attacker", "loss_attacker",
                                         "benefit_defender", "loss_defender"};
  static const char* kSparseKeys[4] = {"b_a", "l_a", "b_d", "l_d"};
  if (u.contains("additive")) {
    const Json& add = u.at("additive");
    for (int k = 0; k < 4; ++k) {
      if (!add.contains(kAdditiveKeys[k])) continue;
      auto v = add.at(kAdditiveKeys[k]).get<std::vector<double>>();
      if (static_cast<int>(v.size()) != n) {
        throw Error(std::string("additive ") + kAdditiveKeys[k] +
                    " must have n entries");
      }
      f[k] = SetFunction::Additive(std::move(v));
      present[k] = true;
    }
  }
  if (u.contains("sparse")) {
    for (const auto& entry : u.at("sparse")) {
      const SubsetMask m = SetFromJson(entry.at("set"), n);
      for (int k = 0; k < 4; ++k) {
        if (!entry.contains(kSparseKeys[k])) continue;
        const double v = entry.at(kSparseKeys[k]).get<double>();
        if (m.empty() && v != 0.0) {
          throw Error("utility at the empty set must be 0");
        }
        f[k].Set(m, v);
        present[k] = true;
      }
    }
  }
  GameInstance game;
  game.attacker_space = AttackerSpace(n, budget);
  if (zero_sum) {
    game.utilities = ZeroSumComplete(f[0], f[1], game.attacker_space);
    if (present[2] || present[3]) {
      UtilityProfile given{f[0], f[1], f[2], f[3], true};
      ValidateProfile(given, game.attacker_space);
    }
  } else {
    game.utilities = {f[0], f[1], f[2], f[3], false};
  }
  if (!j.contains("defender_system")) {
    throw Error("missing field 'defender_system'");
  }
  game.defender = DefenderSpecFromJson(j.at("defender_system"), n);
  game.Validate();
  return game;
}

inline GameInstance LoadGame(const std::string& path) {
  try {
    return GameFromJson(ReadJsonFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

inline Json MixedToJson(const MixedStrategy& s) {
  Json arr = Json::array();
  for (const auto& [set, prob] : s) {
    if (prob < 1e-9) continue;
    arr.push_back({{"set", SetToJson(set)}, {"prob", Round9(prob)}});
  }
  return arr;
}

inline MixedStrategy MixedFromJson(const Json& j, int n) {
  MixedStrategy out;
  for (const auto& e : j) {
    out.push_back({SetFromJson(e.at("set"), n), e.at("prob").get<double>()});
  }
  return out;
}

inline Json VectorToJson(const std::vector<double>& v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(Round9(x));
  return arr;
}

inline Json ResultToJson(const EquilibriumResult& r) {
  Json j;
  j["concept"] = ToString(r.solution_concept);
  j["defender_mixed"] = MixedToJson(r.defender_mixed);
  j["attacker_mixed"] = MixedToJson(r.attacker_mixed);
  if (!r.attacker_marginals.empty()) {
    j["attacker_marginals"] = VectorToJson(r.attacker_marginals);
  }
  j["defender_value"] = Round9(r.defender_value);
  j["attacker_value"] = Round9(r.attacker_value);
  j["coverage"] = VectorToJson(r.coverage);
  Json d;
  d["backend"] = r.diagnostics.backend;
  d["iterations"] = r.diagnostics.iterations;
  d["support_size"] = r.diagnostics.support_size;
  for (const auto& [k, v] : r.diagnostics.metrics) d[k] = Round9(v);
  if (!r.diagnostics.notes.empty()) d["notes"] = r.diagnostics.notes;
  j["diagnostics"] = d;
  return j;
}

struct SolutionDocument {
  Concept solution_concept = Concept::kNash;
  MixedStrategy defender_mixed;
  MixedStrategy attacker_mixed;
};

inline SolutionDocument SolutionFromJson(const Json& j, int n) {
  SolutionDocument s;
  const std::string c = j.value("concept", std::string("ne"));
  if (c == "ne") {
    s.solution_concept = Concept::kNash;
  } else if (c == "sse") {
    s.solution_concept = Concept::kStackelberg;
  } else {
    throw Error("unknown concept '" + c + "'");
  }
  s.defender_mixed = MixedFromJson(j.at("defender_mixed"), n);
  s.attacker_mixed = MixedFromJson(j.at("attacker_mixed"), n);
  return s;
}

inline Json SetFunctionToJson(const SetFunction& f, const char* key) {
  Json arr = Json::array();
  for (const auto& [m, v] : f.entries()) {
    arr.push_back({{"set", SetToJson(m)}, {key, Round9(v)}});
  }
  return arr;
}

// Reads candidate node sets, one per line as whitespace-separated indices.
inline std::vector<SubsetMask> ParseSetList(std::istream& in) {
  std::vector<SubsetMask> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    SubsetMask m;
    std::string tok;
    while (fields >> tok) {
      int i = 0;
      try {
        std::size_t used = 0;
        i = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error("malformed node index '" + tok + "' at line " +
                    std::to_string(line_no));
      }
      if (i < 0 || i >= kMaxTargets) {
        throw Error("node index out of range at line " +
                    std::to_string(line_no));
      }
      m = m | SubsetMask::Singleton(i);
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace secgame

#endif  // SECGAME_IO_HPP_
