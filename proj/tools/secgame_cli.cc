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

// Command-line front end: solve, verify, gen-network, transform and
// oracle-test.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "secgame/io.hpp"
#include "secgame/secgame.hpp"

namespace {

using secgame::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitSolver = 3;

// Input problems (unreadable or invalid documents) are usage errors.
struct InputError : secgame::Error {
  using secgame::Error::Error;
};

void Emit(const Json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

secgame::GameInstance LoadGameOrThrow(const std::string& path) {
  try {
    return secgame::LoadGame(path);
  } catch (const secgame::Error& e) {
    throw InputError(e.what());
  }
}

std::string Bits(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += x > 0.5 ? '1' : '0';
  return s;
}

struct SolveOptions {
  std::string spec;
  std::string concept_name = "ne";
  double feas_tol = 1e-7;
  double opt_tol = 1e-6;
  int max_iters = 0;
  std::string backend = "colgen";
  std::uint64_t seed = 0;
  std::string output;
  bool dump_vertices = false;
};

secgame::SolverConfig ConfigFrom(const SolveOptions& o) {
  secgame::SolverConfig cfg;
  cfg.feas_tol = o.feas_tol;
  cfg.opt_tol = o.opt_tol;
  cfg.max_iters = o.max_iters;
  cfg.backend = o.backend == "ellipsoid" ? secgame::Backend::kEllipsoid
                                         : secgame::Backend::kColumnGeneration;
  return cfg;
}

int RunSolve(const SolveOptions& o) {
  const secgame::GameInstance game = LoadGameOrThrow(o.spec);
  const secgame::SolverConfig cfg = ConfigFrom(o);
  secgame::EquilibriumResult result;
  if (o.concept_name == "sse") {
    result = secgame::SolveSse(game, cfg);
  } else if (game.utilities.zero_sum) {
    result = secgame::SolveZeroSum(game, cfg);
  } else if (secgame::IsAdditive(game.utilities, game.attacker_space)) {
    result = secgame::SolveNeAdditive(game, cfg);
  } else {
    throw InputError(
        "Nash equilibria of non-zero-sum games with non-additive utilities "
        "are an open problem; use --concept sse or an additive spec");
  }
  Json doc = secgame::ResultToJson(result);
  if (o.dump_vertices) {
    const secgame::CompactModel model = secgame::BuildCompactModel(game);
    Json support = Json::array();
    for (secgame::SubsetMask m : model.support.members()) {
      support.push_back(secgame::SetToJson(m));
    }
    Json vertices = Json::array();
    for (const auto& [set, prob] : result.defender_mixed) {
      if (prob < 1e-9) continue;
      const auto v = secgame::MakeDefenderVertex(set, model.support);
      vertices.push_back(
          {{"set", secgame::SetToJson(set)}, {"v1", Bits(v.v1)}, {"v2", Bits(v.v2)}});
    }
    doc["support_set"] = support;
    doc["vertices"] = vertices;
  }
  Emit(doc, o.output);
  return kExitOk;
}

int RunVerify(const std::string& spec, const std::string& solution_path,
              double eps, const std::string& output) {
  const secgame::GameInstance game = LoadGameOrThrow(spec);
  secgame::SolutionDocument sol;
  try {
    sol = secgame::SolutionFromJson(secgame::ReadJsonFile(solution_path),
                                    game.n());
  } catch (const std::exception& e) {
    throw InputError(std::string("bad solution document: ") + e.what());
  }
  const secgame::VerificationReport report =
      sol.solution_concept == secgame::Concept::kStackelberg
          ? secgame::CheckSse(sol.attacker_mixed, sol.defender_mixed, game, eps)
          : secgame::CheckNe(sol.attacker_mixed, sol.defender_mixed, game, eps);
  Json doc;
  doc["concept"] = secgame::ToString(sol.solution_concept);
  doc["eps"] = eps;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_violation", secgame::Round9(c.violation)},
                      {"passed", c.passed}});
  }
  doc["checks"] = checks;
  doc["passed"] = report.passed();
  Emit(doc, output);
  return report.passed() ? kExitOk : kExitVerification;
}

int RunGenNetwork(const std::string& graph_path, const std::string& sets_path,
                  const std::string& value_fn, const std::vector<int>& targets,
                  const std::string& output) {
  if (value_fn != "sum-squares") {
    throw InputError("unknown value function '" + value_fn + "'");
  }
  std::ifstream graph_in(graph_path);
  if (!graph_in) throw InputError("cannot open " + graph_path);
  std::ifstream sets_in(sets_path);
  if (!sets_in) throw InputError("cannot open " + sets_path);
  secgame::Graph graph;
  std::vector<secgame::SubsetMask> sets;
  try {
    graph = secgame::ParseEdgeList(graph_in);
    sets = secgame::ParseSetList(sets_in);
  } catch (const secgame::Error& e) {
    throw InputError(e.what());
  }
  const secgame::SetFunction f = secgame::NetworkValueBenefits(graph, sets);
  // Node sets are re-keyed by target position when a target list is given.
  auto key = [&](secgame::SubsetMask nodes) {
    if (targets.empty()) return nodes;
    secgame::SubsetMask out;
    for (int node : nodes.indices()) {
      bool found = false;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (targets[t] == node) {
          out = out | secgame::SubsetMask::Singleton(static_cast<int>(t));
          found = true;
        }
      }
      if (!found) {
        throw InputError("node " + std::to_string(node) +
                         " is not in the target list");
      }
    }
    return out;
  };
  Json sparse = Json::array();
  for (const auto& [nodes, value] : f.entries()) {
    sparse.push_back({{"set", secgame::SetToJson(key(nodes))},
                      {"b_a", secgame::Round9(value)}});
  }
  Json doc;
  doc["network_value"] = graph.SquaredComponentValue();
  doc["utilities"] = {{"sparse", sparse}};
  Emit(doc, output);
  return kExitOk;
}

int RunTransform(const std::string& spec, const std::string& output) {
  const secgame::GameInstance game = LoadGameOrThrow(spec);
  const secgame::CompactModel model = secgame::BuildCompactModel(game);
  Json doc;
  doc["common_utilities"] = {
      {"benefit_attacker",
       secgame::SetFunctionToJson(model.common.benefit_attacker, "value")},
      {"loss_attacker",
       secgame::SetFunctionToJson(model.common.loss_attacker, "value")},
      {"benefit_defender",
       secgame::SetFunctionToJson(model.common.benefit_defender, "value")},
      {"loss_defender",
       secgame::SetFunctionToJson(model.common.loss_defender, "value")}};
  Json support = Json::array();
  for (secgame::SubsetMask m : model.support.members()) {
    support.push_back(secgame::SetToJson(m));
  }
  doc["support_set"] = support;
  doc["additive"] = secgame::IsAdditive(model.common);
  Emit(doc, output);
  return kExitOk;
}

int RunOracleTest(const std::string& spec, int trials, std::uint64_t seed,
                  const std::string& output) {
  const secgame::GameInstance game = LoadGameOrThrow(spec);
  const secgame::CompactModel model = secgame::BuildCompactModel(game);
  std::vector<secgame::SubsetMask> system;
  try {
    system = secgame::EnumerateSystem(game.defender);
  } catch (const secgame::Error& e) {
    throw InputError(std::string("oracle-test needs an enumerable system: ") +
                     e.what());
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t m = model.support.size();
  double max_gap = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> w(2 * m);
    for (double& x : w) x = unit(rng);
    const auto ans = secgame::DopLinear(game.defender, w, model.support,
                                        secgame::Sense::kMaximize);
    double best = -1e300;
    for (secgame::SubsetMask d : system) {
      const auto v = secgame::MakeDefenderVertex(d, model.support);
      double value = 0.0;
      const auto stacked = v.Stacked();
      for (std::size_t k = 0; k < stacked.size(); ++k) value += w[k] * stacked[k];
      best = std::max(best, value);
    }
    max_gap = std::max(max_gap, std::abs(best - ans.objective_value));
  }
  Json doc;
  doc["system"] = game.defender.Name();
  doc["trials"] = trials;
  doc["system_size"] = system.size();
  doc["max_gap"] = trials > 0 ? Json(secgame::Round9(max_gap)) : Json(nullptr);
  Emit(doc, output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver for security games with set-valued utilities"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute an equilibrium");
  solve_cmd->add_option("spec", solve.spec, "Game spec (JSON)")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--concept", solve.concept_name, "Solution concept")
      ->check(CLI::IsMember({"ne", "sse"}))
      ->required();
  solve_cmd->add_option("--feas-tol", solve.feas_tol, "Feasibility tolerance")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--opt-tol", solve.opt_tol, "Optimality tolerance")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iters", solve.max_iters,
                        "Iteration cap (0 = backend default)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--backend", solve.backend, "LP backend")
      ->check(CLI::IsMember({"colgen", "ellipsoid"}));
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("-o,--output", solve.output, "Output file (default stdout)");
  solve_cmd->add_flag("--dump-vertices", solve.dump_vertices,
                      "Include the support set and defender vertices");

  std::string verify_spec, verify_solution, verify_output;
  double verify_eps = 1e-6;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution document");
  verify_cmd->add_option("spec", verify_spec, "Game spec (JSON)")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--solution", verify_solution, "Solution document")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--eps", verify_eps, "Allowed violation")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("-o,--output", verify_output, "Output file");

  std::string graph_path, sets_path, value_fn = "sum-squares", network_output;
  std::vector<int> targets;
  auto* network_cmd = app.add_subcommand(
      "gen-network", "Benefit entries from network-value reduction");
  network_cmd->add_option("graph", graph_path, "Edge list, one 'u v' per line")->required();
  network_cmd->add_option("sets", sets_path, "Candidate node sets, one per line")->required();
  network_cmd->add_option("--value", value_fn, "Value function")
      ->check(CLI::IsMember({"sum-squares"}));
  network_cmd->add_option("--targets", targets,
                          "Nodes that become targets 0, 1, ... in order")
      ->delimiter(',');
  network_cmd->add_option("-o,--output", network_output, "Output file");

  std::string transform_spec, transform_output;
  auto* transform_cmd = app.add_subcommand(
      "transform", "Print common utilities and the support set");
  transform_cmd->add_option("spec", transform_spec, "Game spec (JSON)")->required()->check(CLI::ExistingFile);
  transform_cmd->add_option("-o,--output", transform_output, "Output file");

  std::string oracle_spec, oracle_output;
  int trials = 100;
  std::uint64_t oracle_seed = 0;
  auto* oracle_cmd = app.add_subcommand(
      "oracle-test", "Compare the oracle against enumeration on random weights");
  oracle_cmd->add_option("spec", oracle_spec, "Game spec (JSON)")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--trials", trials, "Number of random weight vectors")
      ->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--seed", oracle_seed, "Random seed");
  oracle_cmd->add_option("-o,--output", oracle_output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return RunSolve(solve);
    if (*verify_cmd) {
      return RunVerify(verify_spec, verify_solution, verify_eps, verify_output);
    }
    if (*network_cmd) {
      return RunGenNetwork(graph_path, sets_path, value_fn, targets,
                           network_output);
    }
    if (*transform_cmd) return RunTransform(transform_spec, transform_output);
    if (*oracle_cmd) {
      return RunOracleTest(oracle_spec, trials, oracle_seed, oracle_output);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const secgame::Error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
