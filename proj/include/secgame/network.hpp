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

#ifndef SECGAME_NETWORK_HPP_
#define SECGAME_NETWORK_HPP_

#include <cstdint>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "secgame/error.hpp"
#include "secgame/set_function.hpp"
#include "secgame/subset.hpp"

namespace secgame {

// Simple undirected graph on nodes 0..num_nodes-1.
class Graph {
 public:
  explicit Graph(int num_nodes = 0) : adjacency_(num_nodes) {
    if (num_nodes < 0) throw Error("node count must be nonnegative");
  }

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<int>& neighbors(int u) const { return adjacency_.at(u); }

  void AddEdge(int u, int v) {
    CheckNode(u);
    CheckNode(v);
    if (u == v) throw Error("self loop at node " + std::to_string(u));
    for (int w : adjacency_[u]) {
      if (w == v) return;
    }
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }

  // Sum of squared connected-component sizes after deleting `removed`.
  std::int64_t SquaredComponentValue(const std::vector<int>& removed = {}) const {
    const int n = num_nodes();
    std::vector<char> gone(n, 0);
    for (int r : removed) {
      CheckNode(r);
      gone[r] = 1;
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    std::int64_t total = 0;
    for (int s = 0; s < n; ++s) {
      if (gone[s] || seen[s]) continue;
      std::int64_t size = 0;
      seen[s] = 1;
      stack.push_back(s);
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        ++size;
        for (int v : adjacency_[u]) {
          if (!gone[v] && !seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
          }
        }
      }
      total += size * size;
    }
    return total;
  }

 private:
  void CheckNode(int u) const {
    if (u < 0 || u >= num_nodes()) {
      throw Error("node " + std::to_string(u) + " out of range [0, " +
                  std::to_string(num_nodes()) + ")");
    }
  }

  std::vector<std::vector<int>> adjacency_;
};

// Reads "u v" pairs, one per line. Blank lines and lines starting with '#'
// are skipped. The node count is one more than the largest index unless
// `num_nodes` is given.
inline Graph ParseEdgeList(std::istream& in, int num_nodes = -1) {
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int line_no = 0;
  int max_node = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = 0, v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw Error("malformed edge at line " + std::to_string(line_no) +
                  ": expected 'u v'");
    }
    if (u < 0 || v < 0 || u > 1'000'000 || v > 1'000'000) {
      throw Error("node index out of range at line " +
                  std::to_string(line_no));
    }
    if (u == v) {
      throw Error("self loop at line " + std::to_string(line_no));
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_node = std::max<int>(max_node, static_cast<int>(std::max(u, v)));
  }
  if (num_nodes < 0) num_nodes = max_node + 1;
  if (max_node >= num_nodes) {
    throw Error("edge list references node " + std::to_string(max_node) +
                " but the graph has " + std::to_string(num_nodes) + " nodes");
  }
  Graph g(num_nodes);
  for (auto [u, v] : edges) g.AddEdge(u, v);
  return g;
}

// f(U) = value(G) - value(G \ U) for each candidate node set U, where value
// is the sum of squared component sizes.
inline SetFunction NetworkValueBenefits(
    const Graph& graph, const std::vector<SubsetMask>& candidate_sets) {
  const std::int64_t base = graph.SquaredComponentValue();
  SetFunction f;
  for (SubsetMask u : candidate_sets) {
    if (u.empty()) continue;
    if (u.span() > graph.num_nodes()) {
      throw Error("candidate set " + u.ToString() +
                  " references a node outside the graph");
    }
    f.Set(u, static_cast<double>(base - graph.SquaredComponentValue(u.indices())));
  }
  return f;
}

}  // namespace secgame

#endif  // SECGAME_NETWORK_HPP_
