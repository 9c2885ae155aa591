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

#ifndef SECGAME_ASSIGNMENT_HPP_
#define SECGAME_ASSIGNMENT_HPP_

#include <cstddef>
#include <limits>
#include <vector>

#include "secgame/error.hpp"

namespace secgame {

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// by the Hungarian method with potentials. Returns the column of each row.
inline std::vector<int> SolveAssignment(
    const std::vector<std::vector<double>>& cost) {
  const int rows = static_cast<int>(cost.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(cost[0].size());
  if (cols < rows) throw Error("assignment needs at least as many columns as rows");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is a virtual start.
  std::vector<double> row_pot(rows + 1, 0.0), col_pot(cols + 1, 0.0);
  std::vector<int> match(cols + 1, 0), way(cols + 1, 0);
  for (int r = 1; r <= rows; ++r) {
    match[0] = r;
    int col = 0;
    std::vector<double> min_slack(cols + 1, kInf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[col] = 1;
      const int row = match[col];
      double delta = kInf;
      int next = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double slack = cost[row - 1][j - 1] - row_pot[row] - col_pot[j];
        if (slack < min_slack[j]) {
          min_slack[j] = slack;
          way[j] = col;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          next = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          row_pot[match[j]] += delta;
          col_pot[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      col = next;
    } while (match[col] != 0);
    do {
      const int prev = way[col];
      match[col] = match[prev];
      col = prev;
    } while (col != 0);
  }
  std::vector<int> assignment(rows, -1);
  for (int j = 1; j <= cols; ++j) {
    if (match[j] != 0) assignment[match[j] - 1] = j - 1;
  }
  return assignment;
}

}  // namespace secgame

#endif  // SECGAME_ASSIGNMENT_HPP_
