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

#ifndef SECGAME_LP_HPP_
#define SECGAME_LP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "secgame/error.hpp"
#include "secgame/sense.hpp"

namespace secgame {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

inline const char* ToString(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration limit";
  }
  return "unknown";
}

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  std::vector<double> coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// Optimize objective·x subject to the constraints. Variables are
// nonnegative unless listed in free_variables.
struct LinearProgram {
  Sense sense = Sense::kMinimize;
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<int> free_variables;

  int num_variables() const { return static_cast<int>(objective.size()); }

  void Add(std::vector<double> coeffs, Relation relation, double rhs) {
    constraints.push_back({std::move(coeffs), relation, rhs});
  }
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  // Sensitivity of the optimal objective to each constraint's rhs.
  std::vector<double> duals;
  int iterations = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double cost_tol = 1e-9;
  double feasibility_tol = 1e-8;
  int max_iterations = 100000;
  int degenerate_switch = 50;
};

namespace detail {

// Dense two-phase tableau simplex on a minimization problem in standard
// form. Every row starts with a unit basic column (slack or artificial),
// whose tableau column later holds the matching column of the basis
// inverse.
class Tableau {
 public:
  Tableau(std::vector<std::vector<double>> rows, std::vector<double> cost,
          std::vector<int> basis, std::vector<char> artificial,
          const SimplexOptions& opt)
      : t_(std::move(rows)),
        cost_(std::move(cost)),
        basis_(std::move(basis)),
        artificial_(std::move(artificial)),
        opt_(opt) {
    m_ = t_.size();
    cols_ = cost_.size();
  }

  // Returns kOptimal, kInfeasible, kUnbounded or kIterationLimit.
  LpStatus Solve(int& iterations) {
    bool any_artificial = false;
    for (int b : basis_) any_artificial |= artificial_[b] != 0;
    if (any_artificial) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = 0; j < cols_; ++j) {
        if (artificial_[j]) phase1[j] = 1.0;
      }
      LoadCosts(phase1);
      const LpStatus s = Iterate(/*allow_artificial=*/true, iterations);
      if (s == LpStatus::kIterationLimit) return s;
      double scale = 1.0;
      for (std::size_t i = 0; i < m_; ++i) {
        scale = std::max(scale, std::abs(t_[i][cols_]));
      }
      if (-z_[cols_] > opt_.feasibility_tol * scale) {
        return LpStatus::kInfeasible;
      }
      DriveOutArtificials();
    }
    LoadCosts(cost_);
    return Iterate(/*allow_artificial=*/false, iterations);
  }

  double Value(std::size_t col) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] == static_cast<int>(col)) return t_[i][cols_];
    }
    return 0.0;
  }
  double ReducedCost(std::size_t col) const { return z_[col]; }
  double Objective() const { return -z_[cols_]; }

 private:
  void LoadCosts(const std::vector<double>& c) {
    z_.assign(cols_ + 1, 0.0);
    std::copy(c.begin(), c.end(), z_.begin());
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z_[j] -= cb * t_[i][j];
    }
  }

  void Pivot(std::size_t row, std::size_t col) {
    std::vector<double>& pr = t_[row];
    const double inv = 1.0 / pr[col];
    for (double& v : pr) v *= inv;
    pr[col] = 1.0;
    auto eliminate = [&](std::vector<double>& r) {
      const double f = r[col];
      if (f == 0.0) return;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (pr[j] != 0.0) r[j] -= f * pr[j];
      }
      r[col] = 0.0;
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != row) eliminate(t_[i]);
    }
    eliminate(z_);
    basis_[row] = static_cast<int>(col);
  }

  LpStatus Iterate(bool allow_artificial, int& iterations) {
    int degenerate_run = 0;
    while (true) {
      const bool bland = degenerate_run >= opt_.degenerate_switch;
      std::size_t enter = cols_;
      double most_negative = -opt_.cost_tol;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificial && artificial_[j]) continue;
        if (z_[j] < most_negative) {
          enter = j;
          if (bland) break;
          most_negative = z_[j];
        }
      }
      if (enter == cols_) return LpStatus::kOptimal;
      if (iterations >= opt_.max_iterations) return LpStatus::kIterationLimit;

      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t_[i][enter];
        if (a <= opt_.pivot_tol) continue;
        const double ratio = std::max(t_[i][cols_], 0.0) / a;
        const bool better =
            ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && leave < m_ &&
             (bland ? basis_[i] < basis_[leave]
                    : a > t_[leave][enter]));
        if (leave == m_ || better) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m_) return LpStatus::kUnbounded;
      degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      Pivot(leave, enter);
      ++iterations;
    }
  }

  void DriveOutArtificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!artificial_[basis_[i]]) continue;
      std::size_t best = cols_;
      double best_abs = opt_.pivot_tol;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (artificial_[j]) continue;
        if (std::abs(t_[i][j]) > best_abs) {
          best_abs = std::abs(t_[i][j]);
          best = j;
        }
      }
      // A row with no usable column is redundant; its artificial stays
      // basic at zero and never enters again.
      if (best != cols_) Pivot(i, best);
    }
  }

  std::vector<std::vector<double>> t_;
  std::vector<double> cost_;
  std::vector<int> basis_;
  std::vector<char> artificial_;
  std::vector<double> z_;
  SimplexOptions opt_;
  std::size_t m_ = 0;
  std::size_t cols_ = 0;
};

}  // namespace detail

inline LpSolution SolveLp(const LinearProgram& lp,
                          const SimplexOptions& opt = {}) {
  const int nv = lp.num_variables();
  std::vector<char> is_free(nv, 0);
  for (int j : lp.free_variables) {
    if (j < 0 || j >= nv) throw Error("free variable index out of range");
    is_free[j] = 1;
  }
  // Structural columns: each variable, plus a negative part for free ones.
  std::vector<int> neg_col(nv, -1);
  int structural = nv;
  for (int j = 0; j < nv; ++j) {
    if (is_free[j]) neg_col[j] = structural++;
  }
  const std::size_t m = lp.constraints.size();
  int slack_count = 0, artificial_count = 0;
  std::vector<char> flipped(m, 0);
  std::vector<Relation> rel(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    if (static_cast<int>(c.coeffs.size()) != nv) {
      throw Error("constraint " + std::to_string(i) + " has " +
                  std::to_string(c.coeffs.size()) + " coefficients, expected " +
                  std::to_string(nv));
    }
    rel[i] = c.relation;
    if (c.rhs < 0.0) {
      flipped[i] = 1;
      if (rel[i] == Relation::kLessEqual) {
        rel[i] = Relation::kGreaterEqual;
      } else if (rel[i] == Relation::kGreaterEqual) {
        rel[i] = Relation::kLessEqual;
      }
    }
    if (rel[i] != Relation::kEqual) ++slack_count;
    if (rel[i] != Relation::kLessEqual) ++artificial_count;
  }
  const std::size_t cols = structural + slack_count + artificial_count;
  std::vector<std::vector<double>> rows(m, std::vector<double>(cols + 1, 0.0));
  std::vector<double> cost(cols, 0.0);
  const double sign = lp.sense == Sense::kMaximize ? -1.0 : 1.0;
  for (int j = 0; j < nv; ++j) {
    cost[j] = sign * lp.objective[j];
    if (neg_col[j] >= 0) cost[neg_col[j]] = -cost[j];
  }
  std::vector<int> basis(m);
  std::vector<char> artificial(cols, 0);
  std::vector<int> unit_col(m);
  int next_slack = structural;
  int next_art = structural + slack_count;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    const double f = flipped[i] ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) {
      rows[i][j] = f * c.coeffs[j];
      if (neg_col[j] >= 0) rows[i][neg_col[j]] = -f * c.coeffs[j];
    }
    rows[i][cols] = f * c.rhs;
    if (rel[i] == Relation::kLessEqual) {
      rows[i][next_slack] = 1.0;
      unit_col[i] = next_slack++;
    } else {
      if (rel[i] == Relation::kGreaterEqual) rows[i][next_slack++] = -1.0;
      rows[i][next_art] = 1.0;
      artificial[next_art] = 1;
      unit_col[i] = next_art++;
    }
    basis[i] = unit_col[i];
  }

  detail::Tableau tab(std::move(rows), cost, basis, artificial, opt);
  LpSolution sol;
  sol.status = tab.Solve(sol.iterations);
  if (!sol.optimal()) return sol;
  sol.x.assign(nv, 0.0);
  for (int j = 0; j < nv; ++j) {
    sol.x[j] = tab.Value(j);
    if (neg_col[j] >= 0) sol.x[j] -= tab.Value(neg_col[j]);
  }
  sol.objective = sign * tab.Objective();
  sol.duals.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    // Unit columns cost 0, so their reduced cost is minus the row's dual.
    double y = -tab.ReducedCost(unit_col[i]);
    if (flipped[i]) y = -y;
    sol.duals[i] = sign * y;
  }
  return sol;
}

}  // namespace secgame

#endif  // SECGAME_LP_HPP_
