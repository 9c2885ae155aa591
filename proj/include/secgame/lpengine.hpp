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

#ifndef SECGAME_LPENGINE_HPP_
#define SECGAME_LPENGINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "secgame/compact.hpp"
#include "secgame/error.hpp"
#include "secgame/lp.hpp"
#include "secgame/model.hpp"
#include "secgame/oracles.hpp"
#include "secgame/support.hpp"

namespace secgame {

enum class Backend { kColumnGeneration, kEllipsoid };

inline const char* ToString(Backend b) {
  return b == Backend::kColumnGeneration ? "colgen" : "ellipsoid";
}

struct SolverConfig {
  double feas_tol = 1e-7;
  double opt_tol = 1e-6;
  // 0 selects the backend default.
  int max_iters = 0;
  Backend backend = Backend::kColumnGeneration;
  // Distance (L1) at which an ellipsoid center counts as inside H_d.
  double ellipsoid_accept_tol = 1e-4;

  void Validate() const {
    if (!(feas_tol > 0.0) || !(opt_tol > 0.0)) {
      throw Error("solver tolerances must be positive");
    }
    if (max_iters < 0) throw Error("max_iters must be >= 1 (or 0 for default)");
  }
};

inline constexpr int kDefaultColumnGenerationIters = 500;

inline int ColumnGenerationLimit(const SolverConfig& cfg) {
  return cfg.backend == Backend::kColumnGeneration && cfg.max_iters > 0
             ? cfg.max_iters
             : kDefaultColumnGenerationIters;
}

inline int EllipsoidLimit(const SolverConfig& cfg, std::size_t support_size) {
  if (cfg.max_iters > 0) return cfg.max_iters;
  const double d = 2.0 * static_cast<double>(support_size) + 1.0;
  return static_cast<int>(10.0 * d * d);
}

// Either "inside", or a hyperplane with coeff·query > offset >= coeff·x for
// every feasible x, scaled to unit max-norm.
struct SeparationResult {
  bool inside = false;
  std::vector<double> coeff;
  double offset = 0.0;
  // L1 distance for membership queries, constraint excess for attacker cuts.
  double violation = 0.0;
  bool attacker_cut = false;
};

struct RestrictedMaster {
  std::vector<DefenderVertex> vertices;
  std::vector<double> lambda;
  std::vector<double> duals;
  int iterations = 0;
};

namespace detail {

inline double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double MaxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Distinct defender vertices keyed by their pure strategy.
class VertexPool {
 public:
  bool Add(const DefenderVertex& v) {
    if (!seen_.insert(v.source->bits()).second) return false;
    vertices_.push_back(v);
    return true;
  }
  bool Contains(SubsetMask m) const { return seen_.contains(m.bits()); }
  const std::vector<DefenderVertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

 private:
  std::vector<DefenderVertex> vertices_;
  std::unordered_set<std::uint64_t> seen_;
};

// Tiny index-ordered noise so that a flat pricing vector still moves.
inline void Perturb(std::vector<double>& w, double scale) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] += scale * static_cast<double>(k + 1) / static_cast<double>(w.size());
  }
}

struct MembershipOutcome {
  double distance = 0.0;
  std::vector<DefenderVertex> vertices;  // basic columns with lambda > 0
  std::vector<double> lambda;
  std::vector<double> pi;
  double sigma = 0.0;
  int iterations = 0;
};

// min sum(s+ + s-) s.t. sum_j lambda_j v_j + s+ - s- = point, sum lambda = 1,
// with columns priced by the linear DOP.
inline MembershipOutcome SolveMembership(const std::vector<double>& point,
                                         const DefenderOracleSpec& spec,
                                         const SupportSet& support,
                                         int iteration_cap, VertexPool& pool) {
  const std::size_t dim = 2 * support.size();
  if (point.size() != dim) throw Error("membership point must have length 2|S|");
  if (pool.size() == 0) {
    pool.Add(DopLinear(spec, point, support, Sense::kMaximize).vertex);
  }
  MembershipOutcome out;
  double best = std::numeric_limits<double>::infinity();
  for (int iter = 0;; ++iter) {
    const auto& verts = pool.vertices();
    const std::size_t nv = verts.size();
    LinearProgram lp;
    lp.sense = Sense::kMinimize;
    lp.objective.assign(nv + 2 * dim, 0.0);
    std::fill(lp.objective.begin() + nv, lp.objective.end(), 1.0);
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<double> row(nv + 2 * dim, 0.0);
      for (std::size_t j = 0; j < nv; ++j) {
        const auto& v = verts[j];
        row[j] = k < support.size() ? v.v1[k] : v.v2[k - support.size()];
      }
      row[nv + k] = 1.0;
      row[nv + dim + k] = -1.0;
      lp.Add(std::move(row), Relation::kEqual, point[k]);
    }
    std::vector<double> convex(nv + 2 * dim, 0.0);
    std::fill(convex.begin(), convex.begin() + nv, 1.0);
    lp.Add(std::move(convex), Relation::kEqual, 1.0);
    const LpSolution sol = SolveLp(lp);
    if (!sol.optimal()) {
      throw Error(std::string("membership master failed: ") +
                  ToString(sol.status));
    }
    out.distance = std::max(sol.objective, 0.0);
    best = std::min(best, out.distance);
    out.pi.assign(sol.duals.begin(), sol.duals.begin() + dim);
    out.sigma = sol.duals[dim];
    out.iterations = iter + 1;
    out.vertices.clear();
    out.lambda.clear();
    for (std::size_t j = 0; j < nv; ++j) {
      if (sol.x[j] > 1e-12) {
        out.vertices.push_back(verts[j]);
        out.lambda.push_back(sol.x[j]);
      }
    }
    if (out.distance <= 1e-12) return out;
    if (iter >= iteration_cap) {
      throw IterationLimitError(
          "membership iteration cap reached; best distance " +
              std::to_string(best),
          best);
    }
    std::vector<double> w = out.pi;
    OracleAnswer ans = DopLinear(spec, w, support, Sense::kMaximize);
    if (ans.objective_value + out.sigma <= 1e-9) return out;
    if (pool.Contains(ans.strategy)) {
      Perturb(w, 1e-12);
      ans = DopLinear(spec, w, support, Sense::kMaximize);
      if (pool.Contains(ans.strategy)) return out;
    }
    pool.Add(ans.vertex);
  }
}

inline SeparationResult MembershipToSeparation(const MembershipOutcome& m,
                                               double tol) {
  SeparationResult r;
  r.violation = m.distance;
  if (m.distance <= tol) {
    r.inside = true;
    return r;
  }
  const double scale = std::max(MaxAbs(m.pi), 1e-300);
  r.coeff = m.pi;
  for (double& c : r.coeff) c /= scale;
  r.offset = -m.sigma / scale;
  return r;
}

// Attacker vertex as the positions of support members inside A.
struct AttackRow {
  SubsetMask attack;
  std::vector<std::size_t> positions;
};

inline std::vector<AttackRow> AttackRows(const std::vector<SubsetMask>& attacks,
                                         const SupportSet& support) {
  std::vector<AttackRow> rows;
  rows.reserve(attacks.size());
  for (SubsetMask a : attacks) {
    AttackRow r{a, {}};
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (support[k].subset_of(a)) r.positions.push_back(k);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// Per-coordinate payoff of (q1, q2) for one player: b∘q1 + l∘q2 (attacker
// pairing) or l∘q1 + b∘q2 (defender pairing).
inline std::vector<double> CoordinatePayoff(const CompactWeights& w,
                                            Player player,
                                            const std::vector<double>& q1,
                                            const std::vector<double>& q2) {
  const auto& b = w.benefit(player);
  const auto& l = w.loss(player);
  std::vector<double> g(w.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    g[k] = player == Player::kAttacker ? b[k] * q1[k] + l[k] * q2[k]
                                       : l[k] * q1[k] + b[k] * q2[k];
  }
  return g;
}

inline double RowValue(const AttackRow& row, const std::vector<double>& g) {
  double s = 0.0;
  for (std::size_t k : row.positions) s += g[k];
  return s;
}

}  // namespace detail

inline SeparationResult Membership(const std::vector<double>& point,
                                   const DefenderOracleSpec& spec,
                                   const SupportSet& support,
                                   const SolverConfig& cfg) {
  detail::VertexPool pool;
  const auto m = detail::SolveMembership(point, spec, support,
                                         ColumnGenerationLimit(cfg), pool);
  return detail::MembershipToSeparation(m, cfg.feas_tol);
}

// Writes `point` as a convex combination of at most 2|S|+1 defender
// vertices. `warm` seeds the column pool.
inline std::pair<std::vector<double>, std::vector<DefenderVertex>>
ConvexDecompose(const std::vector<double>& point,
                const DefenderOracleSpec& spec, const SupportSet& support,
                const SolverConfig& cfg,
                const std::vector<DefenderVertex>& warm = {}) {
  detail::VertexPool pool;
  for (const auto& v : warm) pool.Add(v);
  const auto m = detail::SolveMembership(point, spec, support,
                                         ColumnGenerationLimit(cfg), pool);
  if (m.distance > cfg.feas_tol) {
    throw Error("point is not inside the defender polytope (L1 distance " +
                std::to_string(m.distance) + ")");
  }
  std::vector<double> lambda = m.lambda;
  double total = 0.0;
  for (double l : lambda) total += l;
  for (double& l : lambda) l /= total;
  return {lambda, m.vertices};
}

inline double U0Bound(const CompactWeights& w, const SupportSet& support) {
  return static_cast<double>(support.size()) *
             (detail::MaxAbs(w.attacker_benefit) +
              detail::MaxAbs(w.attacker_loss)) +
         2.0;
}

// Separation for the compact LP over z = (q1, q2, u): attacker inequalities
// first, then membership of (q1, q2) in H_d.
inline SeparationResult SeparationCompactLp(
    const std::vector<double>& q1, const std::vector<double>& q2, double u,
    const CompactWeights& w, const std::vector<SubsetMask>& attacks,
    const DefenderOracleSpec& spec, const SupportSet& support,
    const SolverConfig& cfg) {
  const std::size_t m = support.size();
  const std::vector<double> g =
      detail::CoordinatePayoff(w, Player::kAttacker, q1, q2);
  for (const auto& row : detail::AttackRows(attacks, support)) {
    const double excess = detail::RowValue(row, g) - u;
    if (excess > cfg.feas_tol) {
      SeparationResult r;
      r.attacker_cut = true;
      r.violation = excess;
      r.coeff.assign(2 * m + 1, 0.0);
      for (std::size_t k : row.positions) {
        r.coeff[k] = w.attacker_benefit[k];
        r.coeff[m + k] = w.attacker_loss[k];
      }
      r.coeff[2 * m] = -1.0;
      const double scale = detail::MaxAbs(r.coeff);
      for (double& c : r.coeff) c /= scale;
      return r;
    }
  }
  std::vector<double> point(q1);
  point.insert(point.end(), q2.begin(), q2.end());
  SeparationResult r = Membership(point, spec, support, cfg);
  if (!r.inside) r.coeff.push_back(0.0);
  return r;
}

struct CompactLpSolution {
  std::vector<double> q1;
  std::vector<double> q2;
  double u = 0.0;
  RestrictedMaster master;
  // Attacker mixed strategy over the attacks, read from the master duals.
  MixedStrategy attacker;
  Backend backend = Backend::kColumnGeneration;
  int iterations = 0;
};

namespace detail {

struct CompactMasterResult {
  double u = 0.0;
  std::vector<double> lambda;
  std::vector<double> attack_prob;
  double sigma = 0.0;
};

// min u s.t. sum_j lambda_j P(A, D_j) <= u for every attack, sum lambda = 1.
inline CompactMasterResult SolveCompactMaster(
    const std::vector<std::vector<double>>& columns, std::size_t num_attacks) {
  const std::size_t nv = columns.size();
  LinearProgram lp;
  lp.sense = Sense::kMinimize;
  lp.objective.assign(nv + 1, 0.0);
  lp.objective[nv] = 1.0;
  lp.free_variables = {static_cast<int>(nv)};
  for (std::size_t a = 0; a < num_attacks; ++a) {
    std::vector<double> row(nv + 1);
    for (std::size_t j = 0; j < nv; ++j) row[j] = columns[j][a];
    row[nv] = -1.0;
    lp.Add(std::move(row), Relation::kLessEqual, 0.0);
  }
  std::vector<double> convex(nv + 1, 1.0);
  convex[nv] = 0.0;
  lp.Add(std::move(convex), Relation::kEqual, 1.0);
  const LpSolution sol = SolveLp(lp);
  if (!sol.optimal()) {
    throw Error(std::string("compact master failed: ") + ToString(sol.status));
  }
  CompactMasterResult r;
  r.u = sol.objective;
  r.lambda.assign(sol.x.begin(), sol.x.begin() + nv);
  r.attack_prob.resize(num_attacks);
  for (std::size_t a = 0; a < num_attacks; ++a) {
    r.attack_prob[a] = std::max(-sol.duals[a], 0.0);
  }
  r.sigma = sol.duals[num_attacks];
  return r;
}

// Attacker payoff of every attack against one defender vertex.
inline std::vector<double> AttackColumn(const std::vector<AttackRow>& rows,
                                        const CompactWeights& w,
                                        const DefenderVertex& v) {
  const std::vector<double> g =
      CoordinatePayoff(w, Player::kAttacker, v.v1, v.v2);
  std::vector<double> col(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) col[a] = RowValue(rows[a], g);
  return col;
}

inline MixedStrategy ToMixed(const std::vector<AttackRow>& rows,
                             const std::vector<double>& prob) {
  double total = 0.0;
  for (double p : prob) total += p;
  MixedStrategy out;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (prob[a] > 0.0) out.push_back({rows[a].attack, prob[a] / total});
  }
  return out;
}

// Pricing vector for the compact master: attacker payoff weights scaled by
// the projected attacker point.
inline std::vector<double> PricingWeights(const std::vector<AttackRow>& rows,
                                          const std::vector<double>& prob,
                                          const CompactWeights& w) {
  const std::size_t m = w.size();
  std::vector<double> pbar(m, 0.0);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (prob[a] == 0.0) continue;
    for (std::size_t k : rows[a].positions) pbar[k] += prob[a];
  }
  std::vector<double> weights(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    weights[k] = pbar[k] * w.attacker_benefit[k];
    weights[m + k] = pbar[k] * w.attacker_loss[k];
  }
  return weights;
}

inline CompactLpSolution FinishCompact(const std::vector<AttackRow>& rows,
                                       const VertexPool& pool,
                                       const CompactMasterResult& master,
                                       std::size_t m) {
  CompactLpSolution out;
  out.u = master.u;
  out.q1.assign(m, 0.0);
  out.q2.assign(m, 0.0);
  const auto& verts = pool.vertices();
  for (std::size_t j = 0; j < verts.size(); ++j) {
    if (master.lambda[j] <= 1e-12) continue;
    out.master.vertices.push_back(verts[j]);
    out.master.lambda.push_back(master.lambda[j]);
    for (std::size_t k = 0; k < m; ++k) {
      out.q1[k] += master.lambda[j] * verts[j].v1[k];
      out.q2[k] += master.lambda[j] * verts[j].v2[k];
    }
  }
  double total = 0.0;
  for (double l : out.master.lambda) total += l;
  for (double& l : out.master.lambda) l /= total;
  out.master.duals = master.attack_prob;
  out.master.duals.push_back(master.sigma);
  out.attacker = ToMixed(rows, master.attack_prob);
  return out;
}

inline CompactLpSolution SolveCompactColumnGeneration(
    const CompactWeights& w, const std::vector<AttackRow>& rows,
    const DefenderOracleSpec& spec, const SupportSet& support,
    const SolverConfig& cfg) {
  VertexPool pool;
  std::vector<std::vector<double>> columns;
  {
    std::vector<double> uniform(rows.size(), 1.0 / rows.size());
    const auto ans = DopLinear(spec, PricingWeights(rows, uniform, w), support,
                               Sense::kMinimize);
    pool.Add(ans.vertex);
    columns.push_back(AttackColumn(rows, w, ans.vertex));
  }
  const int cap = ColumnGenerationLimit(cfg);
  for (int iter = 1;; ++iter) {
    const CompactMasterResult master = SolveCompactMaster(columns, rows.size());
    std::vector<double> weights = PricingWeights(rows, master.attack_prob, w);
    OracleAnswer ans = DopLinear(spec, weights, support, Sense::kMinimize);
    // Reduced cost of the new column is its payoff minus the convexity dual.
    const double reduced = ans.objective_value - master.sigma;
    bool add = reduced < -cfg.opt_tol * 1e-3 && !pool.Contains(ans.strategy);
    if (!add && reduced < -cfg.opt_tol * 1e-3) {
      detail::Perturb(weights, 1e-12);
      ans = DopLinear(spec, weights, support, Sense::kMinimize);
      add = !pool.Contains(ans.strategy);
    }
    if (!add) {
      CompactLpSolution out = FinishCompact(rows, pool, master, support.size());
      out.iterations = iter;
      out.master.iterations = iter;
      return out;
    }
    if (iter >= cap) {
      throw IterationLimitError(
          "column generation iteration cap reached; incumbent u = " +
              std::to_string(master.u),
          master.u);
    }
    pool.Add(ans.vertex);
    columns.push_back(AttackColumn(rows, w, ans.vertex));
  }
}

// Central-cut ellipsoid over (q1, q2, u). Centers within
// ellipsoid_accept_tol (L1) of H_d count as feasible; vertices met on the
// way are pooled and the answer is polished by one master solve over them.
inline CompactLpSolution SolveCompactEllipsoid(
    const CompactWeights& w, const std::vector<AttackRow>& rows,
    const DefenderOracleSpec& spec, const SupportSet& support,
    const SolverConfig& cfg) {
  const std::size_t m = support.size();
  const std::size_t d = 2 * m + 1;
  const double u0 = U0Bound(w, support);
  const double radius = std::sqrt(2.0 * m) + u0;
  std::vector<double> center(d, 0.5);
  center[d - 1] = 0.0;
  std::vector<double> P(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) P[i * d + i] = radius * radius;

  VertexPool pool;
  std::vector<std::vector<double>> columns;
  auto add_vertex = [&](const DefenderVertex& v) {
    if (pool.Add(v)) columns.push_back(AttackColumn(rows, w, v));
  };
  const int cap = EllipsoidLimit(cfg, m);
  const double dd = static_cast<double>(d);
  std::vector<double> a(d), pa(d);
  int iter = 0;
  for (; iter < cap; ++iter) {
    std::fill(a.begin(), a.end(), 0.0);
    const std::vector<double> q1(center.begin(), center.begin() + m);
    const std::vector<double> q2(center.begin() + m, center.begin() + 2 * m);
    const std::vector<double> g = CoordinatePayoff(w, Player::kAttacker, q1, q2);
    bool cut = false;
    double worst = 0.0;
    const AttackRow* worst_row = nullptr;
    for (const auto& row : rows) {
      const double excess = RowValue(row, g) - center[d - 1];
      if (excess > worst) {
        worst = excess;
        worst_row = &row;
      }
    }
    if (worst_row != nullptr) {
      for (std::size_t k : worst_row->positions) {
        a[k] = w.attacker_benefit[k];
        a[m + k] = w.attacker_loss[k];
      }
      a[d - 1] = -1.0;
      cut = true;
    } else {
      std::vector<double> point(center.begin(), center.end() - 1);
      const MembershipOutcome mem = SolveMembership(
          point, spec, support, kDefaultColumnGenerationIters, pool);
      while (columns.size() < pool.size()) {
        columns.push_back(
            AttackColumn(rows, w, pool.vertices()[columns.size()]));
      }
      if (mem.distance > cfg.ellipsoid_accept_tol) {
        for (std::size_t k = 0; k < 2 * m; ++k) a[k] = mem.pi[k];
        cut = true;
      }
    }
    if (!cut) a[d - 1] = 1.0;  // objective cut: keep u below the center
    // P a and a'P a.
    double apa = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      const double* row = &P[i * d];
      for (std::size_t j = 0; j < d; ++j) s += row[j] * a[j];
      pa[i] = s;
      apa += a[i] * s;
    }
    if (!(apa > 1e-30)) break;
    const double inv = 1.0 / std::sqrt(apa);
    for (std::size_t i = 0; i < d; ++i) {
      pa[i] *= inv;
      center[i] -= pa[i] / (dd + 1.0);
    }
    const double grow = dd * dd / (dd * dd - 1.0);
    const double shrink = 2.0 / (dd + 1.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        P[i * d + j] = grow * (P[i * d + j] - shrink * pa[i] * pa[j]);
      }
    }
    // Stop once the ellipsoid pins u far below the target accuracy.
    if (std::sqrt(std::max(P[d * d - 1], 0.0)) < cfg.opt_tol * 1e-3) break;
  }
  if (pool.size() == 0) {
    std::vector<double> point(center.begin(), center.end() - 1);
    add_vertex(DopLinear(spec, point, support, Sense::kMaximize).vertex);
  }
  const CompactMasterResult master = SolveCompactMaster(columns, rows.size());
  CompactLpSolution out = FinishCompact(rows, pool, master, m);
  out.backend = Backend::kEllipsoid;
  out.iterations = iter;
  out.master.iterations = iter;
  return out;
}

}  // namespace detail

// Minimizes the attacker's best compact payoff u over (q1, q2) in H_d.
inline CompactLpSolution SolveCompactLp(const CompactWeights& w,
                                        const DefenderOracleSpec& spec,
                                        const SupportSet& support,
                                        const AttackerSpace& space,
                                        const SolverConfig& cfg) {
  cfg.Validate();
  const auto rows = detail::AttackRows(space.Enumerate(), support);
  if (cfg.backend == Backend::kEllipsoid) {
    return detail::SolveCompactEllipsoid(w, rows, spec, support, cfg);
  }
  return detail::SolveCompactColumnGeneration(w, rows, spec, support, cfg);
}

}  // namespace secgame

#endif  // SECGAME_LPENGINE_HPP_
