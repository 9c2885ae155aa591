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

#ifndef SECGAME_SET_FUNCTION_HPP_
#define SECGAME_SET_FUNCTION_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "secgame/error.hpp"
#include "secgame/subset.hpp"

namespace secgame {

// A real-valued function on subsets of targets.
//
// Values come from two layers: an optional per-target vector (the function
// is additive where no explicit entry exists) and a sparse map of explicit
// entries that override it. With no per-target vector, absent keys evaluate
// to 0. The value at the empty set is always 0.
class SetFunction {
 public:
  using Entries = std::map<SubsetMask, double, CanonicalLess>;

  SetFunction() = default;

  static SetFunction Additive(std::vector<double> per_target) {
    SetFunction f;
    f.per_target_ = std::move(per_target);
    return f;
  }
  static SetFunction Sparse(const std::vector<std::pair<SubsetMask, double>>&
                                entries) {
    SetFunction f;
    for (const auto& [mask, value] : entries) f.Set(mask, value);
    return f;
  }

  void Set(SubsetMask mask, double value) {
    if (mask.empty()) {
      if (value != 0.0) {
        throw Error("set function value at the empty set must be 0");
      }
      return;
    }
    entries_[mask] = value;
  }

  double operator()(SubsetMask mask) const {
    if (mask.empty()) return 0.0;
    if (auto it = entries_.find(mask); it != entries_.end()) return it->second;
    if (per_target_.empty()) return 0.0;
    double sum = 0.0;
    for (int i : mask.indices()) {
      if (i < static_cast<int>(per_target_.size())) sum += per_target_[i];
    }
    return sum;
  }

  const Entries& entries() const { return entries_; }
  const std::vector<double>& per_target() const { return per_target_; }
  bool has_per_target() const { return !per_target_.empty(); }

  // Pointwise negation, used to complete zero-sum profiles.
  SetFunction Negated() const {
    SetFunction g;
    g.per_target_ = per_target_;
    for (double& v : g.per_target_) v = -v;
    for (const auto& [mask, value] : entries_) g.entries_[mask] = -value;
    return g;
  }

 private:
  std::vector<double> per_target_;
  Entries entries_;
};

// Möbius transform over a downward-closed domain:
// g(U) = sum over V ⊆ U of (-1)^{|U \ V|} f(V).
// The result is sparse and stores only entries with |g(U)| > 0.
inline SetFunction MobiusTransform(const SetFunction& f,
                                   const std::vector<SubsetMask>& domain) {
  std::unordered_map<SubsetMask, double> g;
  g.reserve(domain.size() * 2);
  for (SubsetMask u : domain) g.emplace(u, f(u));
  for (SubsetMask u : domain) {
    for (int i : u.indices()) {
      const SubsetMask down = u - SubsetMask::Singleton(i);
      if (!down.empty() && !g.contains(down)) {
        throw Error("domain is not downward closed: missing subset " +
                    down.ToString() + " of " + u.ToString());
      }
    }
  }
  // In-place transform, one target at a time. Step i never modifies sets
  // without i, so g[u \ {i}] is read before it could change.
  std::vector<SubsetMask> order = domain;
  std::sort(order.begin(), order.end(), CanonicalLess{});
  int max_bit = 0;
  for (SubsetMask u : order) max_bit = std::max(max_bit, u.span());
  for (int i = 0; i < max_bit; ++i) {
    for (SubsetMask u : order) {
      if (!u.contains(i)) continue;
      const SubsetMask down = u - SubsetMask::Singleton(i);
      const double below = down.empty() ? 0.0 : g.at(down);
      g[u] -= below;
    }
  }
  SetFunction out;
  for (SubsetMask u : order) {
    const double v = g.at(u);
    if (v != 0.0) out.Set(u, v);
  }
  return out;
}

// Zeta transform at one subset: sum over V ⊆ U of g(V).
inline double ZetaTransform(const SetFunction& g, SubsetMask u) {
  if (!g.has_per_target() &&
      (u.size() > 20 || g.entries().size() < (std::size_t{1} << u.size()))) {
    double sum = 0.0;
    for (const auto& [mask, value] : g.entries()) {
      if (mask.subset_of(u)) sum += value;
    }
    return sum;
  }
  double sum = 0.0;
  ForEachSubmask(u, [&](SubsetMask v) { sum += g(v); });
  return sum;
}

}  // namespace secgame

#endif  // SECGAME_SET_FUNCTION_HPP_
