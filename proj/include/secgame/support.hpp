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

#ifndef SECGAME_SUPPORT_HPP_
#define SECGAME_SUPPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "secgame/error.hpp"
#include "secgame/subset.hpp"

namespace secgame {

// Ordered collection of target subsets that index the compact coordinates.
// Always holds every singleton of [n], never the empty set, and is kept in
// canonical order (cardinality, then bitmask).
class SupportSet {
 public:
  SupportSet() = default;

  SupportSet(int n, std::vector<SubsetMask> members) : n_(n) {
    SubsetMask::CheckCount(n);
    for (int i = 0; i < n; ++i) members.push_back(SubsetMask::Singleton(i));
    std::sort(members.begin(), members.end(), CanonicalLess{});
    members.erase(std::unique(members.begin(), members.end()), members.end());
    const SubsetMask full = SubsetMask::Full(n);
    for (SubsetMask m : members) {
      if (m.empty()) throw Error("support set cannot contain the empty set");
      if (!m.subset_of(full)) {
        throw Error("support member " + m.ToString() + " exceeds n = " +
                    std::to_string(n));
      }
    }
    members_ = std::move(members);
    for (std::size_t k = 0; k < members_.size(); ++k) {
      index_.emplace(members_[k], k);
    }
    singleton_.resize(n);
    for (int i = 0; i < n; ++i) {
      singleton_[i] = index_.at(SubsetMask::Singleton(i));
    }
  }

  // All singletons of [n] only.
  static SupportSet Singletons(int n) { return SupportSet(n, {}); }

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<SubsetMask>& members() const { return members_; }
  SubsetMask operator[](std::size_t k) const { return members_[k]; }

  bool contains(SubsetMask m) const { return index_.contains(m); }
  std::size_t IndexOf(SubsetMask m) const {
    auto it = index_.find(m);
    if (it == index_.end()) {
      throw Error("subset " + m.ToString() + " is not in the support set");
    }
    return it->second;
  }
  // Position of the singleton {i}.
  std::size_t SingletonIndex(int i) const { return singleton_.at(i); }

  // Largest member cardinality.
  int degree() const { return members_.empty() ? 0 : members_.back().size(); }

 private:
  int n_ = 0;
  std::vector<SubsetMask> members_;
  std::unordered_map<SubsetMask, std::size_t> index_;
  std::vector<std::size_t> singleton_;
};

}  // namespace secgame

#endif  // SECGAME_SUPPORT_HPP_
