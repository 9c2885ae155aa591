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

#ifndef SECGAME_SUBSET_HPP_
#define SECGAME_SUBSET_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "secgame/error.hpp"

namespace secgame {

inline constexpr int kMaxTargets = 64;

// A subset of the targets {0, ..., n-1} stored as a 64-bit mask.
class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint64_t bits) : bits_(bits) {}

  static SubsetMask Singleton(int i) {
    CheckIndex(i);
    return SubsetMask(std::uint64_t{1} << i);
  }
  static SubsetMask FromIndices(const std::vector<int>& indices) {
    SubsetMask m;
    for (int i : indices) m = m | Singleton(i);
    return m;
  }
  // The full set [n].
  static SubsetMask Full(int n) {
    CheckCount(n);
    return SubsetMask(n == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr bool subset_of(SubsetMask other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // Highest target index present plus one; 0 for the empty set.
  int span() const { return 64 - std::countl_zero(bits_); }
  SubsetMask complement(int n) const { return SubsetMask(~bits_) & Full(n); }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  // Renders as "{0,2,5}".
  std::string ToString() const {
    std::string s = "{";
    bool first = true;
    for (int i : indices()) {
      if (!first) s += ',';
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  }

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ | b.bits_);
  }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & b.bits_);
  }
  // Set difference a \ b.
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;

  static void CheckCount(int n) {
    if (n < 0 || n > kMaxTargets) {
      throw Error("target count " + std::to_string(n) +
                  " outside [0, 64]");
    }
  }
  static void CheckIndex(int i) {
    if (i < 0 || i >= kMaxTargets) {
      throw Error("target index " + std::to_string(i) + " outside [0, 64)");
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

// Canonical order: by cardinality, then by ascending bitmask.
struct CanonicalLess {
  bool operator()(SubsetMask a, SubsetMask b) const {
    const int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return a.bits() < b.bits();
  }
};

inline std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// Calls fn(mask) for every subset of [n] with exactly k elements, in
// ascending bitmask order (Gosper's hack).
template <typename Fn>
void ForEachSubsetOfSize(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(SubsetMask());
    return;
  }
  const std::uint64_t limit_bit = n == 64 ? 0 : (std::uint64_t{1} << n);
  std::uint64_t x = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  while (true) {
    fn(SubsetMask(x));
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    if (r == 0) break;  // wrapped past 64 bits
    x = (((r ^ x) >> 2) / c) | r;
    if (limit_bit != 0 && x >= limit_bit) break;
  }
}

// Calls fn(sub) for every sub-mask of `mask`, including the empty set and
// `mask` itself.
template <typename Fn>
void ForEachSubmask(SubsetMask mask, Fn&& fn) {
  const std::uint64_t m = mask.bits();
  std::uint64_t s = m;
  while (true) {
    fn(SubsetMask(s));
    if (s == 0) break;
    s = (s - 1) & m;
  }
}

}  // namespace secgame

template <>
struct std::hash<secgame::SubsetMask> {
  std::size_t operator()(secgame::SubsetMask m) const noexcept {
    return std::hash<std::uint64_t>{}(m.bits());
  }
};

#endif  // SECGAME_SUBSET_HPP_
