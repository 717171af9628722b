// Copyright 2026 The msplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSPLAB_EDGE_SET_HPP
#define MSPLAB_EDGE_SET_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <utility>
#include <vector>

namespace msplab {

/// Dense identifier of an edge within one graph. Ids follow the canonical
/// (stage, from-name, to-name) order, so ascending ids visit stages in order.
struct EdgeId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const EdgeId&) const = default;
};

/// A set of edge ids over a fixed universe [0, universe). Backed by 64-bit
/// words; every set operation between two sets requires equal universes.
class EdgeSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe)
      : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}
  EdgeSet(std::size_t universe, std::initializer_list<std::uint32_t> ids)
      : EdgeSet(universe) {
    for (auto id : ids) insert(EdgeId{id});
  }

  static EdgeSet full(std::size_t universe) {
    EdgeSet s(universe);
    for (auto& w : s.words_) w = ~Word{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(EdgeId e) const {
    assert(e.value < universe_);
    return (words_[e.value / kWordBits] >> (e.value % kWordBits)) & 1U;
  }
  void insert(EdgeId e) {
    assert(e.value < universe_);
    words_[e.value / kWordBits] |= Word{1} << (e.value % kWordBits);
  }
  void erase(EdgeId e) {
    assert(e.value < universe_);
    words_[e.value / kWordBits] &= ~(Word{1} << (e.value % kWordBits));
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  bool is_subset_of(const EdgeSet& other) const {
    assert(universe_ == other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }
  bool intersects(const EdgeSet& other) const {
    assert(universe_ == other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  EdgeSet& operator&=(const EdgeSet& other) {
    assert(universe_ == other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  EdgeSet& operator|=(const EdgeSet& other) {
    assert(universe_ == other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  EdgeSet& operator-=(const EdgeSet& other) {
    assert(universe_ == other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }
  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
  friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }
  friend EdgeSet operator-(EdgeSet a, const EdgeSet& b) { return a -= b; }

  /// Keeps only ids in [lo, hi).
  void restrict_to(std::uint32_t lo, std::uint32_t hi) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= range_mask(i, lo, hi);
  }
  /// Removes ids in [lo, hi).
  void erase_range(std::uint32_t lo, std::uint32_t hi) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~range_mask(i, lo, hi);
  }

  /// Calls f(EdgeId) for every member in [lo, hi), ascending.
  template <class F>
  void for_each_in(std::uint32_t lo, std::uint32_t hi, F&& f) const {
    if (lo >= hi) return;
    const std::size_t first = lo / kWordBits;
    const std::size_t last = (hi - 1) / kWordBits;
    for (std::size_t i = first; i <= last && i < words_.size(); ++i) {
      Word w = words_[i] & range_mask(i, lo, hi);
      while (w != 0) {
        const int bit = std::countr_zero(w);
        f(EdgeId{static_cast<std::uint32_t>(i * kWordBits + bit)});
        w &= w - 1;
      }
    }
  }
  /// Calls f(EdgeId) for every member in [lo, hi), descending.
  template <class F>
  void for_each_in_reverse(std::uint32_t lo, std::uint32_t hi, F&& f) const {
    if (lo >= hi) return;
    const std::size_t first = lo / kWordBits;
    std::size_t i = std::min((hi - 1) / kWordBits + 1, words_.size());
    while (i-- > first) {
      Word w = words_[i] & range_mask(i, lo, hi);
      while (w != 0) {
        const int bit = static_cast<int>(kWordBits) - 1 - std::countl_zero(w);
        f(EdgeId{static_cast<std::uint32_t>(i * kWordBits + bit)});
        w &= ~(Word{1} << bit);
      }
    }
  }
  template <class F>
  void for_each(F&& f) const {
    for_each_in(0, static_cast<std::uint32_t>(universe_), std::forward<F>(f));
  }

  std::vector<EdgeId> members() const {
    std::vector<EdgeId> out;
    for_each([&](EdgeId e) { out.push_back(e); });
    return out;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ universe_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  bool operator==(const EdgeSet&) const = default;

 private:
  Word range_mask(std::size_t word, std::uint64_t lo, std::uint64_t hi) const {
    const std::uint64_t base = word * kWordBits;
    if (hi <= base || lo >= base + kWordBits) return 0;
    Word m = ~Word{0};
    if (lo > base) m &= ~Word{0} << (lo - base);
    if (hi < base + kWordBits) m &= ~Word{0} >> (base + kWordBits - hi);
    return m;
  }

  void trim() {
    if (universe_ % kWordBits != 0 && !words_.empty())
      words_.back() &= ~Word{0} >> (kWordBits - universe_ % kWordBits);
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

}  // namespace msplab

#endif  // MSPLAB_EDGE_SET_HPP
