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

#ifndef MSPLAB_UNDIRECTED_HPP
#define MSPLAB_UNDIRECTED_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msplab {

/// Simple undirected graph on vertices 1..n. At most 64 vertices.
class UndirectedGraph {
 public:
  static constexpr int kMaxVertices = 64;

  UndirectedGraph() = default;
  explicit UndirectedGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n) + 1, 0) {
    if (n < 0 || n > kMaxVertices)
      throw std::invalid_argument("vertex count must be in [0, 64], got " + std::to_string(n));
  }

  int order() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  /// Edges as (u, v) with u < v, ascending.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Adds {u, v}. Self-loops and out-of-range vertices throw; duplicates are
  /// ignored.
  void add_edge(int u, int v) {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (has_edge(u, v)) return;
    adj_[static_cast<std::size_t>(u)] |= bit(v);
    adj_[static_cast<std::size_t>(v)] |= bit(u);
    const std::pair<int, int> e{std::min(u, v), std::max(u, v)};
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
  }

  bool has_edge(int u, int v) const {
    return u >= 1 && u <= n_ && v >= 1 && v <= n_ && (adj_[static_cast<std::size_t>(u)] & bit(v)) != 0;
  }
  /// Neighbours of u as a bitmask (bit i-1 for vertex i).
  std::uint64_t neighbours(int u) const { return adj_.at(static_cast<std::size_t>(u)); }
  int degree(int u) const { return __builtin_popcountll(neighbours(u)); }

  bool operator==(const UndirectedGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

  static std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }

 private:
  void check(int v) const {
    if (v < 1 || v > n_)
      throw std::out_of_range("vertex " + std::to_string(v) + " outside [1, " + std::to_string(n_) + "]");
  }

  int n_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<std::pair<int, int>> edges_;
};

/// Whether cycle (v1, ..., vn, v1) visits every vertex of ug exactly once
/// along existing edges.
inline bool verify_hamilton_circuit(const UndirectedGraph& ug, const std::vector<int>& cycle) {
  const int n = ug.order();
  if (n < 3 || static_cast<int>(cycle.size()) != n + 1 || cycle.front() != cycle.back()) return false;
  std::uint64_t seen = 0;
  for (int i = 0; i < n; ++i) {
    const int v = cycle[static_cast<std::size_t>(i)];
    if (v < 1 || v > n || (seen & UndirectedGraph::bit(v))) return false;
    seen |= UndirectedGraph::bit(v);
    if (!ug.has_edge(v, cycle[static_cast<std::size_t>(i) + 1])) return false;
  }
  return true;
}

}  // namespace msplab

#endif  // MSPLAB_UNDIRECTED_HPP
