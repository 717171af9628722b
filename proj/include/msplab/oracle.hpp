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

// Exhaustive backtracking searches used as ground truth.

#ifndef MSPLAB_ORACLE_HPP
#define MSPLAB_ORACLE_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "msplab/edge_set.hpp"
#include "msplab/graph.hpp"
#include "msplab/undirected.hpp"
#include "msplab/zh_solver.hpp"

namespace msplab {

/// Search limits; whichever trips first ends the search with TIMEOUT.
/// A zero time limit means unlimited wall clock.
struct Budget {
  std::uint64_t max_nodes = 10'000'000;
  std::chrono::milliseconds max_time{0};
};

struct OracleResult {
  Answer answer = Answer::kNo;
  /// Vertex ids of the simple path (MSP) or vertex numbers of the circuit
  /// (Hamilton, first vertex repeated at the end). Present iff YES.
  std::optional<std::vector<std::uint32_t>> witness;
  std::uint64_t nodes_expanded = 0;
  std::chrono::nanoseconds elapsed{0};
};

namespace detail {

class BudgetClock {
 public:
  explicit BudgetClock(const Budget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  /// Counts one expansion; returns false once the budget is exhausted.
  bool step() {
    ++nodes_;
    if (nodes_ > budget_.max_nodes) return false;
    if (budget_.max_time.count() > 0 && (nodes_ & 0xfff) == 0 &&
        std::chrono::steady_clock::now() - start_ > budget_.max_time)
      return false;
    return true;
  }
  std::uint64_t nodes() const { return nodes_; }
  std::chrono::nanoseconds elapsed() const { return std::chrono::steady_clock::now() - start_; }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Depth-first search for a simple path S - u1 - ... - D. A prefix ending at
/// u_l survives only while every prefix edge is in E(u_l) and in E(D), so
/// each extension is checked against the one new vertex. Edges are tried in
/// ascending id order, making the witness deterministic.
inline OracleResult oracle_simple_path(const MultistageGraph& g, const Budget& budget = {}) {
  if (auto report = validate(g); !report.ok) throw InvalidGraphError(std::move(report));
  detail::BudgetClock clock(budget);
  OracleResult out;
  const VertexId sink = g.sink();
  const EdgeSet& at_sink = g.eset(sink);

  struct Frame {
    VertexId vertex;
    std::size_t next_edge = 0;
  };
  std::vector<Frame> stack{{g.source(), 0}};
  std::vector<EdgeId> chosen;
  EdgeSet prefix(g.edge_count());
  bool timed_out = false;

  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.vertex == sink) {
      std::vector<std::uint32_t> path;
      for (const auto& f : stack) path.push_back(f.vertex.value);
      out.answer = Answer::kYes;
      out.witness = std::move(path);
      break;
    }
    const auto& outs = g.out_edges(top.vertex);
    if (top.next_edge == outs.size()) {
      stack.pop_back();
      if (!chosen.empty()) {
        prefix.erase(chosen.back());
        chosen.pop_back();
      }
      continue;
    }
    const EdgeId e = outs[top.next_edge++];
    const VertexId next = g.edge(e).to;
    if (!at_sink.contains(e)) continue;
    prefix.insert(e);
    if (!prefix.is_subset_of(g.eset(next))) {
      prefix.erase(e);
      continue;
    }
    if (!clock.step()) {
      timed_out = true;
      break;
    }
    chosen.push_back(e);
    stack.push_back(Frame{next, 0});
  }
  if (timed_out) out.answer = Answer::kTimeout;
  out.nodes_expanded = clock.nodes();
  out.elapsed = clock.elapsed();
  return out;
}

/// Checks the simple-path condition for path (vertex ids, S first, D last).
/// Structural defects throw std::invalid_argument; the containment condition
/// is the return value. With pre_simple, containment is required only up to
/// stage L-2.
inline bool verify_simple_path(const MultistageGraph& g, const std::vector<VertexId>& path,
                               bool pre_simple = false) {
  const int L = g.stages();
  if (path.size() != static_cast<std::size_t>(L) + 1)
    throw std::invalid_argument("path must visit one vertex per stage (" + std::to_string(L + 1) +
                                " vertices), got " + std::to_string(path.size()));
  for (const auto& v : path)
    if (v.value >= g.vertex_count()) throw std::invalid_argument("path names an unknown vertex");
  if (path.front() != g.source() || path.back() != g.sink())
    throw std::invalid_argument("path must run from S to D");
  std::vector<EdgeId> edges;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (g.stage_of(path[i]) != static_cast<int>(i))
      throw std::invalid_argument("vertex " + g.name_of(path[i]) + " is not at stage " + std::to_string(i));
    auto e = g.find_edge(path[i - 1], path[i]);
    if (!e)
      throw std::invalid_argument("no edge " + g.name_of(path[i - 1]) + " -> " + g.name_of(path[i]));
    edges.push_back(*e);
  }
  const int last = pre_simple ? L - 2 : L;
  for (int l = 1; l <= last; ++l) {
    const EdgeSet& label = g.eset(path[static_cast<std::size_t>(l)]);
    for (int j = 0; j < l; ++j)
      if (!label.contains(edges[static_cast<std::size_t>(j)])) return false;
  }
  return true;
}

inline std::vector<VertexId> to_vertex_path(const std::vector<std::uint32_t>& ids) {
  std::vector<VertexId> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(VertexId{id});
  return out;
}

/// Backtracking Hamilton-circuit search anchored at vertex 1. Witness is
/// 1, v2, ..., vn, 1 with neighbours tried in ascending order.
inline OracleResult oracle_hamilton(const UndirectedGraph& ug, const Budget& budget = {}) {
  detail::BudgetClock clock(budget);
  OracleResult out;
  const int n = ug.order();
  auto finish = [&] {
    out.nodes_expanded = clock.nodes();
    out.elapsed = clock.elapsed();
    return out;
  };
  if (n < 3) return finish();
  for (int v = 1; v <= n; ++v)
    if (ug.degree(v) < 2) return finish();

  std::vector<int> path{1};
  std::vector<std::uint64_t> remaining{ug.neighbours(1)};
  std::uint64_t visited = UndirectedGraph::bit(1);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  while (!path.empty()) {
    if (visited == all && ug.has_edge(path.back(), 1)) {
      out.answer = Answer::kYes;
      std::vector<std::uint32_t> cycle(path.begin(), path.end());
      cycle.push_back(1);
      out.witness = std::move(cycle);
      return finish();
    }
    std::uint64_t& options = remaining.back();
    options &= ~visited;
    if (options == 0 || visited == all) {
      visited &= ~UndirectedGraph::bit(path.back());
      path.pop_back();
      remaining.pop_back();
      if (path.empty()) visited = 0;
      continue;
    }
    const int next = __builtin_ctzll(options) + 1;
    options &= options - 1;
    if (!clock.step()) {
      out.answer = Answer::kTimeout;
      return finish();
    }
    path.push_back(next);
    visited |= UndirectedGraph::bit(next);
    remaining.push_back(ug.neighbours(next));
  }
  return finish();
}

}  // namespace msplab

#endif  // MSPLAB_ORACLE_HPP
