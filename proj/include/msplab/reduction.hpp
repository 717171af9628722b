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

// Hamilton circuit -> multistage simple path.
//
// For an undirected graph on n vertices and a pivot p the multistage graph
// has L = n stages, S = (p,0), D = (p,n) and a copy (u,l) of every other
// vertex u at each stage 1..n-1. An edge {a,b} away from the pivot becomes
// <(a,l-1),(b,l),l> and <(b,l-1),(a,l),l> for 2 <= l <= n-1; a pivot edge
// {p,b} becomes <S,(b,1),1> and <(b,n-1),D,n>. E((u,l)) is every edge except
// those touching (u,1)..(u,l-1), and E(D) is every edge.

#ifndef MSPLAB_REDUCTION_HPP
#define MSPLAB_REDUCTION_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "msplab/graph.hpp"
#include "msplab/oracle.hpp"
#include "msplab/undirected.hpp"

namespace msplab {

class ReductionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ReductionStats {
  std::size_t vertices = 0;
  std::size_t internal_vertices = 0;
  std::size_t edges = 0;
};

struct ReductionMap {
  int pivot = 1;
  int order = 0;
  /// (source vertex, stage) -> vertex of the reduced graph.
  std::map<std::pair<int, int>, VertexId> forward;
  /// Reduced vertex id -> source vertex.
  std::vector<int> backward;
  ReductionStats stats;
};

/// Vertex name of the stage-l copy of u.
inline std::string copy_name(int u, int l) {
  return "(" + std::to_string(u) + "," + std::to_string(l) + ")";
}

inline std::pair<MultistageGraph, ReductionMap> reduce_hc_to_msp(const UndirectedGraph& ug,
                                                                  int pivot = 1) {
  const int n = ug.order();
  if (n < 3) throw ReductionError("reduction needs at least 3 vertices, got " + std::to_string(n));
  if (pivot < 1 || pivot > n)
    throw ReductionError("pivot " + std::to_string(pivot) + " is not a vertex");

  const int L = n;
  GraphBuilder b(L);
  b.add_vertex(copy_name(pivot, 0), 0);
  b.add_vertex(copy_name(pivot, L), L);
  for (int u = 1; u <= n; ++u) {
    if (u == pivot) continue;
    for (int l = 1; l <= L - 1; ++l) b.add_vertex(copy_name(u, l), l);
  }

  for (auto [a, c] : ug.edges()) {
    if (a != pivot && c != pivot) {
      for (int l = 2; l <= L - 1; ++l) {
        b.add_edge(copy_name(a, l - 1), copy_name(c, l), l);
        b.add_edge(copy_name(c, l - 1), copy_name(a, l), l);
      }
    } else {
      const int other = a == pivot ? c : a;
      b.add_edge(copy_name(pivot, 0), copy_name(other, 1), 1);
      b.add_edge(copy_name(other, L - 1), copy_name(pivot, L), L);
    }
  }
  MultistageGraph g = b.build();

  EdgeSet everything = g.all_edges();
  for (int u = 1; u <= n; ++u) {
    if (u == pivot) continue;
    EdgeSet allowed = everything;
    for (int l = 1; l <= L - 1; ++l) {
      const VertexId copy = *g.find_vertex(copy_name(u, l));
      g.set_eset(copy, allowed);
      for (EdgeId e : g.in_edges(copy)) allowed.erase(e);
      for (EdgeId e : g.out_edges(copy)) allowed.erase(e);
    }
  }
  g.set_eset(g.sink(), everything);

  ReductionMap map;
  map.pivot = pivot;
  map.order = n;
  map.backward.assign(g.vertex_count(), 0);
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
    const auto& name = g.name_of(VertexId{i});
    const auto comma = name.find(',');
    const int u = std::stoi(name.substr(1, comma - 1));
    const int l = std::stoi(name.substr(comma + 1));
    map.forward.emplace(std::pair{u, l}, VertexId{i});
    map.backward[i] = u;
  }
  map.stats.vertices = g.vertex_count();
  map.stats.internal_vertices = g.vertex_count() - 2;
  map.stats.edges = g.edge_count();
  return {std::move(g), std::move(map)};
}

/// Maps a simple path of the reduced graph back to the circuit
/// pivot, u1, ..., u(n-1), pivot. The path is verified first.
inline std::vector<int> lift_path(const ReductionMap& map, const MultistageGraph& g,
                                  const std::vector<VertexId>& path) {
  if (map.backward.size() != g.vertex_count())
    throw std::invalid_argument("reduction map does not belong to this graph");
  if (!verify_simple_path(g, path)) throw std::invalid_argument("path is not a simple path");
  std::vector<int> circuit;
  circuit.reserve(path.size());
  for (VertexId v : path) circuit.push_back(map.backward.at(v.value));
  return circuit;
}

}  // namespace msplab

#endif  // MSPLAB_REDUCTION_HPP
