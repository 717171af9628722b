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

// Labeled multistage graphs: a stage-layered DAG with a unique source S at
// stage 0, a unique sink D at stage L, every edge crossing exactly one stage
// boundary, and an edge set E(v) attached to every vertex except S.

#ifndef MSPLAB_GRAPH_HPP
#define MSPLAB_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "msplab/edge_set.hpp"

namespace msplab {

struct VertexId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const VertexId&) const = default;
};

struct Vertex {
  std::string name;
  int stage = 0;

  bool operator==(const Vertex&) const = default;
};

/// The edge <from, to, stage>. For a valid graph from.stage == stage - 1 and
/// to.stage == stage.
struct Edge {
  VertexId from;
  VertexId to;
  int stage = 0;

  bool operator==(const Edge&) const = default;
};

class GraphBuilder;

/// Immutable once built (the solver and minimizer work on private copies).
/// Vertices are stored in (stage, name) order and edges in (stage, from-name,
/// to-name) order; both orders are the dense ids.
class MultistageGraph {
 public:
  MultistageGraph() = default;

  int stages() const { return stages_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const Vertex& vertex(VertexId v) const { return vertices_.at(v.value); }
  const Edge& edge(EdgeId e) const { return edges_.at(e.value); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int stage_of(VertexId v) const { return vertices_[v.value].stage; }
  const std::string& name_of(VertexId v) const { return vertices_[v.value].name; }

  /// The first stage-0 / stage-L vertex. Only meaningful on validated graphs.
  VertexId source() const { return source_; }
  VertexId sink() const { return sink_; }

  /// E(v). Empty for S.
  const EdgeSet& eset(VertexId v) const { return esets_.at(v.value); }
  const std::vector<EdgeSet>& esets() const { return esets_; }

  /// Replaces E(v); used on working copies by the solver and the minimizer.
  void set_eset(VertexId v, EdgeSet es) {
    if (es.universe() != edges_.size())
      throw std::invalid_argument("eset universe does not match edge count");
    esets_.at(v.value) = std::move(es);
  }

  EdgeSet empty_set() const { return EdgeSet(edges_.size()); }
  EdgeSet all_edges() const { return EdgeSet::full(edges_.size()); }

  /// Vertices of stage l, in id order. Empty for stages outside [0, L].
  const std::vector<VertexId>& stage_vertices(int l) const {
    static const std::vector<VertexId> kNone;
    if (l < 0 || l >= static_cast<int>(stage_vertices_.size())) return kNone;
    return stage_vertices_[static_cast<std::size_t>(l)];
  }

  /// Edge ids of stage l form the half-open range [first, last).
  std::uint32_t stage_edge_begin(int l) const { return edge_bound(l); }
  std::uint32_t stage_edge_end(int l) const { return edge_bound(l + 1); }

  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v.value); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v.value); }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeId> find_edge(VertexId from, VertexId to) const {
    for (EdgeId e : out_.at(from.value))
      if (edges_[e.value].to == to) return e;
    return std::nullopt;
  }

  bool operator==(const MultistageGraph& o) const {
    return stages_ == o.stages_ && vertices_ == o.vertices_ && edges_ == o.edges_ &&
           esets_ == o.esets_;
  }

 private:
  friend class GraphBuilder;

  std::uint32_t edge_bound(int l) const {
    if (l <= 0) return 0;
    if (l >= static_cast<int>(edge_bounds_.size()))
      return static_cast<std::uint32_t>(edges_.size());
    return edge_bounds_[static_cast<std::size_t>(l)];
  }

  int stages_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<EdgeSet> esets_;
  VertexId source_;
  VertexId sink_;
  std::vector<std::vector<VertexId>> stage_vertices_;
  // edge_bounds_[l] = first edge id with stage >= l, for l in [0, L+1].
  std::vector<std::uint32_t> edge_bounds_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::map<std::string, VertexId> by_name_;
};

/// Collects vertices, edges and edge-set memberships by name and produces a
/// MultistageGraph with canonical ids. Structural problems (duplicate names,
/// skewed stages, parallel edges) are kept so validate() can report them;
/// only references to undeclared vertices throw.
class GraphBuilder {
 public:
  /// Handle to an edge added to this builder; not a canonical EdgeId.
  struct EdgeHandle {
    std::size_t index = 0;
  };

  explicit GraphBuilder(int stages) : stages_(stages) {}

  GraphBuilder& add_vertex(std::string name, int stage) {
    if (!index_.contains(name)) index_.emplace(name, vertices_.size());
    vertices_.push_back(Vertex{std::move(name), stage});
    return *this;
  }

  /// Edge whose stage is the target's stage.
  EdgeHandle add_edge(const std::string& from, const std::string& to) {
    const int stage = vertices_[lookup(to)].stage;
    return add_edge(from, to, stage);
  }
  EdgeHandle add_edge(const std::string& from, const std::string& to, int stage) {
    edges_.push_back(RawEdge{lookup(from), lookup(to), stage});
    return EdgeHandle{edges_.size() - 1};
  }

  GraphBuilder& label(const std::string& vertex, EdgeHandle e) {
    if (e.index >= edges_.size()) throw std::out_of_range("edge handle out of range");
    labels_.emplace_back(lookup(vertex), e.index);
    return *this;
  }
  GraphBuilder& label(const std::string& vertex, std::initializer_list<EdgeHandle> es) {
    for (auto e : es) label(vertex, e);
    return *this;
  }
  /// Adds every edge to E(vertex).
  GraphBuilder& label_all(const std::string& vertex) {
    for (std::size_t i = 0; i < edges_.size(); ++i) labels_.emplace_back(lookup(vertex), i);
    return *this;
  }

  bool has_vertex(const std::string& name) const { return index_.contains(name); }

  MultistageGraph build() const {
    MultistageGraph g;
    g.stages_ = stages_;

    std::vector<std::size_t> vorder(vertices_.size());
    std::iota(vorder.begin(), vorder.end(), std::size_t{0});
    std::stable_sort(vorder.begin(), vorder.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(vertices_[a].stage, vertices_[a].name) <
             std::tie(vertices_[b].stage, vertices_[b].name);
    });
    std::vector<std::uint32_t> vmap(vertices_.size());
    for (std::size_t i = 0; i < vorder.size(); ++i) {
      vmap[vorder[i]] = static_cast<std::uint32_t>(i);
      g.vertices_.push_back(vertices_[vorder[i]]);
    }

    std::vector<std::size_t> eorder(edges_.size());
    std::iota(eorder.begin(), eorder.end(), std::size_t{0});
    std::stable_sort(eorder.begin(), eorder.end(), [&](std::size_t a, std::size_t b) {
      const auto& ea = edges_[a];
      const auto& eb = edges_[b];
      return std::tie(ea.stage, vertices_[ea.from].name, vertices_[ea.to].name) <
             std::tie(eb.stage, vertices_[eb.from].name, vertices_[eb.to].name);
    });
    std::vector<std::uint32_t> emap(edges_.size());
    for (std::size_t i = 0; i < eorder.size(); ++i) {
      const auto& raw = edges_[eorder[i]];
      emap[eorder[i]] = static_cast<std::uint32_t>(i);
      g.edges_.push_back(Edge{VertexId{vmap[raw.from]}, VertexId{vmap[raw.to]}, raw.stage});
    }

    g.esets_.assign(g.vertices_.size(), EdgeSet(g.edges_.size()));
    for (auto [v, e] : labels_) g.esets_[vmap[v]].insert(EdgeId{emap[e]});

    finish(g);
    return g;
  }

  /// Recomputes the derived indexes of g. Called by build().
  static void finish(MultistageGraph& g) {
    const int L = g.stages_;
    const std::size_t nstages = L >= 0 ? static_cast<std::size_t>(L) + 1 : 0;
    g.stage_vertices_.assign(nstages, {});
    g.by_name_.clear();
    bool have_source = false;
    bool have_sink = false;
    for (std::uint32_t i = 0; i < g.vertices_.size(); ++i) {
      const auto& v = g.vertices_[i];
      g.by_name_.emplace(v.name, VertexId{i});
      if (v.stage >= 0 && v.stage <= L) g.stage_vertices_[static_cast<std::size_t>(v.stage)].push_back(VertexId{i});
      if (v.stage == 0 && !have_source) {
        g.source_ = VertexId{i};
        have_source = true;
      }
      if (v.stage == L && !have_sink) {
        g.sink_ = VertexId{i};
        have_sink = true;
      }
    }
    g.edge_bounds_.assign(nstages + 1, 0);
    for (std::size_t l = 0; l <= nstages; ++l) {
      auto it = std::lower_bound(g.edges_.begin(), g.edges_.end(), static_cast<int>(l),
                                 [](const Edge& e, int s) { return e.stage < s; });
      g.edge_bounds_[l] = static_cast<std::uint32_t>(it - g.edges_.begin());
    }
    g.out_.assign(g.vertices_.size(), {});
    g.in_.assign(g.vertices_.size(), {});
    for (std::uint32_t i = 0; i < g.edges_.size(); ++i) {
      g.out_[g.edges_[i].from.value].push_back(EdgeId{i});
      g.in_[g.edges_[i].to.value].push_back(EdgeId{i});
    }
  }

  /// A builder holding g's structure, for rebuilding edited copies.
  static GraphBuilder from(const MultistageGraph& g) {
    GraphBuilder b(g.stages());
    for (const auto& v : g.vertices()) b.add_vertex(v.name, v.stage);
    for (const auto& e : g.edges()) b.add_edge(g.name_of(e.from), g.name_of(e.to), e.stage);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
      g.eset(VertexId{v}).for_each([&](EdgeId e) { b.labels_.emplace_back(v, e.value); });
    return b;
  }

 private:
  struct RawEdge {
    std::size_t from;
    std::size_t to;
    int stage;
  };

  std::size_t lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex '" + name + "'");
    return it->second;
  }

  int stages_;
  std::vector<Vertex> vertices_;
  std::vector<RawEdge> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> labels_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string code;
  std::string location;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(const std::string& code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
  }
  bool operator==(const ValidationReport&) const = default;
};

/// Reports every departure from the labeled-multistage-graph definition.
/// Codes: BAD_STAGE_COUNT, VERTEX_STAGE_RANGE, DUPLICATE_VERTEX, NO_SOURCE,
/// MULTI_SOURCE, NO_SINK, MULTI_SINK, EDGE_STAGE_RANGE, STAGE_SKEW,
/// PARALLEL_EDGE, SOURCE_LABELED.
inline ValidationReport validate(const MultistageGraph& g) {
  ValidationReport r;
  auto report = [&](std::string code, std::string where, std::string what) {
    r.violations.push_back(Violation{std::move(code), std::move(where), std::move(what)});
  };
  const int L = g.stages();
  if (L < 1) report("BAD_STAGE_COUNT", "stages", "stage count must be at least 1");

  std::map<std::string, int> seen;
  int sources = 0;
  int sinks = 0;
  for (const auto& v : g.vertices()) {
    if (v.stage < 0 || v.stage > L)
      report("VERTEX_STAGE_RANGE", "vertex " + v.name,
             "stage " + std::to_string(v.stage) + " outside [0, " + std::to_string(L) + "]");
    if (++seen[v.name] == 2) report("DUPLICATE_VERTEX", "vertex " + v.name, "name declared twice");
    if (v.stage == 0) ++sources;
    if (v.stage == L && L >= 1) ++sinks;
  }
  if (sources == 0) report("NO_SOURCE", "stage 0", "stage 0 has no vertex");
  if (sources > 1) report("MULTI_SOURCE", "stage 0", "stage 0 has " + std::to_string(sources) + " vertices");
  if (L >= 1 && sinks == 0) report("NO_SINK", "stage " + std::to_string(L), "last stage has no vertex");
  if (sinks > 1)
    report("MULTI_SINK", "stage " + std::to_string(L), "last stage has " + std::to_string(sinks) + " vertices");

  std::map<std::pair<std::uint32_t, std::uint32_t>, int> pairs;
  for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    const std::string where = "edge " + std::to_string(i) + " <" + g.name_of(e.from) + "," +
                              g.name_of(e.to) + "," + std::to_string(e.stage) + ">";
    if (e.stage < 1 || e.stage > L) {
      report("EDGE_STAGE_RANGE", where, "edge stage outside [1, L]");
    } else if (g.stage_of(e.from) != e.stage - 1 || g.stage_of(e.to) != e.stage) {
      report("STAGE_SKEW", where, "endpoints are at stages " + std::to_string(g.stage_of(e.from)) +
                                      " and " + std::to_string(g.stage_of(e.to)));
    }
    if (++pairs[{e.from.value, e.to.value}] == 2)
      report("PARALLEL_EDGE", where, "more than one edge between the same vertices");
  }
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (g.stage_of(VertexId{v}) == 0 && !g.eset(VertexId{v}).empty())
      report("SOURCE_LABELED", "vertex " + g.name_of(VertexId{v}), "the source carries no edge set");
  }
  r.ok = r.violations.empty();
  return r;
}

/// ES[i:j]: the members of es whose stage lies in [i, j]. Empty when i > j.
inline EdgeSet stage_slice(const EdgeSet& es, int i, int j, const MultistageGraph& g) {
  const int L = g.stages();
  if (i < 1 || i > L || j < 1 || j > L)
    throw std::out_of_range("stage slice [" + std::to_string(i) + ":" + std::to_string(j) +
                            "] outside [1, " + std::to_string(L) + "]");
  EdgeSet out = es;
  if (i > j) {
    out.clear();
    return out;
  }
  out.restrict_to(g.stage_edge_begin(i), g.stage_edge_end(j));
  return out;
}

/// Edge ids as a sorted list of names, "<from,to>", for messages and tests.
inline std::string describe(const EdgeSet& es, const MultistageGraph& g) {
  std::string out = "{";
  bool first = true;
  es.for_each([&](EdgeId e) {
    if (!first) out += ", ";
    first = false;
    out += g.name_of(g.edge(e).from) + "->" + g.name_of(g.edge(e).to);
  });
  return out + "}";
}

}  // namespace msplab

#endif  // MSPLAB_GRAPH_HPP
