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

// The four edge-set operators the Z-H solver is assembled from:
//
//   tidy(ES, u, v)     edges of ES lying on some u->v path inside ES
//   init_reachable(e)  initial reachable set R(e)
//   comp(ES, v, R)     contraction of ES against the reachable sets
//   change(R, e)       contraction of R(e) against every earlier R entry
//
// All of them are deterministic: fixpoint sweeps visit edges in ascending id
// order, collect their deletions, and apply them when the sweep ends.

#ifndef MSPLAB_OPERATORS_HPP
#define MSPLAB_OPERATORS_HPP

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "msplab/edge_set.hpp"
#include "msplab/graph.hpp"

namespace msplab {

/// R(e) for every edge e. Entries only ever shrink; every effective write
/// bumps a global version and the entry's own version.
class ReachMap {
 public:
  ReachMap() = default;
  explicit ReachMap(std::vector<EdgeSet> entries)
      : entries_(std::move(entries)), entry_versions_(entries_.size(), 0) {}

  std::size_t size() const { return entries_.size(); }
  const EdgeSet& operator[](EdgeId e) const { return entries_.at(e.value); }
  const std::vector<EdgeSet>& entries() const { return entries_; }

  /// Stores value as R(e). Returns whether the entry changed.
  bool assign(EdgeId e, EdgeSet value) {
    auto& slot = entries_.at(e.value);
    if (slot == value) return false;
    assert(value.is_subset_of(slot) && "reachable sets only shrink");
    slot = std::move(value);
    ++version_;
    ++entry_versions_[e.value];
    return true;
  }

  std::uint64_t version() const { return version_; }
  std::uint64_t entry_version(EdgeId e) const { return entry_versions_.at(e.value); }

  /// Sum of |R(e)| over all edges.
  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& s : entries_) n += s.size();
    return n;
  }

  bool operator==(const ReachMap& o) const { return entries_ == o.entries_; }

 private:
  std::vector<EdgeSet> entries_;
  std::vector<std::uint64_t> entry_versions_;
  std::uint64_t version_ = 0;
};

struct OperatorStats {
  std::uint64_t tidy_calls = 0;
  std::uint64_t init_calls = 0;
  std::uint64_t comp_calls = 0;
  std::uint64_t comp_cache_hits = 0;
  std::uint64_t change_calls = 0;
  std::uint64_t comp_sweeps = 0;
  std::uint64_t change_sweeps = 0;
  // Set when a comp/change fixpoint needs more than |input| + 1 sweeps.
  bool sweep_bound_exceeded = false;

  bool operator==(const OperatorStats&) const = default;
};

/// Edge visiting order and deletion timing inside comp's sweeps. The default
/// (ascending, deferred) is what the solver uses; the others exist to probe
/// whether the fixpoint depends on scheduling.
struct CompSchedule {
  bool descending = false;
  bool immediate = false;
};

/// Mutable context threaded through one solver run: counters plus a memo of
/// comp(E(v), v, R) keyed by the R version and an edge-set version.
class OperatorContext {
 public:
  OperatorStats stats;

  /// Must be called whenever any E(v) of the graph in use changes.
  void labels_changed() { ++labels_version_; }

  const EdgeSet* cached_comp(VertexId v, std::uint64_t r_version) const {
    if (v.value >= memo_.size()) return nullptr;
    const auto& m = memo_[v.value];
    if (!m || m->r_version != r_version || m->labels_version != labels_version_) return nullptr;
    return &m->value;
  }
  void store_comp(VertexId v, std::uint64_t r_version, EdgeSet value) {
    if (v.value >= memo_.size()) memo_.resize(v.value + 1);
    memo_[v.value] = Memo{r_version, labels_version_, std::move(value)};
  }

 private:
  struct Memo {
    std::uint64_t r_version;
    std::uint64_t labels_version;
    EdgeSet value;
  };
  std::vector<std::optional<Memo>> memo_;
  std::uint64_t labels_version_ = 0;
};

namespace detail {

// Per-thread vertex marks. Stamps avoid clearing between calls.
struct Marks {
  std::vector<std::uint32_t> fwd;
  std::vector<std::uint32_t> bwd;
  std::uint32_t epoch = 0;
  std::vector<EdgeId> candidates;

  void reset(std::size_t vertices) {
    if (fwd.size() < vertices) {
      fwd.assign(vertices, 0);
      bwd.assign(vertices, 0);
      epoch = 0;
    }
    if (++epoch == 0) {
      std::fill(fwd.begin(), fwd.end(), 0);
      std::fill(bwd.begin(), bwd.end(), 0);
      epoch = 1;
    }
    candidates.clear();
  }
};

inline Marks& marks() {
  thread_local Marks m;
  return m;
}

}  // namespace detail

/// [ES]_u^v: the edges of es on at least one u->v path whose every edge is in
/// es. Empty when u == v. Linear in |es|.
inline EdgeSet tidy(const EdgeSet& es, VertexId u, VertexId v, const MultistageGraph& g,
                    OperatorContext* ctx = nullptr) {
  if (ctx) ++ctx->stats.tidy_calls;
  EdgeSet out(es.universe());
  const int su = g.stage_of(u);
  const int sv = g.stage_of(v);
  if (u == v || su >= sv) return out;

  auto& m = detail::marks();
  m.reset(g.vertex_count());
  const auto epoch = m.epoch;
  m.fwd[u.value] = epoch;
  es.for_each_in(g.stage_edge_begin(su + 1), g.stage_edge_end(sv), [&](EdgeId e) {
    const auto& edge = g.edge(e);
    if (m.fwd[edge.from.value] == epoch) {
      m.fwd[edge.to.value] = epoch;
      m.candidates.push_back(e);
    }
  });
  m.bwd[v.value] = epoch;
  for (auto it = m.candidates.rbegin(); it != m.candidates.rend(); ++it) {
    const auto& edge = g.edge(*it);
    if (m.bwd[edge.to.value] == epoch) {
      m.bwd[edge.from.value] = epoch;
      out.insert(*it);
    }
  }
  assert(out.is_subset_of(es));
  return out;
}

/// Whether es contains a u->v path (of at least one edge).
inline bool has_path(const EdgeSet& es, VertexId u, VertexId v, const MultistageGraph& g) {
  const int su = g.stage_of(u);
  const int sv = g.stage_of(v);
  if (u == v || su >= sv) return false;
  auto& m = detail::marks();
  m.reset(g.vertex_count());
  const auto epoch = m.epoch;
  m.fwd[u.value] = epoch;
  // Edges of stage sv only matter if they hit v itself.
  es.for_each_in(g.stage_edge_begin(su + 1), g.stage_edge_begin(sv), [&](EdgeId e) {
    const auto& edge = g.edge(e);
    if (m.fwd[edge.from.value] == epoch) m.fwd[edge.to.value] = epoch;
  });
  for (EdgeId e : g.in_edges(v))
    if (es.contains(e) && m.fwd[g.edge(e).from.value] == epoch) return true;
  return false;
}

/// Initial R(e): the edges <a,b,k>, k > 1, with e in E(a) and E(b), tidied to
/// the paths from e's head to D.
inline EdgeSet init_reachable(const MultistageGraph& g, EdgeId e, OperatorContext* ctx = nullptr) {
  if (ctx) ++ctx->stats.init_calls;
  EdgeSet collected(g.edge_count());
  const auto end = static_cast<std::uint32_t>(g.edge_count());
  for (std::uint32_t id = g.stage_edge_begin(2); id < end; ++id) {
    const auto& edge = g.edge(EdgeId{id});
    if (g.eset(edge.from).contains(e) && g.eset(edge.to).contains(e)) collected.insert(EdgeId{id});
  }
  EdgeSet out = tidy(collected, g.edge(e).to, g.sink(), g, ctx);
  return out;
}

/// R(e) for every edge of g.
inline ReachMap init_all(const MultistageGraph& g, OperatorContext* ctx = nullptr) {
  std::vector<EdgeSet> entries;
  entries.reserve(g.edge_count());
  for (std::uint32_t id = 0; id < g.edge_count(); ++id)
    entries.push_back(init_reachable(g, EdgeId{id}, ctx));
  return ReachMap(std::move(entries));
}

/// Comp(ES, v, R). Repeats until stable:
///  (a) drop every <a,b,k> whose R(a,b,k) restricted to the current set has
///      no b->v path; edges ending at v are exempt from this test;
///  (b) keep only edges on S->v paths.
/// `sweeps`, when given, receives the number of (a)+(b) rounds executed.
inline EdgeSet comp(const EdgeSet& es, VertexId v, const ReachMap& r, const MultistageGraph& g,
                    OperatorContext* ctx = nullptr, CompSchedule schedule = {},
                    std::size_t* sweeps = nullptr) {
  if (ctx) ++ctx->stats.comp_calls;
  EdgeSet current = es;
  EdgeSet next(es.universe());
  EdgeSet scratch(es.universe());
  const std::size_t bound = es.size() + 1;
  std::size_t rounds = 0;
  const auto universe = static_cast<std::uint32_t>(es.universe());
  while (true) {
    ++rounds;
    next = current;
    // Deferred deletions test against `current`; immediate ones against `next`.
    const EdgeSet& basis = schedule.immediate ? next : current;
    auto test = [&](EdgeId e) {
      const auto& edge = g.edge(e);
      if (edge.to == v) return;
      scratch = r[e];
      scratch &= basis;
      if (!has_path(scratch, edge.to, v, g)) next.erase(e);
    };
    if (schedule.descending) {
      current.for_each_in_reverse(0, universe, test);
    } else {
      current.for_each_in(0, universe, test);
    }
    next = tidy(next, g.source(), v, g, ctx);
    if (next == current) break;
    current.clear();
    std::swap(current, next);
  }
  if (ctx) {
    ctx->stats.comp_sweeps += rounds;
    if (rounds > bound) ctx->stats.sweep_bound_exceeded = true;
  }
  if (sweeps) *sweeps = rounds;
  assert(rounds <= bound);
  assert(current.is_subset_of(es));
  return current;
}

/// comp(E(v), v, R), served from ctx's memo when R and the edge sets are
/// unchanged since it was last computed.
inline const EdgeSet& comp_of_vertex(VertexId v, const ReachMap& r, const MultistageGraph& g,
                                     OperatorContext& ctx) {
  if (const EdgeSet* hit = ctx.cached_comp(v, r.version())) {
    ++ctx.stats.comp_cache_hits;
    return *hit;
  }
  ctx.store_comp(v, r.version(), comp(g.eset(v), v, r, g, &ctx));
  return *ctx.cached_comp(v, r.version());
}

namespace detail {

// Whether <a,b,k> (a member of R(e), e = <u,v,l>) survives one round of change:
// collect the earlier edges <c,d,kk> (kk < l) whose R entry, cut down to
// comp(E(b), b, R), still carries both e and <a,b,k> between d and b; then ask
// whether comp of those edges (tidied S->u) at u is non-empty.
inline bool change_keeps(EdgeId e, EdgeId candidate, const ReachMap& r, const MultistageGraph& g,
                         OperatorContext& ctx) {
  const auto& self = g.edge(e);
  const auto& cand = g.edge(candidate);
  const VertexId b = cand.to;
  const EdgeSet& comp_b = comp_of_vertex(b, r, g, ctx);
  if (!comp_b.contains(e) || !comp_b.contains(candidate)) return false;

  EdgeSet bound(g.edge_count());
  EdgeSet scratch(g.edge_count());
  const std::uint32_t earlier = g.stage_edge_begin(self.stage);
  for (std::uint32_t id = 0; id < earlier; ++id) {
    const EdgeId cd{id};
    const EdgeSet& r_cd = r[cd];
    if (!r_cd.contains(e) || !r_cd.contains(candidate)) continue;
    scratch = r_cd;
    scratch &= comp_b;
    const EdgeSet path = tidy(scratch, g.edge(cd).to, b, g, &ctx);
    if (path.contains(e) && path.contains(candidate)) bound.insert(cd);
  }
  if (bound.empty()) return false;
  const EdgeSet rooted = tidy(bound, g.source(), self.from, g, &ctx);
  return !comp(rooted, self.from, r, g, &ctx).empty();
}

}  // namespace detail

/// Change(R(u,v,l)): repeatedly drops members <a,b,k> (k > l) of R(e) that no
/// earlier-stage evidence supports, then tidies R(e) to v->D paths. For l = 1
/// there is no earlier stage and only the tidy applies. Writes the result into
/// r and returns it.
inline EdgeSet change(ReachMap& r, EdgeId e, const MultistageGraph& g, OperatorContext& ctx) {
  ++ctx.stats.change_calls;
  const auto& self = g.edge(e);
  const EdgeSet prior = r[e];
  const std::size_t bound = prior.size() + 1;
  std::size_t rounds = 0;
  if (self.stage == 1) {
    ++rounds;
    r.assign(e, tidy(r[e], self.to, g.sink(), g, &ctx));
  } else {
    EdgeSet drop(g.edge_count());
    while (true) {
      ++rounds;
      drop.clear();
      const EdgeSet current = r[e];
      current.for_each_in(g.stage_edge_begin(self.stage + 1),
                          static_cast<std::uint32_t>(g.edge_count()), [&](EdgeId cand) {
                            if (!detail::change_keeps(e, cand, r, g, ctx)) drop.insert(cand);
                          });
      EdgeSet kept = current - drop;
      if (!r.assign(e, tidy(kept, self.to, g.sink(), g, &ctx))) break;
    }
  }
  ctx.stats.change_sweeps += rounds;
  if (rounds > bound) ctx.stats.sweep_bound_exceeded = true;
  assert(r[e].is_subset_of(prior));
  return r[e];
}

inline EdgeSet change(ReachMap& r, EdgeId e, const MultistageGraph& g) {
  OperatorContext ctx;
  return change(r, e, g, ctx);
}

}  // namespace msplab

#endif  // MSPLAB_OPERATORS_HPP
