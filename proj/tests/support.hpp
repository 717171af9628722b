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

// Fixtures, random generators and slow reference implementations shared by
// the unit tests and the acceptance binary. The references enumerate paths
// explicitly and never call the library's tidy/has_path/comp/change, so they
// serve as independent oracles on small graphs.

#ifndef MSPLAB_TESTS_SUPPORT_HPP
#define MSPLAB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "msplab/graph.hpp"
#include "msplab/operators.hpp"
#include "msplab/undirected.hpp"

namespace msplab {

// Readable failure messages.
inline void PrintTo(EdgeId e, std::ostream* os) { *os << "e" << e.value; }
inline void PrintTo(const EdgeSet& s, std::ostream* os) {
  *os << "{";
  bool first = true;
  s.for_each([&](EdgeId e) {
    *os << (first ? "" : ",") << e.value;
    first = false;
  });
  *os << "}";
}
inline void PrintTo(VertexId v, std::ostream* os) { *os << "v" << v.value; }

}  // namespace msplab

namespace msplab::testing {

// ---------------------------------------------------------------------------
// Fixtures

/// S -> a -> b -> D with E(a) = {e1}, E(b) = {e1, e2} and E(D) = {e1, e2, e3}
/// (or {e2, e3} for the primed variant, which has no simple path).
inline MultistageGraph chain(bool primed = false) {
  GraphBuilder b(3);
  b.add_vertex("S", 0).add_vertex("a", 1).add_vertex("b", 2).add_vertex("D", 3);
  auto e1 = b.add_edge("S", "a");
  auto e2 = b.add_edge("a", "b");
  auto e3 = b.add_edge("b", "D");
  b.label("a", {e1});
  b.label("b", {e1, e2});
  if (primed)
    b.label("D", {e2, e3});
  else
    b.label("D", {e1, e2, e3});
  return b.build();
}

inline EdgeSet ids(const MultistageGraph& g, std::initializer_list<std::uint32_t> members) {
  EdgeSet out = g.empty_set();
  for (auto m : members) out.insert(EdgeId{m});
  return out;
}

inline VertexId vid(const MultistageGraph& g, const std::string& name) { return *g.find_vertex(name); }

inline EdgeId eid(const MultistageGraph& g, const std::string& from, const std::string& to) {
  return *g.find_edge(vid(g, from), vid(g, to));
}

inline UndirectedGraph complete(int n) {
  UndirectedGraph ug(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) ug.add_edge(u, v);
  return ug;
}

/// Graph on n vertices whose edge set is the bit pattern `mask` over the
/// pairs (1,2), (1,3), ..., (n-1,n).
inline UndirectedGraph from_mask(int n, std::uint64_t mask) {
  UndirectedGraph ug(n);
  int bit = 0;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v, ++bit)
      if ((mask >> bit) & 1) ug.add_edge(u, v);
  return ug;
}

// ---------------------------------------------------------------------------
// Random instances

struct RandomShape {
  int stages_min = 2;
  int stages_max = 6;
  int width_max = 3;
  double edge_p = 0.6;
  double eset_p = 0.6;
};

/// Validated random instance. Unlike gen_msp there is no pruning, so dead
/// vertices and dangling edges occur.
inline MultistageGraph random_msp(std::mt19937_64& rng, const RandomShape& s) {
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  const int L = std::uniform_int_distribution<int>(s.stages_min, s.stages_max)(rng);
  GraphBuilder b(L);
  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(L) + 1);
  for (int l = 0; l <= L; ++l) {
    const int w = (l == 0 || l == L) ? 1 : std::uniform_int_distribution<int>(1, s.width_max)(rng);
    for (int i = 0; i < w; ++i) {
      std::string name = l == 0 ? "S" : l == L ? "D" : "v" + std::to_string(l) + "_" + std::to_string(i);
      b.add_vertex(name, l);
      names[static_cast<std::size_t>(l)].push_back(name);
    }
  }
  std::vector<GraphBuilder::EdgeHandle> edges;
  for (int l = 1; l <= L; ++l)
    for (const auto& from : names[static_cast<std::size_t>(l) - 1])
      for (const auto& to : names[static_cast<std::size_t>(l)])
        if (coin(s.edge_p)) edges.push_back(b.add_edge(from, to, l));
  for (int l = 1; l <= L; ++l)
    for (const auto& v : names[static_cast<std::size_t>(l)])
      for (auto e : edges)
        if (coin(s.eset_p)) b.label(v, e);
  return b.build();
}

inline EdgeSet random_subset(std::mt19937_64& rng, const MultistageGraph& g, double p) {
  EdgeSet out = g.empty_set();
  for (std::uint32_t i = 0; i < g.edge_count(); ++i)
    if (std::uniform_real_distribution<double>(0, 1)(rng) < p) out.insert(EdgeId{i});
  return out;
}

// ---------------------------------------------------------------------------
// References

/// Every u->v path (as an edge list) using only edges of es.
inline std::vector<std::vector<EdgeId>> ref_paths(const EdgeSet& es, VertexId u, VertexId v,
                                                  const MultistageGraph& g) {
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> path;
  std::function<void(VertexId)> walk = [&](VertexId x) {
    if (x == v) {
      if (!path.empty()) out.push_back(path);
      return;
    }
    if (g.stage_of(x) >= g.stage_of(v)) return;
    for (EdgeId e : g.out_edges(x)) {
      if (!es.contains(e)) continue;
      path.push_back(e);
      walk(g.edge(e).to);
      path.pop_back();
    }
  };
  walk(u);
  return out;
}

inline EdgeSet ref_tidy(const EdgeSet& es, VertexId u, VertexId v, const MultistageGraph& g) {
  EdgeSet out(es.universe());
  for (const auto& p : ref_paths(es, u, v, g))
    for (EdgeId e : p) out.insert(e);
  return out;
}

/// R(e) by its definition: edges of e.to->D paths along which every vertex,
/// e.to included, has e in its edge set.
inline EdgeSet ref_init(const MultistageGraph& g, EdgeId e) {
  EdgeSet out = g.empty_set();
  for (const auto& p : ref_paths(g.all_edges(), g.edge(e).to, g.sink(), g)) {
    bool ok = true;
    for (EdgeId step : p)
      ok = ok && g.eset(g.edge(step).from).contains(e) && g.eset(g.edge(step).to).contains(e);
    if (ok)
      for (EdgeId step : p) out.insert(step);
  }
  return out;
}

inline std::vector<EdgeSet> ref_init_all(const MultistageGraph& g) {
  std::vector<EdgeSet> r;
  for (std::uint32_t i = 0; i < g.edge_count(); ++i) r.push_back(ref_init(g, EdgeId{i}));
  return r;
}

/// Literal comp: drop edges whose R, cut to the current set, reaches no b->v
/// path (edges ending at v exempt), keep S->v paths, repeat.
inline EdgeSet ref_comp(const EdgeSet& es, VertexId v, const std::vector<EdgeSet>& r, const MultistageGraph& g) {
  EdgeSet current = es;
  while (true) {
    EdgeSet next(es.universe());
    current.for_each([&](EdgeId e) {
      const auto& edge = g.edge(e);
      EdgeSet cut = r[e.value];
      cut &= current;
      if (edge.to == v || !ref_tidy(cut, edge.to, v, g).empty()) next.insert(e);
    });
    next = ref_tidy(next, g.source(), v, g);
    if (next == current) return current;
    current = next;
  }
}

/// Literal change on r[e].
inline void ref_change(std::vector<EdgeSet>& r, EdgeId e, const MultistageGraph& g) {
  const auto& self = g.edge(e);
  if (self.stage == 1) {
    r[e.value] = ref_tidy(r[e.value], self.to, g.sink(), g);
    return;
  }
  while (true) {
    const EdgeSet current = r[e.value];
    EdgeSet kept(current.universe());
    current.for_each([&](EdgeId cand) {
      if (g.edge(cand).stage <= self.stage) {
        kept.insert(cand);
        return;
      }
      const VertexId b = g.edge(cand).to;
      const EdgeSet comp_b = ref_comp(g.eset(b), b, r, g);
      EdgeSet t = g.empty_set();
      for (std::uint32_t id = 0; id < g.edge_count(); ++id) {
        const EdgeId cd{id};
        if (g.edge(cd).stage >= self.stage) continue;
        EdgeSet cut = r[id];
        cut &= comp_b;
        const EdgeSet p = ref_tidy(cut, g.edge(cd).to, b, g);
        if (p.contains(e) && p.contains(cand)) t.insert(cd);
      }
      if (!ref_comp(ref_tidy(t, g.source(), self.from, g), self.from, r, g).empty()) kept.insert(cand);
    });
    const EdgeSet next = ref_tidy(kept, self.to, g.sink(), g);
    if (next == current) return;
    r[e.value] = next;
  }
}

struct RefZh {
  bool yes = false;
  EdgeSet final_comp_ed;
  std::vector<EdgeSet> reach;
};

/// Slow transcription of the whole solver: no memo, no id ranges.
inline RefZh ref_zh(MultistageGraph g) {
  std::vector<EdgeSet> r = ref_init_all(g);
  const int L = g.stages();
  while (true) {
    const std::vector<EdgeSet> before = r;
    for (int l = 1; l <= L - 1; ++l) {
      for (std::uint32_t id = 0; id < g.edge_count(); ++id)
        if (g.edge(EdgeId{id}).stage == l) ref_change(r, EdgeId{id}, g);
      for (VertexId v : g.stage_vertices(l)) g.set_eset(v, ref_comp(g.eset(v), v, r, g));
      for (std::uint32_t id = 0; id < g.edge_count(); ++id) {
        const auto& edge = g.edge(EdgeId{id});
        if (edge.stage > l) continue;
        EdgeSet next = r[id];
        if (edge.stage < l) {
          EdgeSet limited = g.empty_set();
          for (VertexId v : g.stage_vertices(l)) {
            EdgeSet cut = r[id];
            cut &= ref_comp(g.eset(v), v, r, g);
            limited |= ref_tidy(cut, edge.to, v, g);
          }
          EdgeSet window = g.empty_set();
          for (std::uint32_t m = 0; m < g.edge_count(); ++m) {
            const int s = g.edge(EdgeId{m}).stage;
            if (s > edge.stage && s <= l) window.insert(EdgeId{m});
          }
          next -= window;
          next |= limited;
        }
        r[id] = ref_tidy(next, edge.to, g.sink(), g);
      }
    }
    if (r == before) break;
  }
  RefZh out;
  out.final_comp_ed = ref_comp(g.eset(g.sink()), g.sink(), r, g);
  out.yes = !out.final_comp_ed.empty();
  out.reach = std::move(r);
  return out;
}

/// Simple path by enumerating every S->D path and checking each prefix.
inline std::optional<std::vector<EdgeId>> ref_simple_path(const MultistageGraph& g) {
  for (const auto& p : ref_paths(g.all_edges(), g.source(), g.sink(), g)) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i)
      for (std::size_t j = 0; j <= i && ok; ++j) ok = g.eset(g.edge(p[i]).to).contains(p[j]);
    if (ok) return p;
  }
  return std::nullopt;
}

/// Hamilton circuit by permuting vertices 2..n behind vertex 1.
inline bool ref_hamilton(const UndirectedGraph& ug) {
  const int n = ug.order();
  if (n < 3) return false;
  std::vector<int> rest(static_cast<std::size_t>(n) - 1);
  std::iota(rest.begin(), rest.end(), 2);
  do {
    bool ok = ug.has_edge(1, rest.front()) && ug.has_edge(rest.back(), 1);
    for (std::size_t i = 0; i + 1 < rest.size() && ok; ++i) ok = ug.has_edge(rest[i], rest[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

}  // namespace msplab::testing

#endif  // MSPLAB_TESTS_SUPPORT_HPP
