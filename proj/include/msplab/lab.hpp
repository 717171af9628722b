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

// Verdict classification, the in-degree graph vector and counterexample
// minimisation.

#ifndef MSPLAB_LAB_HPP
#define MSPLAB_LAB_HPP

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "msplab/graph.hpp"
#include "msplab/oracle.hpp"
#include "msplab/zh_solver.hpp"

namespace msplab {

enum class VerdictKind { kAgreeYes, kAgreeNo, kBugNecessity, kCandidateCounterexample, kUnknown };

inline constexpr VerdictKind kAllVerdicts[] = {VerdictKind::kAgreeYes, VerdictKind::kAgreeNo,
                                               VerdictKind::kBugNecessity,
                                               VerdictKind::kCandidateCounterexample,
                                               VerdictKind::kUnknown};

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::kAgreeYes:
      return "AGREE_YES";
    case VerdictKind::kAgreeNo:
      return "AGREE_NO";
    case VerdictKind::kBugNecessity:
      return "BUG_NECESSITY";
    case VerdictKind::kCandidateCounterexample:
      return "CANDIDATE_COUNTEREXAMPLE";
    case VerdictKind::kUnknown:
      return "UNKNOWN";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::kUnknown;
  Answer zh = Answer::kNo;
  Answer oracle = Answer::kNo;
};

/// zh NO against an oracle YES contradicts the proven necessity direction and
/// marks a solver bug; zh YES against an exhausted search is a candidate
/// counterexample to sufficiency.
inline Verdict classify(const ZhResult& zh, const OracleResult& orc) {
  Verdict v{VerdictKind::kUnknown, zh.answer, orc.answer};
  if (orc.answer == Answer::kTimeout) return v;
  if (zh.answer == Answer::kYes)
    v.kind = orc.answer == Answer::kYes ? VerdictKind::kAgreeYes : VerdictKind::kCandidateCounterexample;
  else
    v.kind = orc.answer == Answer::kYes ? VerdictKind::kBugNecessity : VerdictKind::kAgreeNo;
  return v;
}

// ---------------------------------------------------------------------------
// Graph vector

/// (x_1, ..., x_L) with x_l the sum over stage-l vertices of in-degree - 1,
/// and x_L = 0.
using GraphVector = std::vector<long long>;

inline GraphVector vec_metric(const MultistageGraph& g) {
  const int L = g.stages();
  GraphVector x(static_cast<std::size_t>(std::max(L, 0)), 0);
  for (int l = 1; l <= L - 1; ++l)
    for (VertexId v : g.stage_vertices(l))
      x[static_cast<std::size_t>(l) - 1] += static_cast<long long>(g.in_edges(v).size()) - 1;
  return x;
}

inline std::strong_ordering lex_compare(const GraphVector& a, const GraphVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("graph vectors differ in dimension: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Minimisation

/// One shrink step.
struct ShrinkMove {
  enum class Kind { kDeleteVertex, kDeleteEdge, kMergeVertices, kDropLabel };
  Kind kind;
  std::uint32_t a = 0;  // vertex or edge id
  std::uint32_t b = 0;  // merged-away vertex, or the edge dropped from E(a)
};

inline const char* to_string(ShrinkMove::Kind k) {
  switch (k) {
    case ShrinkMove::Kind::kDeleteVertex:
      return "delete-vertex";
    case ShrinkMove::Kind::kDeleteEdge:
      return "delete-edge";
    case ShrinkMove::Kind::kMergeVertices:
      return "merge-vertices";
    case ShrinkMove::Kind::kDropLabel:
      return "drop-label";
  }
  return "?";
}

/// g with move applied. Vertices keep their names; edges that become
/// parallel after a merge are fused and inherit every membership.
inline MultistageGraph apply_move(const MultistageGraph& g, const ShrinkMove& move) {
  using Kind = ShrinkMove::Kind;
  const auto nv = g.vertex_count();
  const auto ne = g.edge_count();
  std::vector<bool> vertex_kept(nv, true);
  std::vector<std::uint32_t> redirect(nv);
  for (std::uint32_t v = 0; v < nv; ++v) redirect[v] = v;
  std::vector<bool> edge_kept(ne, true);

  switch (move.kind) {
    case Kind::kDeleteVertex:
      vertex_kept[move.a] = false;
      for (EdgeId e : g.in_edges(VertexId{move.a})) edge_kept[e.value] = false;
      for (EdgeId e : g.out_edges(VertexId{move.a})) edge_kept[e.value] = false;
      break;
    case Kind::kDeleteEdge:
      edge_kept[move.a] = false;
      break;
    case Kind::kMergeVertices:
      vertex_kept[move.b] = false;
      redirect[move.b] = move.a;
      break;
    case Kind::kDropLabel:
      break;
  }

  GraphBuilder b(g.stages());
  for (std::uint32_t v = 0; v < nv; ++v)
    if (vertex_kept[v]) b.add_vertex(g.name_of(VertexId{v}), g.stage_of(VertexId{v}));
  std::map<std::pair<std::uint32_t, std::uint32_t>, GraphBuilder::EdgeHandle> fused;
  std::vector<std::optional<GraphBuilder::EdgeHandle>> handle(ne);
  for (std::uint32_t i = 0; i < ne; ++i) {
    if (!edge_kept[i]) continue;
    const auto& e = g.edge(EdgeId{i});
    const std::pair key{redirect[e.from.value], redirect[e.to.value]};
    auto it = fused.find(key);
    if (it == fused.end())
      it = fused.emplace(key, b.add_edge(g.name_of(VertexId{key.first}), g.name_of(VertexId{key.second}),
                                         e.stage))
               .first;
    handle[i] = it->second;
  }
  for (std::uint32_t v = 0; v < nv; ++v) {
    if (!vertex_kept[v]) continue;
    g.eset(VertexId{v}).for_each([&](EdgeId e) {
      if (!handle[e.value]) return;
      if (move.kind == Kind::kDropLabel && move.a == v && move.b == e.value) return;
      b.label(g.name_of(VertexId{v}), *handle[e.value]);
    });
  }
  return b.build();
}

/// Every single move applicable to g, in a fixed order.
inline std::vector<ShrinkMove> shrink_moves(const MultistageGraph& g) {
  using Kind = ShrinkMove::Kind;
  std::vector<ShrinkMove> moves;
  const int L = g.stages();
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const int s = g.stage_of(VertexId{v});
    if (s > 0 && s < L) moves.push_back({Kind::kDeleteVertex, v, 0});
  }
  for (std::uint32_t e = 0; e < g.edge_count(); ++e) moves.push_back({Kind::kDeleteEdge, e, 0});
  for (int l = 1; l < L; ++l) {
    const auto& vs = g.stage_vertices(l);
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (g.eset(vs[i]) == g.eset(vs[j])) moves.push_back({Kind::kMergeVertices, vs[i].value, vs[j].value});
  }
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    g.eset(VertexId{v}).for_each([&](EdgeId e) { moves.push_back({Kind::kDropLabel, v, e.value}); });
  return moves;
}

struct MinimizeBudget {
  std::size_t max_evaluations = 20'000;
  std::chrono::milliseconds max_time{60'000};
};

struct MinimizeResult {
  MultistageGraph graph;
  std::size_t evaluations = 0;
  std::size_t accepted_moves = 0;
  bool budget_exhausted = false;
};

using GraphPredicate = std::function<bool(const MultistageGraph&)>;

/// Greedy shrinking. Each round orders the single-move neighbours whose
/// graph vector is lexicographically no larger than the current one
/// (smallest vector first, ties in move order), and takes the first on which
/// the predicate still holds. Stops when no neighbour qualifies or the
/// budget runs out. Every move removes a vertex, an edge or a label, so the
/// loop terminates.
inline MinimizeResult minimize(const MultistageGraph& input, const GraphPredicate& predicate,
                               const MinimizeBudget& budget = {}) {
  if (!predicate(input)) throw std::invalid_argument("predicate does not hold on the input graph");
  const auto started = std::chrono::steady_clock::now();
  MinimizeResult out{input, 1, 0, false};
  auto over_budget = [&] {
    return out.evaluations >= budget.max_evaluations ||
           (budget.max_time.count() > 0 && std::chrono::steady_clock::now() - started > budget.max_time);
  };

  while (true) {
    const MultistageGraph& current = out.graph;
    const GraphVector here = vec_metric(current);
    struct Candidate {
      GraphVector vec;
      std::size_t order;
      MultistageGraph graph;
    };
    std::vector<Candidate> ranked;
    std::vector<ShrinkMove> relabels;
    const auto moves = shrink_moves(current);
    for (std::size_t i = 0; i < moves.size(); ++i) {
      // Dropping a label leaves the vector unchanged; those graphs are built
      // on demand after every structural candidate.
      if (moves[i].kind == ShrinkMove::Kind::kDropLabel) {
        relabels.push_back(moves[i]);
        continue;
      }
      MultistageGraph next = apply_move(current, moves[i]);
      if (!validate(next).ok) continue;
      GraphVector vec = vec_metric(next);
      if (lex_compare(vec, here) == std::strong_ordering::greater) continue;
      ranked.push_back(Candidate{std::move(vec), i, std::move(next)});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const Candidate& x, const Candidate& y) {
      return lex_compare(x.vec, y.vec) == std::strong_ordering::less;
    });
    bool moved = false;
    auto attempt = [&](MultistageGraph&& next) {
      if (over_budget()) {
        out.budget_exhausted = true;
        return true;
      }
      ++out.evaluations;
      if (!predicate(next)) return false;
      out.graph = std::move(next);
      ++out.accepted_moves;
      moved = true;
      return true;
    };
    bool stop = false;
    for (auto& c : ranked)
      if ((stop = attempt(std::move(c.graph)))) break;
    if (!stop)
      for (const auto& m : relabels)
        if ((stop = attempt(apply_move(current, m)))) break;
    if (out.budget_exhausted) return out;
    if (!moved) return out;
  }
}

/// True when Z-H answers YES but an exhaustive search proves there is no
/// simple path.
inline bool is_candidate_counterexample(const MultistageGraph& g, const Budget& oracle_budget = {}) {
  if (!validate(g).ok) return false;
  const ZhResult zh = zh_solve(g);
  if (zh.answer != Answer::kYes) return false;
  return oracle_simple_path(g, oracle_budget).answer == Answer::kNo;
}

}  // namespace msplab

#endif  // MSPLAB_LAB_HPP
