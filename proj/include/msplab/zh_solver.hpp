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

// The Z-H decision procedure for the multistage simple path problem.
//
//   init    R(e) <- init_reachable(e) for every edge.
//   sweep   for l = 1 .. L-1:
//     bind    change(R, e) for every stage-l edge e;
//     shrink  E(v) <- comp(E(v), v, R) for every stage-l vertex v;
//     limit   for every <a,b,k> with k <= l, replace the stage (k, l] part
//             of R(a,b,k) by the union over stage-l vertices v of
//             tidy(R(a,b,k) & comp(E(v), v, R), b, v), then tidy R(a,b,k)
//             to b->D paths.
//   Sweeps repeat until one leaves every R entry unchanged; the answer is
//   YES iff comp(E(D), D, R) is non-empty.
//
// E(v) assignments from the shrink phase persist across sweeps. Stage-L
// vertices are never shrunk, so the answer uses the input E(D).

#ifndef MSPLAB_ZH_SOLVER_HPP
#define MSPLAB_ZH_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msplab/edge_set.hpp"
#include "msplab/graph.hpp"
#include "msplab/operators.hpp"

namespace msplab {

enum class Answer { kYes, kNo, kTimeout };

inline const char* to_string(Answer a) {
  switch (a) {
    case Answer::kYes:
      return "YES";
    case Answer::kNo:
      return "NO";
    case Answer::kTimeout:
      return "TIMEOUT";
  }
  return "?";
}

/// Thrown when a graph fails validation before solving.
class InvalidGraphError : public std::invalid_argument {
 public:
  explicit InvalidGraphError(ValidationReport report)
      : std::invalid_argument(summarize(report)), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  static std::string summarize(const ValidationReport& r) {
    std::string s = "invalid multistage graph:";
    for (const auto& v : r.violations) s += " " + v.code + " (" + v.location + ")";
    return s;
  }
  ValidationReport report_;
};

/// Thrown when the outer loop exceeds its sweep limit. R only shrinks, so
/// this indicates an implementation defect rather than a hard instance.
class AbnormalTermination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  /// 0 selects the proven limit 1 + sum of |R(e)| after initialisation.
  std::size_t max_sweeps = 0;
};

struct ZhMetrics {
  std::size_t outer_sweeps = 0;
  OperatorStats operators;
  std::size_t reach_after_init = 0;
  std::size_t edges_deleted = 0;
  std::size_t eset_edges_deleted = 0;
  std::chrono::nanoseconds wall_time{0};

  /// Equality ignoring wall time.
  bool same_counts(const ZhMetrics& o) const {
    return outer_sweeps == o.outer_sweeps && operators == o.operators &&
           reach_after_init == o.reach_after_init && edges_deleted == o.edges_deleted &&
           eset_edges_deleted == o.eset_edges_deleted;
  }
};

struct ZhResult {
  Answer answer = Answer::kNo;
  EdgeSet final_comp_ed;
  ReachMap final_reach;
  ZhMetrics metrics;
};

/// One recorded state change. kind is "init" (members holds the initial
/// R(edge)), "change" or "limit" (members holds the ids removed from
/// R(edge) by the bind or limit phase), or "eset" (ids removed from
/// E(vertex) by the shrink phase).
struct TraceEvent {
  std::string kind;
  std::size_t sweep = 0;
  int stage = 0;
  std::optional<EdgeId> edge;
  std::optional<VertexId> vertex;
  std::vector<EdgeId> members;
};

using TraceLog = std::vector<TraceEvent>;

namespace detail {

inline std::vector<EdgeId> removed(const EdgeSet& before, const EdgeSet& after) {
  return (before - after).members();
}

inline ZhResult run_zh(const MultistageGraph& input, const SolveOptions& opts, TraceLog* trace) {
  const auto started = std::chrono::steady_clock::now();
  if (auto report = validate(input); !report.ok) throw InvalidGraphError(std::move(report));

  MultistageGraph g = input;
  OperatorContext ctx;
  ZhResult result;
  ReachMap r = init_all(g, &ctx);
  result.metrics.reach_after_init = r.total_size();
  if (trace) {
    for (std::uint32_t id = 0; id < g.edge_count(); ++id)
      trace->push_back(TraceEvent{"init", 0, g.edge(EdgeId{id}).stage, EdgeId{id}, std::nullopt,
                                  r[EdgeId{id}].members()});
  }

  const std::size_t limit = opts.max_sweeps ? opts.max_sweeps : 1 + r.total_size();
  const int L = g.stages();
  std::size_t sweeps = 0;
  while (true) {
    if (++sweeps > limit)
      throw AbnormalTermination("outer loop exceeded " + std::to_string(limit) + " sweeps");
    const std::uint64_t version_at_start = r.version();

    for (int l = 1; l <= L - 1; ++l) {
      // Bind R of every stage-l edge.
      for (std::uint32_t id = g.stage_edge_begin(l); id < g.stage_edge_end(l); ++id) {
        const EdgeId e{id};
        const EdgeSet before = trace ? r[e] : EdgeSet();
        change(r, e, g, ctx);
        if (trace && before != r[e])
          trace->push_back(TraceEvent{"change", sweeps, l, e, std::nullopt, removed(before, r[e])});
      }
      // Shrink E(v) of every stage-l vertex; the new value persists.
      for (VertexId v : g.stage_vertices(l)) {
        EdgeSet next = comp(g.eset(v), v, r, g, &ctx);
        if (next != g.eset(v)) {
          result.metrics.eset_edges_deleted += g.eset(v).size() - next.size();
          if (trace)
            trace->push_back(
                TraceEvent{"eset", sweeps, l, std::nullopt, v, removed(g.eset(v), next)});
          g.set_eset(v, std::move(next));
          ctx.labels_changed();
        }
      }
      // Limit the stage k+1..l part of each earlier R entry to what the
      // stage-l vertices still support, then tidy toward D.
      const std::uint32_t window_end = g.stage_edge_end(l);
      for (std::uint32_t id = 0; id < window_end; ++id) {
        const EdgeId e{id};
        const auto& edge = g.edge(e);
        const EdgeSet& current = r[e];
        EdgeSet next = current;
        if (edge.stage < l) {
          EdgeSet limited(g.edge_count());
          EdgeSet scratch(g.edge_count());
          for (VertexId v : g.stage_vertices(l)) {
            scratch = current;
            scratch &= comp_of_vertex(v, r, g, ctx);
            limited |= tidy(scratch, edge.to, v, g, &ctx);
          }
          next.erase_range(g.stage_edge_begin(edge.stage + 1), window_end);
          next |= limited;
        }
        next = tidy(next, edge.to, g.sink(), g, &ctx);
        if (next != current) {
          if (trace)
            trace->push_back(TraceEvent{"limit", sweeps, l, e, std::nullopt, removed(current, next)});
          r.assign(e, std::move(next));
        }
      }
    }
    if (r.version() == version_at_start) break;
  }

  result.final_comp_ed = comp(g.eset(g.sink()), g.sink(), r, g, &ctx);
  result.answer = result.final_comp_ed.empty() ? Answer::kNo : Answer::kYes;
  result.metrics.outer_sweeps = sweeps;
  result.metrics.operators = ctx.stats;
  result.metrics.edges_deleted = result.metrics.reach_after_init - r.total_size();
  result.final_reach = std::move(r);
  result.metrics.wall_time = std::chrono::steady_clock::now() - started;
  return result;
}

}  // namespace detail

/// Runs the Z-H procedure on g. Throws InvalidGraphError for graphs that fail
/// validate() and AbnormalTermination if the sweep limit is exceeded.
inline ZhResult zh_solve(const MultistageGraph& g, const SolveOptions& opts = {}) {
  return detail::run_zh(g, opts, nullptr);
}

/// zh_solve plus a log of every state change, in the order applied.
inline ZhResult zh_trace(const MultistageGraph& g, TraceLog& trace, const SolveOptions& opts = {}) {
  trace.clear();
  return detail::run_zh(g, opts, &trace);
}

/// Rebuilds the final reachable sets from a trace: the init records, minus
/// every recorded removal.
inline ReachMap replay_trace(const MultistageGraph& g, const TraceLog& trace) {
  std::vector<EdgeSet> entries(g.edge_count(), EdgeSet(g.edge_count()));
  for (const auto& ev : trace) {
    if (!ev.edge) continue;
    auto& slot = entries.at(ev.edge->value);
    if (ev.kind == "init") {
      for (EdgeId m : ev.members) slot.insert(m);
    } else {
      for (EdgeId m : ev.members) slot.erase(m);
    }
  }
  return ReachMap(std::move(entries));
}

}  // namespace msplab

#endif  // MSPLAB_ZH_SOLVER_HPP
