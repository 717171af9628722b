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

// Text formats.
//
// Instance (.msp), line oriented, '#' starts a comment:
//
//   msp 1
//   stages L
//   vertex NAME STAGE
//   edge ID FROM TO STAGE
//   eset VERTEX ID...
//
// Edge ids are local to the document; loading renumbers edges canonically.
// The canonical form lists vertices by (stage, name), edges by id and one
// eset line per non-source vertex with ascending ids.
//
// Undirected graph (.graph): an optional "n N" line, then one "u v" edge per
// line with positive vertex numbers. Without "n", the order is the largest
// vertex number mentioned.

#ifndef MSPLAB_IO_HPP
#define MSPLAB_IO_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "msplab/graph.hpp"
#include "msplab/oracle.hpp"
#include "msplab/undirected.hpp"
#include "msplab/zh_solver.hpp"

namespace msplab {

/// Syntax or reference error in an input document. code is one of E_EMPTY,
/// E_HEADER, E_SYNTAX, E_UNKNOWN_VERTEX, E_UNKNOWN_EDGE, E_DUPLICATE_EDGE_ID.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string code, int line, int column, const std::string& message)
      : std::runtime_error(code + " at " + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        code_(std::move(code)),
        line_(line),
        column_(column) {}

  const std::string& code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string code_;
  int line_;
  int column_;
};

namespace detail {

struct Token {
  std::string_view text;
  int column;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    f(number, text.substr(pos, end - pos));
    if (end == text.size()) break;
    pos = end + 1;
  }
}

inline long long parse_integer(const Token& t, int line, const char* what) {
  long long value = 0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError("E_SYNTAX", line, t.column, std::string("expected integer ") + what + ", got '" +
                                                     std::string(t.text) + "'");
  return value;
}

}  // namespace detail

/// Parses an instance document. Structural checks beyond name resolution are
/// left to validate(); see load_instance.
inline MultistageGraph parse_instance(std::string_view text) {
  bool seen_header = false;
  std::optional<GraphBuilder> builder;
  std::map<long long, GraphBuilder::EdgeHandle> edge_ids;
  bool any = false;

  detail::for_each_line(text, [&](int line, std::string_view raw) {
    const auto tokens = detail::tokenize(raw);
    if (tokens.empty()) return;
    any = true;
    const auto& head = tokens[0];
    auto need = [&](std::size_t n, const char* form) {
      if (tokens.size() != n)
        throw ParseError("E_SYNTAX", line, head.column, std::string("expected '") + form + "'");
    };
    if (!seen_header) {
      if (head.text != "msp" || tokens.size() != 2 || tokens[1].text != "1")
        throw ParseError("E_HEADER", line, head.column, "document must start with 'msp 1'");
      seen_header = true;
      return;
    }
    if (head.text == "stages") {
      need(2, "stages L");
      if (builder) throw ParseError("E_SYNTAX", line, head.column, "'stages' given twice");
      builder.emplace(static_cast<int>(detail::parse_integer(tokens[1], line, "stage count")));
      return;
    }
    if (!builder) throw ParseError("E_SYNTAX", line, head.column, "'stages' must precede other directives");
    if (head.text == "vertex") {
      need(3, "vertex NAME STAGE");
      builder->add_vertex(std::string(tokens[1].text),
                          static_cast<int>(detail::parse_integer(tokens[2], line, "stage")));
    } else if (head.text == "edge") {
      need(5, "edge ID FROM TO STAGE");
      const long long id = detail::parse_integer(tokens[1], line, "edge id");
      if (edge_ids.contains(id))
        throw ParseError("E_DUPLICATE_EDGE_ID", line, tokens[1].column, "edge id " + std::to_string(id) + " reused");
      for (int k : {2, 3})
        if (!builder->has_vertex(std::string(tokens[k].text)))
          throw ParseError("E_UNKNOWN_VERTEX", line, tokens[k].column,
                           "unknown vertex '" + std::string(tokens[k].text) + "'");
      edge_ids.emplace(id, builder->add_edge(std::string(tokens[2].text), std::string(tokens[3].text),
                                             static_cast<int>(detail::parse_integer(tokens[4], line, "stage"))));
    } else if (head.text == "eset") {
      if (tokens.size() < 2) throw ParseError("E_SYNTAX", line, head.column, "expected 'eset VERTEX ID...'");
      const std::string vertex(tokens[1].text);
      if (!builder->has_vertex(vertex))
        throw ParseError("E_UNKNOWN_VERTEX", line, tokens[1].column, "unknown vertex '" + vertex + "'");
      for (std::size_t k = 2; k < tokens.size(); ++k) {
        const long long id = detail::parse_integer(tokens[k], line, "edge id");
        auto it = edge_ids.find(id);
        if (it == edge_ids.end())
          throw ParseError("E_UNKNOWN_EDGE", line, tokens[k].column, "unknown edge id " + std::to_string(id));
        builder->label(vertex, it->second);
      }
    } else {
      throw ParseError("E_SYNTAX", line, head.column, "unknown directive '" + std::string(head.text) + "'");
    }
  });
  if (!any) throw ParseError("E_EMPTY", 1, 1, "document is empty");
  if (!builder) throw ParseError("E_SYNTAX", 1, 1, "missing 'stages' directive");
  return builder->build();
}

/// parse_instance followed by validate(); invalid graphs throw
/// InvalidGraphError carrying the report.
inline MultistageGraph load_instance(std::string_view text) {
  MultistageGraph g = parse_instance(text);
  if (auto report = validate(g); !report.ok) throw InvalidGraphError(std::move(report));
  return g;
}

inline std::string serialize_instance(const MultistageGraph& g) {
  std::ostringstream out;
  out << "msp 1\n";
  out << "stages " << g.stages() << "\n";
  for (const auto& v : g.vertices()) out << "vertex " << v.name << " " << v.stage << "\n";
  for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(EdgeId{i});
    out << "edge " << i << " " << g.name_of(e.from) << " " << g.name_of(e.to) << " " << e.stage << "\n";
  }
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (g.stage_of(VertexId{v}) == 0) continue;
    out << "eset " << g.name_of(VertexId{v});
    g.eset(VertexId{v}).for_each([&](EdgeId e) { out << " " << e.value; });
    out << "\n";
  }
  return out.str();
}

inline UndirectedGraph parse_ugraph(std::string_view text) {
  std::optional<int> declared;
  std::vector<std::pair<int, int>> pairs;
  int largest = 0;
  detail::for_each_line(text, [&](int line, std::string_view raw) {
    const auto tokens = detail::tokenize(raw);
    if (tokens.empty()) return;
    if (tokens[0].text == "n") {
      if (tokens.size() != 2 || declared || !pairs.empty())
        throw ParseError("E_SYNTAX", line, tokens[0].column, "'n N' must appear once, before any edge");
      declared = static_cast<int>(detail::parse_integer(tokens[1], line, "vertex count"));
      return;
    }
    if (tokens.size() != 2) throw ParseError("E_SYNTAX", line, tokens[0].column, "expected 'u v'");
    const int u = static_cast<int>(detail::parse_integer(tokens[0], line, "vertex"));
    const int v = static_cast<int>(detail::parse_integer(tokens[1], line, "vertex"));
    if (u < 1 || v < 1) throw ParseError("E_SYNTAX", line, tokens[0].column, "vertices are positive integers");
    if (u == v) throw ParseError("E_SYNTAX", line, tokens[0].column, "self-loop");
    if (declared && (u > *declared || v > *declared))
      throw ParseError("E_UNKNOWN_VERTEX", line, tokens[0].column, "vertex exceeds declared order");
    largest = std::max({largest, u, v});
    pairs.emplace_back(u, v);
  });
  const int n = declared.value_or(largest);
  if (n > UndirectedGraph::kMaxVertices) throw ParseError("E_SYNTAX", 1, 1, "more than 64 vertices");
  UndirectedGraph ug(n);
  for (auto [u, v] : pairs) ug.add_edge(u, v);
  return ug;
}

inline std::string serialize_ugraph(const UndirectedGraph& ug) {
  std::ostringstream out;
  out << "n " << ug.order() << "\n";
  for (auto [u, v] : ug.edges()) out << u << " " << v << "\n";
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << contents;
  if (!out.flush()) throw std::ios_base::failure("short write to " + path);
}

// ---------------------------------------------------------------------------
// Structured records

inline nlohmann::json ids_json(const EdgeSet& es) {
  auto arr = nlohmann::json::array();
  es.for_each([&](EdgeId e) { arr.push_back(e.value); });
  return arr;
}

inline nlohmann::json to_json(const ZhResult& r) {
  const auto& m = r.metrics;
  return {
      {"solver", "zh"},
      {"answer", to_string(r.answer)},
      {"final_comp_ed", ids_json(r.final_comp_ed)},
      {"final_size", r.final_comp_ed.size()},
      {"metrics",
       {{"outer_sweeps", m.outer_sweeps},
        {"reach_after_init", m.reach_after_init},
        {"edges_deleted", m.edges_deleted},
        {"eset_edges_deleted", m.eset_edges_deleted},
        {"tidy_calls", m.operators.tidy_calls},
        {"init_calls", m.operators.init_calls},
        {"comp_calls", m.operators.comp_calls},
        {"comp_cache_hits", m.operators.comp_cache_hits},
        {"change_calls", m.operators.change_calls},
        {"wall_time_us", std::chrono::duration_cast<std::chrono::microseconds>(m.wall_time).count()}}},
  };
}

/// witness_names: vertex names for an MSP witness; empty to emit raw numbers.
inline nlohmann::json to_json(const OracleResult& r, const MultistageGraph* g = nullptr) {
  nlohmann::json j = {{"solver", "oracle"},
                      {"answer", to_string(r.answer)},
                      {"nodes_expanded", r.nodes_expanded},
                      {"elapsed_us", std::chrono::duration_cast<std::chrono::microseconds>(r.elapsed).count()}};
  if (r.witness) {
    auto w = nlohmann::json::array();
    for (auto id : *r.witness) {
      if (g)
        w.push_back(g->name_of(VertexId{id}));
      else
        w.push_back(id);
    }
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline nlohmann::json to_json(const TraceEvent& ev) {
  nlohmann::json j = {{"kind", ev.kind}, {"sweep", ev.sweep}, {"stage", ev.stage}};
  if (ev.edge) j["edge"] = ev.edge->value;
  if (ev.vertex) j["vertex"] = ev.vertex->value;
  auto ids = nlohmann::json::array();
  for (auto e : ev.members) ids.push_back(e.value);
  j[ev.kind == "init" ? "members" : "removed"] = ids;
  return j;
}

}  // namespace msplab

#endif  // MSPLAB_IO_HPP
