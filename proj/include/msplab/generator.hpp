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

// Seeded instance generators. Every random decision is a pure function of
// the seed and the coordinates of the thing being decided, so instances are
// reproducible and independent of generation order.

#ifndef MSPLAB_GENERATOR_HPP
#define MSPLAB_GENERATOR_HPP

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "msplab/graph.hpp"
#include "msplab/operators.hpp"
#include "msplab/undirected.hpp"

namespace msplab {

/// Counter-based random stream: splitmix64 finalisation over a mix of the
/// seed and a key tuple.
class KeyedRng {
 public:
  explicit KeyedRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::initializer_list<std::uint64_t> key) const {
    std::uint64_t h = mix(seed_ ^ 0x6a09e667f3bcc908ULL);
    for (auto k : key) h = mix(h ^ (k + 0x9e3779b97f4a7c15ULL));
    return h;
  }
  /// Uniform in [0, 1).
  double uniform(std::initializer_list<std::uint64_t> key) const {
    return static_cast<double>(bits(key) >> 11) * 0x1.0p-53;
  }
  bool bernoulli(double p, std::initializer_list<std::uint64_t> key) const {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform(key) < p;
  }
  /// Uniform integer in [lo, hi].
  int between(int lo, int hi, std::initializer_list<std::uint64_t> key) const {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(bits(key) % span);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
};

// Distinct key streams so decisions never collide.
enum : std::uint64_t { kKeyEdge = 1, kKeySpine = 2, kKeyLabel = 3, kKeyPair = 4, kKeyShape = 5 };

struct GenShape {
  int stages = 4;
  /// Vertex count per stage, stages + 1 entries, first and last equal to 1.
  std::vector<int> widths;
  double edge_density = 0.5;
  double eset_density = 0.5;
  std::uint64_t seed = 0;
};

inline void check_shape(const GenShape& s) {
  if (s.stages < 1) throw std::invalid_argument("shape needs at least one stage");
  if (s.widths.size() != static_cast<std::size_t>(s.stages) + 1)
    throw std::invalid_argument("shape needs stages + 1 widths");
  if (s.widths.front() != 1 || s.widths.back() != 1)
    throw std::invalid_argument("first and last stage must have width 1");
  for (int w : s.widths)
    if (w < 1) throw std::invalid_argument("every stage needs at least one vertex");
  if (s.edge_density < 0.0 || s.edge_density > 1.0 || s.eset_density < 0.0 || s.eset_density > 1.0)
    throw std::invalid_argument("densities must lie in [0, 1]");
}

inline std::string generated_name(int stage, int index, int stages) {
  if (stage == 0) return "S";
  if (stage == stages) return "D";
  return "v" + std::to_string(stage) + "_" + std::to_string(index);
}

/// Random labeled multistage graph. Each candidate edge between adjacent
/// stages is kept with edge_density; one random spine S -> D is always kept so
/// an S->D path exists. Vertices and edges on no S->D path are then removed,
/// and each surviving edge joins each E(v) with probability eset_density.
inline MultistageGraph gen_msp(const GenShape& shape) {
  check_shape(shape);
  const KeyedRng rng(shape.seed);
  const int L = shape.stages;
  const auto& w = shape.widths;

  std::vector<int> spine(static_cast<std::size_t>(L) + 1, 0);
  for (int l = 1; l < L; ++l)
    spine[static_cast<std::size_t>(l)] = rng.between(0, w[static_cast<std::size_t>(l)] - 1, {kKeySpine, static_cast<std::uint64_t>(l)});

  GraphBuilder skeleton(L);
  for (int l = 0; l <= L; ++l)
    for (int i = 0; i < w[static_cast<std::size_t>(l)]; ++i) skeleton.add_vertex(generated_name(l, i, L), l);
  for (int l = 1; l <= L; ++l) {
    for (int i = 0; i < w[static_cast<std::size_t>(l) - 1]; ++i) {
      for (int j = 0; j < w[static_cast<std::size_t>(l)]; ++j) {
        const bool on_spine = spine[static_cast<std::size_t>(l) - 1] == i && spine[static_cast<std::size_t>(l)] == j;
        if (on_spine || rng.bernoulli(shape.edge_density, {kKeyEdge, static_cast<std::uint64_t>(l),
                                                           static_cast<std::uint64_t>(i),
                                                           static_cast<std::uint64_t>(j)}))
          skeleton.add_edge(generated_name(l - 1, i, L), generated_name(l, j, L), l);
      }
    }
  }
  const MultistageGraph raw = skeleton.build();
  const EdgeSet useful = tidy(raw.all_edges(), raw.source(), raw.sink(), raw);

  // Vertex coordinates (stage, index) recovered from names keep the label
  // decisions keyed by position rather than by post-pruning ids.
  auto coords = [&](VertexId v) -> std::uint64_t {
    const auto& name = raw.name_of(v);
    const int stage = raw.stage_of(v);
    int index = 0;
    if (stage != 0 && stage != L) index = std::stoi(name.substr(name.find('_') + 1));
    return (static_cast<std::uint64_t>(stage) << 32) | static_cast<std::uint64_t>(index);
  };

  GraphBuilder b(L);
  std::vector<bool> keep(raw.vertex_count(), false);
  keep[raw.source().value] = keep[raw.sink().value] = true;
  useful.for_each([&](EdgeId e) {
    keep[raw.edge(e).from.value] = true;
    keep[raw.edge(e).to.value] = true;
  });
  for (std::uint32_t v = 0; v < raw.vertex_count(); ++v)
    if (keep[v]) b.add_vertex(raw.name_of(VertexId{v}), raw.stage_of(VertexId{v}));
  std::vector<std::pair<EdgeId, GraphBuilder::EdgeHandle>> kept;
  useful.for_each([&](EdgeId e) {
    const auto& edge = raw.edge(e);
    kept.emplace_back(e, b.add_edge(raw.name_of(edge.from), raw.name_of(edge.to), edge.stage));
  });
  for (std::uint32_t v = 0; v < raw.vertex_count(); ++v) {
    const VertexId vid{v};
    if (!keep[v] || raw.stage_of(vid) == 0) continue;
    for (auto [e, handle] : kept) {
      const auto& edge = raw.edge(e);
      if (rng.bernoulli(shape.eset_density,
                        {kKeyLabel, coords(vid), coords(edge.from), coords(edge.to)}))
        b.label(raw.name_of(vid), handle);
    }
  }
  return b.build();
}

/// G(n, q) on vertices 1..n.
inline UndirectedGraph gen_ugraph(int n, double q, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("undirected graphs need at least 3 vertices");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("edge probability must lie in [0, 1]");
  const KeyedRng rng(seed);
  UndirectedGraph ug(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (rng.bernoulli(q, {kKeyPair, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)}))
        ug.add_edge(u, v);
  return ug;
}

}  // namespace msplab

#endif  // MSPLAB_GENERATOR_HPP
