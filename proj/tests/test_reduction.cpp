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

#include <gtest/gtest.h>

#include <random>

#include "msplab/generator.hpp"
#include "msplab/oracle.hpp"
#include "msplab/reduction.hpp"
#include "support.hpp"

namespace msplab {
namespace {

using testing::complete;
using testing::vid;

TEST(ReductionTest, TriangleShape) {
  const auto [g, map] = reduce_hc_to_msp(complete(3));
  EXPECT_TRUE(validate(g).ok);
  EXPECT_EQ(g.stages(), 3);
  EXPECT_EQ(g.vertex_count(), 6u);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_EQ(map.stats.internal_vertices, 4u);
  EXPECT_EQ(g.name_of(g.source()), "(1,0)");
  EXPECT_EQ(g.name_of(g.sink()), "(1,3)");
  EXPECT_EQ(g.eset(g.sink()), g.all_edges());

  // E((2,2)) loses exactly the edges touching (2,1).
  EdgeSet expected = g.all_edges();
  for (EdgeId e : g.in_edges(vid(g, "(2,1)"))) expected.erase(e);
  for (EdgeId e : g.out_edges(vid(g, "(2,1)"))) expected.erase(e);
  EXPECT_EQ(g.eset(vid(g, "(2,2)")), expected);
  EXPECT_EQ(g.eset(vid(g, "(2,1)")), g.all_edges());
}

TEST(ReductionTest, TriangleHasSimplePath) {
  const auto [g, map] = reduce_hc_to_msp(complete(3));
  const auto r = oracle_simple_path(g);
  ASSERT_EQ(r.answer, Answer::kYes);
  const std::vector<VertexId> expected{vid(g, "(1,0)"), vid(g, "(2,1)"), vid(g, "(3,2)"), vid(g, "(1,3)")};
  EXPECT_EQ(to_vertex_path(*r.witness), expected);
  EXPECT_EQ(lift_path(map, g, expected), (std::vector<int>{1, 2, 3, 1}));
}

TEST(ReductionTest, PathGraphHasNoFinalEdge) {
  UndirectedGraph p3(3);
  p3.add_edge(1, 2);
  p3.add_edge(2, 3);
  const auto [g, map] = reduce_hc_to_msp(p3);
  EXPECT_FALSE(g.find_edge(vid(g, "(3,2)"), vid(g, "(1,3)")));
  EXPECT_EQ(oracle_simple_path(g).answer, Answer::kNo);
}

TEST(ReductionTest, RejectsSmallGraphsAndBadPivots) {
  EXPECT_THROW(reduce_hc_to_msp(UndirectedGraph(2)), ReductionError);
  EXPECT_THROW(reduce_hc_to_msp(complete(4), 0), ReductionError);
  EXPECT_THROW(reduce_hc_to_msp(complete(4), 5), ReductionError);
}

TEST(ReductionTest, SizeFormula) {
  for (int n = 3; n <= 30; ++n) {
    const auto ug = gen_ugraph(n, 0.5, static_cast<std::uint64_t>(n));
    const auto [g, map] = reduce_hc_to_msp(ug);
    const std::size_t m = ug.edges().size();
    const std::size_t dp = static_cast<std::size_t>(ug.degree(1));
    EXPECT_EQ(map.stats.internal_vertices, static_cast<std::size_t>((n - 1) * (n - 1)));
    EXPECT_EQ(g.edge_count(), 2 * dp + 2 * (m - dp) * static_cast<std::size_t>(n - 2));
    EXPECT_LE(g.edge_count(), static_cast<std::size_t>(2 * n * n * n));
  }
}

// Equivalence with the Hamilton oracle on every graph of order 3..5, the
// answer does not depend on the pivot, and witnesses lift to circuits.
TEST(ReductionTest, EquivalentToHamiltonExhaustive) {
  for (int n = 3; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const auto ug = testing::from_mask(n, mask);
      const bool hamilton = oracle_hamilton(ug).answer == Answer::kYes;
      for (int pivot = 1; pivot <= n; ++pivot) {
        const auto [g, map] = reduce_hc_to_msp(ug, pivot);
        const auto r = oracle_simple_path(g);
        ASSERT_NE(r.answer, Answer::kTimeout);
        EXPECT_EQ(r.answer == Answer::kYes, hamilton) << "n=" << n << " mask=" << mask << " pivot=" << pivot;
        if (r.witness) {
          const auto circuit = lift_path(map, g, to_vertex_path(*r.witness));
          EXPECT_EQ(circuit.front(), pivot);
          EXPECT_TRUE(verify_hamilton_circuit(ug, circuit));
        }
      }
    }
  }
}

TEST(ReductionTest, LiftRejectsForeignPath) {
  const auto [g, map] = reduce_hc_to_msp(complete(3));
  const std::vector<VertexId> bogus{vid(g, "(1,0)"), vid(g, "(2,1)"), vid(g, "(2,2)"), vid(g, "(1,3)")};
  EXPECT_THROW(lift_path(map, g, bogus), std::invalid_argument);
}

}  // namespace
}  // namespace msplab
