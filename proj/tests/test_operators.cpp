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

#include "msplab/operators.hpp"
#include "support.hpp"

namespace msplab {
namespace {

using testing::chain;
using testing::eid;
using testing::ids;
using testing::vid;

// Chain ids: e1 = S->a (0), e2 = a->b (1), e3 = b->D (2).

TEST(TidyTest, ChainIsKept) {
  const auto g = chain();
  EXPECT_EQ(tidy(g.all_edges(), g.source(), g.sink(), g), g.all_edges());
}

TEST(TidyTest, DanglingEdgeRemoved) {
  GraphBuilder b(3);
  b.add_vertex("S", 0).add_vertex("a", 1).add_vertex("b", 2).add_vertex("c", 2).add_vertex("D", 3);
  b.add_edge("S", "a");
  b.add_edge("a", "b");
  b.add_edge("a", "c");
  b.add_edge("b", "D");
  const auto g = b.build();
  const EdgeSet chain_only = ids(g, {eid(g, "S", "a").value, eid(g, "a", "b").value, eid(g, "b", "D").value});
  const EdgeSet got = tidy(g.all_edges(), g.source(), g.sink(), g);
  EXPECT_EQ(got, chain_only);
  EXPECT_EQ(got, testing::ref_tidy(g.all_edges(), g.source(), g.sink(), g));
}

TEST(TidyTest, EmptyStaysEmpty) {
  const auto g = chain();
  EXPECT_TRUE(tidy(g.empty_set(), g.source(), g.sink(), g).empty());
}

TEST(InitTest, ChainExamples) {
  const auto c = chain();
  EXPECT_EQ(init_reachable(c, EdgeId{0}), ids(c, {1, 2}));
  EXPECT_TRUE(init_reachable(c, EdgeId{2}).empty());
  const auto cp = chain(true);
  EXPECT_TRUE(init_reachable(cp, EdgeId{0}).empty());
  // Definition-level check: no e1-carrying path reaches D in C'.
  EXPECT_TRUE(testing::ref_init(cp, EdgeId{0}).empty());
}

TEST(InitTest, ChainInitAll) {
  const auto c = chain();
  const auto r = init_all(c);
  EXPECT_EQ(r[EdgeId{0}], ids(c, {1, 2}));
  EXPECT_EQ(r[EdgeId{1}], ids(c, {2}));
  EXPECT_TRUE(r[EdgeId{2}].empty());
}

TEST(InitTest, UnlabeledGraphHasEmptyEntries) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto g = testing::random_msp(rng, {2, 6, 3, 0.7, 0.0});
    const auto r = init_all(g);
    for (const auto& entry : r.entries()) EXPECT_TRUE(entry.empty());
  }
}

TEST(InitTest, FullyLabeledGraphReachesEverything) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const auto g = testing::random_msp(rng, {2, 6, 3, 0.7, 1.0});
    const auto r = init_all(g);
    for (std::uint32_t id = 0; id < g.edge_count(); ++id) {
      const EdgeId e{id};
      EXPECT_EQ(r[e], testing::ref_tidy(g.all_edges(), g.edge(e).to, g.sink(), g));
    }
  }
}

TEST(InitTest, MatchesDefinitionOnRandomGraphs) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto g = testing::random_msp(rng, {});
    const auto r = init_all(g);
    const auto ref = testing::ref_init_all(g);
    for (std::uint32_t id = 0; id < g.edge_count(); ++id) {
      EXPECT_EQ(r[EdgeId{id}], ref[id]);
      r[EdgeId{id}].for_each([&](EdgeId m) { EXPECT_GT(g.edge(m).stage, g.edge(EdgeId{id}).stage); });
    }
  }
}

TEST(CompTest, ChainExamples) {
  const auto c = chain();
  EXPECT_EQ(comp(c.eset(c.sink()), c.sink(), init_all(c), c), ids(c, {0, 1, 2}));
  const auto cp = chain(true);
  EXPECT_TRUE(comp(cp.eset(cp.sink()), cp.sink(), init_all(cp), cp).empty());
  EXPECT_TRUE(comp(c.empty_set(), c.sink(), init_all(c), c).empty());
}

TEST(CompTest, ChainMatchesReference) {
  for (bool primed : {false, true}) {
    const auto g = chain(primed);
    const auto r = init_all(g);
    EXPECT_EQ(comp(g.eset(g.sink()), g.sink(), r, g), testing::ref_comp(g.eset(g.sink()), g.sink(), r.entries(), g));
  }
}

TEST(ChangeTest, ChainExamples) {
  const auto c = chain();
  auto r = init_all(c);
  EXPECT_EQ(change(r, EdgeId{1}, c), ids(c, {2}));
  EXPECT_EQ(change(r, EdgeId{0}, c), ids(c, {1, 2}));
  EXPECT_TRUE(change(r, EdgeId{2}, c).empty());
}

TEST(ChangeTest, EmptyEntryStaysEmpty) {
  const auto cp = chain(true);
  auto r = init_all(cp);
  ASSERT_TRUE(r[EdgeId{0}].empty());
  EXPECT_TRUE(change(r, EdgeId{0}, cp).empty());
}

// Randomised agreement with the references plus the contraction,
// idempotence and sweep-bound properties.
TEST(OperatorPropertyTest, AgreeWithReferences) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = testing::random_msp(rng, {2, 6, 3, 0.6, 0.7});
    OperatorContext ctx;
    ReachMap r = init_all(g, &ctx);
    std::vector<EdgeSet> ref = r.entries();

    // change on a random sequence of edges.
    for (int k = 0; k < 3 && g.edge_count() > 0; ++k) {
      const EdgeId e{static_cast<std::uint32_t>(rng() % g.edge_count())};
      const EdgeSet prior = r[e];
      const EdgeSet got = change(r, e, g, ctx);
      testing::ref_change(ref, e, g);
      EXPECT_EQ(got, ref[e.value]) << "change on edge " << e.value;
      EXPECT_TRUE(got.is_subset_of(prior));
    }
    EXPECT_FALSE(ctx.stats.sweep_bound_exceeded);

    const auto es = testing::random_subset(rng, g, 0.7);
    const auto& vs = g.vertices();
    const VertexId v{static_cast<std::uint32_t>(1 + rng() % (vs.size() - 1))};
    std::size_t sweeps = 0;
    const EdgeSet c = comp(es, v, r, g, nullptr, {}, &sweeps);
    EXPECT_EQ(c, testing::ref_comp(es, v, r.entries(), g));
    EXPECT_TRUE(c.is_subset_of(es));
    EXPECT_LE(sweeps, es.size() + 1);
    EXPECT_EQ(comp(c, v, r, g), c);
    EXPECT_EQ(comp(es, v, r, g, nullptr, CompSchedule{true, false}), c);

    const VertexId u{static_cast<std::uint32_t>(rng() % vs.size())};
    const EdgeSet t = tidy(es, u, v, g);
    EXPECT_EQ(t, testing::ref_tidy(es, u, v, g));
    EXPECT_TRUE(t.is_subset_of(es));
    EXPECT_EQ(tidy(t, u, v, g), t);
    EXPECT_EQ(has_path(es, u, v, g), !t.empty());
  }
}

TEST(OperatorContextTest, MemoInvalidatesOnWrite) {
  const auto c = chain();
  OperatorContext ctx;
  ReachMap r = init_all(c, &ctx);
  const EdgeSet first = comp_of_vertex(c.sink(), r, c, ctx);
  EXPECT_EQ(comp_of_vertex(c.sink(), r, c, ctx), first);
  EXPECT_EQ(ctx.stats.comp_cache_hits, 1u);
  r.assign(EdgeId{0}, c.empty_set());
  EXPECT_TRUE(comp_of_vertex(c.sink(), r, c, ctx).empty());
  EXPECT_EQ(ctx.stats.comp_cache_hits, 1u);
}

TEST(ReachMapTest, VersionsCountEffectiveWrites) {
  const auto c = chain();
  ReachMap r = init_all(c);
  const auto v0 = r.version();
  EXPECT_FALSE(r.assign(EdgeId{0}, r[EdgeId{0}]));
  EXPECT_EQ(r.version(), v0);
  EXPECT_TRUE(r.assign(EdgeId{0}, ids(c, {2})));
  EXPECT_EQ(r.version(), v0 + 1);
  EXPECT_EQ(r.entry_version(EdgeId{0}), 1u);
  EXPECT_EQ(r.total_size(), 2u);
}

}  // namespace
}  // namespace msplab
