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

#include "msplab/oracle.hpp"
#include "support.hpp"

namespace msplab {
namespace {

using testing::chain;
using testing::vid;

std::vector<VertexId> named_path(const MultistageGraph& g, std::initializer_list<const char*> names) {
  std::vector<VertexId> out;
  for (const char* n : names) out.push_back(vid(g, n));
  return out;
}

TEST(OracleSimplePathTest, ChainYesWithWitness) {
  const auto c = chain();
  const auto r = oracle_simple_path(c);
  ASSERT_EQ(r.answer, Answer::kYes);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(to_vertex_path(*r.witness), named_path(c, {"S", "a", "b", "D"}));
  EXPECT_TRUE(verify_simple_path(c, to_vertex_path(*r.witness)));
}

TEST(OracleSimplePathTest, ChainPrimeNo) {
  const auto r = oracle_simple_path(chain(true));
  EXPECT_EQ(r.answer, Answer::kNo);
  EXPECT_FALSE(r.witness);
}

TEST(OracleSimplePathTest, EmptyStageMeansNo) {
  GraphBuilder b(3);
  b.add_vertex("S", 0).add_vertex("a", 1).add_vertex("b", 2).add_vertex("D", 3);
  auto e1 = b.add_edge("S", "a");
  auto e3 = b.add_edge("b", "D");
  b.label_all("a").label_all("b").label_all("D");
  (void)e1;
  (void)e3;
  EXPECT_EQ(oracle_simple_path(b.build()).answer, Answer::kNo);
}

TEST(OracleSimplePathTest, TinyBudgetTimesOut) {
  std::mt19937_64 rng(3);
  const auto g = testing::random_msp(rng, {6, 6, 3, 1.0, 1.0});
  const auto r = oracle_simple_path(g, Budget{1, std::chrono::milliseconds(0)});
  EXPECT_EQ(r.answer, Answer::kTimeout);
}

TEST(VerifySimplePathTest, Examples) {
  const auto c = chain();
  const auto cp = chain(true);
  EXPECT_TRUE(verify_simple_path(c, named_path(c, {"S", "a", "b", "D"})));
  EXPECT_FALSE(verify_simple_path(cp, named_path(cp, {"S", "a", "b", "D"})));
  EXPECT_THROW(verify_simple_path(c, named_path(c, {"S", "a", "D"})), std::invalid_argument);
  // Pre-simple drops the last stages' containments.
  EXPECT_TRUE(verify_simple_path(cp, named_path(cp, {"S", "a", "b", "D"}), true));
}

// Exhaustive enumeration agrees with the search, and every witness verifies.
TEST(OracleSimplePathTest, MatchesEnumeration) {
  std::mt19937_64 rng(41);
  int yes = 0;
  for (int i = 0; i < 500; ++i) {
    const auto g = testing::random_msp(rng, {2, 7, 3, 0.7, 0.8});
    const auto r = oracle_simple_path(g);
    const auto ref = testing::ref_simple_path(g);
    ASSERT_NE(r.answer, Answer::kTimeout);
    EXPECT_EQ(r.answer == Answer::kYes, ref.has_value());
    if (r.witness) {
      ++yes;
      EXPECT_TRUE(verify_simple_path(g, to_vertex_path(*r.witness)));
    }
  }
  EXPECT_GT(yes, 20);
}

// A bigger budget never flips a completed answer.
TEST(OracleSimplePathTest, BudgetMonotone) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_msp(rng, {3, 8, 4, 0.7, 0.9});
    const auto full = oracle_simple_path(g);
    for (std::uint64_t nodes : {1ull, 5ull, 50ull, 500ull}) {
      const auto r = oracle_simple_path(g, Budget{nodes, std::chrono::milliseconds(0)});
      if (r.answer != Answer::kTimeout) {
        EXPECT_EQ(r.answer, full.answer);
      }
    }
  }
}

TEST(OracleHamiltonTest, Examples) {
  const auto k3 = oracle_hamilton(testing::complete(3));
  ASSERT_EQ(k3.answer, Answer::kYes);
  EXPECT_EQ(*k3.witness, (std::vector<std::uint32_t>{1, 2, 3, 1}));

  UndirectedGraph p3(3);
  p3.add_edge(1, 2);
  p3.add_edge(2, 3);
  EXPECT_EQ(oracle_hamilton(p3).answer, Answer::kNo);

  EXPECT_EQ(oracle_hamilton(testing::complete(4)).answer, Answer::kYes);
}

TEST(OracleHamiltonTest, MatchesPermutationSearch) {
  for (int n = 3; n <= 5; ++n) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(n * (n - 1) / 2);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const auto ug = testing::from_mask(n, mask);
      const auto r = oracle_hamilton(ug);
      EXPECT_EQ(r.answer == Answer::kYes, testing::ref_hamilton(ug)) << "n=" << n << " mask=" << mask;
      if (r.witness) {
        std::vector<int> cycle(r.witness->begin(), r.witness->end());
        EXPECT_TRUE(verify_hamilton_circuit(ug, cycle));
      }
    }
  }
}

TEST(VerifyHamiltonTest, RejectsBadCycles) {
  const auto k4 = testing::complete(4);
  EXPECT_TRUE(verify_hamilton_circuit(k4, {1, 2, 3, 4, 1}));
  EXPECT_FALSE(verify_hamilton_circuit(k4, {1, 2, 3, 1}));
  EXPECT_FALSE(verify_hamilton_circuit(k4, {1, 2, 2, 4, 1}));
  UndirectedGraph c4(4);
  c4.add_edge(1, 2);
  c4.add_edge(2, 3);
  c4.add_edge(3, 4);
  c4.add_edge(4, 1);
  EXPECT_FALSE(verify_hamilton_circuit(c4, {1, 3, 2, 4, 1}));
}

}  // namespace
}  // namespace msplab
