// Copyright 2026 The magcut Authors
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

#include "magcut/oracle.h"

#include <algorithm>

#include <gtest/gtest.h>

#include "brute_force.h"
#include "magcut/datagen.h"

namespace magcut {
namespace {

using testing::TestRng;

std::vector<Vertex> SubsetOf(int mask, int d) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < d; ++v) {
    if (mask >> v & 1) out.push_back(v);
  }
  return out;
}

TEST(OracleTest, AncestorsIncludeTheSet) {
  const MixedGraph g = MixedGraph::FromEdges(4, {{0, 1}, {1, 2}}, {{2, 3}});
  EXPECT_EQ(oracle::Ancestors(g, {2}), (std::vector<bool>{true, true, true, false}));
  EXPECT_EQ(oracle::Ancestors(g, {}), (std::vector<bool>(4, false)));
}

TEST(OracleTest, MSeparationMatchesWalkReachability) {
  TestRng rng(71);
  int checks = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int d = 3 + trial % 4;
    MixedGraph g = testing::RandomDag(d, rng, 0.4);
    for (Vertex a = 0; a < d; ++a) {
      for (Vertex b = a + 1; b < d; ++b) {
        if (!g.Adjacent(a, b) && std::bernoulli_distribution(0.25)(rng)) {
          g.AddBidirected(a, b);
        }
      }
    }
    for (Vertex a = 0; a < d; ++a) {
      for (Vertex b = a + 1; b < d; ++b) {
        for (int mask = 0; mask < (1 << d); ++mask) {
          if (mask >> a & 1 || mask >> b & 1) continue;
          const auto c = SubsetOf(mask, d);
          ASSERT_EQ(oracle::MSeparated(g, a, b, c), testing::MSeparatedByWalks(g, a, b, c));
          ++checks;
        }
      }
    }
  }
  EXPECT_GT(checks, 1000);
}

TEST(OracleTest, MSeparationClassicCases) {
  // Collider 0 -> 2 <- 1 with descendant 3.
  const MixedGraph g = MixedGraph::FromEdges(4, {{0, 2}, {1, 2}, {2, 3}}, {});
  EXPECT_TRUE(oracle::MSeparated(g, 0, 1, {}));
  EXPECT_FALSE(oracle::MSeparated(g, 0, 1, {2}));
  EXPECT_FALSE(oracle::MSeparated(g, 0, 1, {3}));
  EXPECT_THROW(oracle::MSeparated(g, 0, 0, {}), std::invalid_argument);
  EXPECT_THROW(oracle::MSeparated(g, 0, 1, {0}), std::invalid_argument);
}

TEST(OracleTest, AncestralDefinition) {
  EXPECT_FALSE(oracle::IsAncestralDef(MixedGraph::FromEdges(3, {{0, 1}, {1, 2}}, {{0, 2}})));
  EXPECT_FALSE(oracle::IsAncestralDef(MixedGraph::FromEdges(2, {{0, 1}, {1, 0}}, {})));
  EXPECT_TRUE(oracle::IsAncestralDef(MixedGraph::FromEdges(3, {{0, 1}}, {{1, 2}})));
  EXPECT_THROW(oracle::IsMaximalDef(MixedGraph(7)), std::invalid_argument);
}

TEST(OracleTest, DagCountsInCensus) {
  // Labelled DAGs on 2, 3 and 4 vertices: 3, 25 and 543.
  const std::vector<std::size_t> dags{3, 25, 543};
  for (int d = 2; d <= 4; ++d) {
    const auto census = oracle::EnumerateAllMags(d);
    const auto count = std::count_if(census.begin(), census.end(), [](const MixedGraph& g) {
      return g.num_bidirected() == 0;
    });
    EXPECT_EQ(static_cast<std::size_t>(count), dags[d - 2]);
  }
  EXPECT_EQ(oracle::EnumerateAllMags(2).size(), 4u);
  EXPECT_THROW(oracle::EnumerateAllMags(5), std::invalid_argument);
}

TEST(OracleTest, CensusIsTheFilteredPairStateSpace) {
  for (int d = 2; d <= 4; ++d) {
    std::vector<MixedGraph> expected;
    for (const MixedGraph& g : testing::AllPairStateGraphs(d)) {
      if (oracle::IsMagDef(g)) expected.push_back(g);
    }
    auto census = oracle::EnumerateAllMags(d);
    auto key = [](const MixedGraph& g) {
      return std::make_pair(g.DirectedEdges(), g.BidirectedEdges());
    };
    auto less = [&](const MixedGraph& x, const MixedGraph& y) { return key(x) < key(y); };
    std::sort(expected.begin(), expected.end(), less);
    std::sort(census.begin(), census.end(), less);
    EXPECT_EQ(census, expected);
  }
}

TEST(OracleTest, ForbiddenFiltering) {
  ForbiddenMatrix f(3);
  f.Set(0, 2, true);
  const auto mags = oracle::EnumerateMags(3, f);
  const auto census = oracle::EnumerateAllMags(3);
  const auto expected = std::count_if(census.begin(), census.end(), [&](const MixedGraph& g) {
    return oracle::RespectsForbidden(g, f);
  });
  EXPECT_EQ(static_cast<long>(mags.size()), expected);
  for (const MixedGraph& g : mags) {
    EXPECT_FALSE(g.HasDirected(0, 2));
    EXPECT_FALSE(g.HasDirected(2, 0));
    EXPECT_FALSE(g.HasBidirected(0, 1));
  }
}

TEST(OracleTest, SolveReportsEveryOptimum) {
  Instance inst;
  inst.data = BerkeleyDemo(200, 2, false).data;
  inst.data.values.conservativeResize(Eigen::NoChange, 3);
  inst.data.names.resize(3);
  inst.forbidden = ForbiddenMatrix(3);
  inst.lambda = 1.0;
  const oracle::OracleResult r = oracle::Solve(inst);
  EXPECT_EQ(r.structures_scored, static_cast<int>(oracle::EnumerateMags(3, inst.forbidden).size()));
  ASSERT_FALSE(r.optima.empty());
  EXPECT_NE(std::find(r.optima.begin(), r.optima.end(), r.solution.graph), r.optima.end());
  EXPECT_NEAR(Objective(r.solution.weights, r.solution.graph, inst.data.values, 1.0, 2),
              r.solution.objective, 1e-9 * r.solution.objective);
}

}  // namespace
}  // namespace magcut
