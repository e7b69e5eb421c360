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

#include "magcut/eval.h"

#include <cmath>

#include <gtest/gtest.h>

#include "brute_force.h"

namespace magcut {
namespace {

TEST(ShdTest, ContributionCases) {
  const MixedGraph directed = MixedGraph::FromEdges(2, {{0, 1}}, {});
  const MixedGraph reversed = MixedGraph::FromEdges(2, {{1, 0}}, {});
  const MixedGraph bidirected = MixedGraph::FromEdges(2, {}, {{0, 1}});
  const MixedGraph empty(2);
  EXPECT_EQ(Shd(directed, directed), 0.0);
  EXPECT_EQ(Shd(directed, reversed), 0.5);
  EXPECT_EQ(Shd(directed, bidirected), 0.5);
  EXPECT_EQ(Shd(empty, bidirected), 1.0);
  EXPECT_EQ(Shd(directed, empty), 1.0);
  EXPECT_THROW(Shd(empty, MixedGraph(3)), std::invalid_argument);
}

TEST(ShdTest, SumsOverPairs) {
  const MixedGraph t = MixedGraph::FromEdges(3, {{0, 1}, {1, 2}}, {});
  const MixedGraph p = MixedGraph::FromEdges(3, {{1, 0}}, {{0, 2}});
  EXPECT_EQ(Shd(t, p), 0.5 + 1.0 + 1.0);
}

TEST(EdgeTypeTest, ReadFromFirstVertex) {
  const MixedGraph g = MixedGraph::FromEdges(3, {{0, 1}}, {{1, 2}});
  EXPECT_EQ(EdgeTypeOf(g, 0, 1), EdgeType::kRight);
  EXPECT_EQ(EdgeTypeOf(g, 1, 0), EdgeType::kLeft);
  EXPECT_EQ(EdgeTypeOf(g, 2, 1), EdgeType::kBidirected);
  EXPECT_EQ(EdgeTypeOf(g, 0, 2), EdgeType::kNone);
}

TEST(F1Test, HandComputed) {
  const MixedGraph t = MixedGraph::FromEdges(3, {{0, 1}, {1, 2}}, {});
  const MixedGraph p = MixedGraph::FromEdges(3, {{0, 1}, {2, 1}}, {{0, 2}});
  // Typed: 1 of 3 predicted correct, 1 of 2 true found.
  EXPECT_NEAR(F1(t, p), 2 * (1.0 / 3) * 0.5 / (1.0 / 3 + 0.5), 1e-12);
  // Skeleton: 2 of 3, 2 of 2.
  EXPECT_NEAR(F1(t, p, F1Mode::kSkeleton), 0.8, 1e-12);
  EXPECT_EQ(F1(t, MixedGraph(3)), 0.0);
  EXPECT_EQ(F1(MixedGraph(3), MixedGraph(3)), 0.0);
  EXPECT_EQ(F1(t, t), 1.0);
}

TEST(F1Test, TypedNeverExceedsSkeleton) {
  testing::TestRng rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 6;
    const MixedGraph a = testing::RandomMixedGraph(d, rng);
    const MixedGraph b = testing::RandomMixedGraph(d, rng);
    EXPECT_LE(F1(a, b), F1(a, b, F1Mode::kSkeleton));
  }
}

TEST(ThresholdTest, KeepsLargeWeights) {
  const MixedGraph support = MixedGraph::FromEdges(3, {{0, 1}, {2, 1}}, {{0, 2}});
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(3, 3);
  W(0, 1) = 0.5;
  W(2, 1) = -0.05;
  W(0, 2) = 0.01;
  W(2, 0) = -0.2;
  const MixedGraph g = Threshold(W, support, 0.1);
  EXPECT_TRUE(g.HasDirected(0, 1));
  EXPECT_FALSE(g.HasDirected(2, 1));
  EXPECT_TRUE(g.HasBidirected(0, 2));
  EXPECT_EQ(Threshold(W, support, 0.0), support);
  EXPECT_THROW(Threshold(W, support, -1.0), std::invalid_argument);
}

TEST(ThresholdTest, BestChoiceAndTies) {
  const MixedGraph support = MixedGraph::FromEdges(2, {{0, 1}}, {});
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(2, 2);
  W(0, 1) = 0.3;
  const MixedGraph empty(2);
  const ThresholdChoice drop = BestOverThresholds(W, support, empty, {0.0, 0.1, 0.5, 0.9});
  EXPECT_EQ(drop.shd, 0.0);
  EXPECT_EQ(drop.delta, 0.5);
  const ThresholdChoice keep = BestOverThresholds(W, support, support, {0.2, 0.0, 0.1});
  EXPECT_EQ(keep.shd, 0.0);
  EXPECT_EQ(keep.delta, 0.0);
  EXPECT_THROW(BestOverThresholds(W, support, empty, {}), std::invalid_argument);
}

TEST(ThresholdTest, DefaultGrid) {
  const auto grid = DefaultDeltaGrid();
  ASSERT_EQ(grid.size(), 22u);
  EXPECT_EQ(grid[0], 0.0);
  EXPECT_NEAR(grid[1], 1e-3, 1e-15);
  EXPECT_EQ(grid.back(), 1.0);
  for (std::size_t i = 2; i < grid.size(); ++i) {
    EXPECT_NEAR(std::log10(grid[i]) - std::log10(grid[i - 1]), 0.15, 1e-12);
  }
}

}  // namespace
}  // namespace magcut
