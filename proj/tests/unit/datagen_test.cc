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

#include "magcut/datagen.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "brute_force.h"

namespace magcut {
namespace {

int MaxDegree(const MixedGraph& g) {
  int best = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    int deg = 0;
    for (Vertex w = 0; w < g.num_vertices(); ++w) deg += g.Adjacent(v, w);
    best = std::max(best, deg);
  }
  return best;
}

TEST(DatagenTest, RoundHalfUp) {
  EXPECT_EQ(RoundHalfUp(0.5), 1);
  EXPECT_EQ(RoundHalfUp(1.49), 1);
  EXPECT_EQ(RoundHalfUp(2.5), 3);
  EXPECT_EQ(RoundHalfUp(0.0), 0);
}

TEST(DatagenTest, WeightsInRange) {
  Rng rng = MakeRng(5, 1);
  const auto w = SampleWeights(2000, rng);
  int negative = 0;
  for (double x : w) {
    EXPECT_GE(std::abs(x), 0.5);
    EXPECT_LE(std::abs(x), 2.0);
    negative += x < 0;
  }
  EXPECT_GT(negative, 850);
  EXPECT_LT(negative, 1150);
}

TEST(DatagenTest, StreamsAreIndependentAndReproducible) {
  Rng a = MakeRng(7, 1), b = MakeRng(7, 1), c = MakeRng(7, 2);
  EXPECT_EQ(a(), b());
  EXPECT_NE(MakeRng(7, 1)(), c());
}

TEST(ErTest, EdgeCountAndAcyclicity) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int d = 3 + seed % 5;
    const int ratio = 1;
    const WeightedGraph g = GenEr(d, ratio, seed);
    EXPECT_EQ(g.graph.num_directed(), ratio * d);
    EXPECT_EQ(g.graph.num_bidirected(), 0);
    EXPECT_TRUE(testing::IsAcyclicKahn(g.graph));
    for (Vertex k = 0; k < d; ++k) {
      for (Vertex j = 0; j < d; ++j) {
        EXPECT_EQ(g.weights(k, j) != 0.0, g.graph.HasDirected(k, j));
      }
    }
  }
  EXPECT_THROW(GenEr(3, 2, 1), std::invalid_argument);
  EXPECT_EQ(GenEr(6, 2, 4).graph, GenEr(6, 2, 4).graph);
}

TEST(BowFreeTest, ProducesMags) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const WeightedGraph g = GenBf(5, 0.3, 0.3, seed);
    EXPECT_TRUE(IsMag(g.graph));
    const WeightedGraph t = Gen3bf(7, 0.5, 0.3, seed);
    EXPECT_TRUE(IsMag(t.graph));
    EXPECT_LE(MaxDegree(t.graph), 3);
  }
}

TEST(BowFreeTest, TrimDegree) {
  WeightedGraph g{MixedGraph(6), Eigen::MatrixXd::Zero(6, 6)};
  for (Vertex v = 1; v < 6; ++v) {
    g.graph.AddDirected(0, v);
    g.weights(0, v) = 1.0;
  }
  Rng rng = MakeRng(1);
  TrimDegree(g, 2, rng);
  EXPECT_EQ(MaxDegree(g.graph), 2);
  for (Vertex v = 1; v < 6; ++v) {
    EXPECT_EQ(g.weights(0, v) != 0.0, g.graph.HasDirected(0, v));
  }
}

TEST(NoiseTest, CovarianceShape) {
  const MixedGraph g = MixedGraph::FromEdges(3, {{0, 1}}, {{1, 2}});
  const Eigen::MatrixXd s = NoiseCovariance(g);
  // Adjacency with a single edge has largest eigenvalue 1.
  EXPECT_DOUBLE_EQ(s(1, 2), 0.45);
  EXPECT_DOUBLE_EQ(s(2, 1), 0.45);
  EXPECT_DOUBLE_EQ(s(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(s(0, 1), 0.0);
  EXPECT_EQ(NoiseCovariance(MixedGraph(3)), Eigen::MatrixXd::Identity(3, 3));

  testing::TestRng rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const MixedGraph r = testing::RandomMixedGraph(6, rng, 0.2, 0.0, 0.8);
    EXPECT_EQ(Eigen::LLT<Eigen::MatrixXd>(NoiseCovariance(r)).info(), Eigen::Success);
  }
}

TEST(SemTest, TopologicalOrder) {
  const MixedGraph g = MixedGraph::FromEdges(4, {{3, 1}, {1, 0}, {2, 0}}, {});
  const auto order = TopologicalOrder(g);
  std::vector<int> pos(4);
  for (int i = 0; i < 4; ++i) pos[order[i]] = i;
  for (const Edge& e : g.DirectedEdges()) EXPECT_LT(pos[e.from], pos[e.to]);
  EXPECT_THROW(TopologicalOrder(MixedGraph::FromEdges(2, {{0, 1}, {1, 0}}, {})),
               std::invalid_argument);
}

TEST(SemTest, StructuralEquationsHold) {
  const WeightedGraph truth = GenEr(5, 1, 3);
  SemOptions options;
  testing::TestRng rng(52);
  std::normal_distribution<double> z;
  options.noise.resize(30, 5);
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 5; ++j) options.noise(i, j) = z(rng);
  }
  const Dataset data = SemSample(truth, 30, 1, options);
  const Eigen::MatrixXd residual = data.values - data.values * truth.weights;
  EXPECT_LT((residual - options.noise).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_EQ(data.names, Dataset::DefaultNames(5));
}

TEST(SemTest, SampleCovarianceApproachesModel) {
  const WeightedGraph truth{MixedGraph::FromEdges(2, {}, {{0, 1}}),
                            Eigen::MatrixXd::Zero(2, 2)};
  const Dataset data = SemSample(truth, 20000, 5);
  const Eigen::MatrixXd c =
      data.values.transpose() * data.values / static_cast<double>(data.num_samples());
  EXPECT_NEAR(c(0, 1), 0.45, 0.03);
  EXPECT_NEAR(c(0, 0), 1.0, 0.05);
}

TEST(LatentTest, ProjectionRules) {
  // 0 -> 2 -> 1 and 2 <- 3 -> 4 with 2 and 3 hidden.
  const MixedGraph g = MixedGraph::FromEdges(5, {{0, 2}, {2, 1}, {3, 2}, {3, 4}}, {});
  const MixedGraph p = LatentProjection(g, {0, 1, 4});
  EXPECT_TRUE(p.HasDirected(0, 1));
  EXPECT_TRUE(p.HasBidirected(1, 2));
  EXPECT_FALSE(p.Adjacent(0, 2));

  // A hidden common cause of a directly connected pair leaves the directed edge.
  const MixedGraph bow = MixedGraph::FromEdges(3, {{0, 1}, {2, 0}, {2, 1}}, {});
  const MixedGraph q = LatentProjection(bow, {0, 1});
  EXPECT_TRUE(q.HasDirected(0, 1));
  EXPECT_FALSE(q.HasBidirected(0, 1));

  // Existing bidirected edges pass through hidden ancestors.
  const MixedGraph r = MixedGraph::FromEdges(3, {{1, 2}}, {{0, 1}});
  EXPECT_TRUE(LatentProjection(r, {0, 2}).HasBidirected(0, 1));
}

TEST(LatentTest, HideCountsAndConsistency) {
  const WeightedGraph truth = GenEr(10, 2, 8);
  const Dataset data = SemSample(truth, 50, 8);
  const HiddenData h = HideLatents(truth, data, 0.2, 8);
  EXPECT_EQ(h.truth.latents.size(), 2u);
  EXPECT_EQ(h.data.num_variables(), 8);
  EXPECT_EQ(h.truth.observed_truth,
            LatentProjection(truth.graph, h.truth.observed));
  for (int c = 0; c < 8; ++c) {
    EXPECT_EQ(h.data.values.col(c), data.values.col(h.truth.observed[c]));
    EXPECT_EQ(h.data.names[c], data.names[h.truth.observed[c]]);
  }
  EXPECT_EQ(h.truth.latent_names().size(), 2u);
  EXPECT_THROW(HideLatents(truth, data, 1.0, 1), std::invalid_argument);
}

TEST(ForbiddenTest, OnlyNonadjacentPairs) {
  const WeightedGraph truth = GenEr(8, 1, 2);
  int nonadjacent = 0;
  for (Vertex a = 0; a < 8; ++a) {
    for (Vertex b = a + 1; b < 8; ++b) nonadjacent += !truth.graph.Adjacent(a, b);
  }
  const ForbiddenMatrix f = GenForbidden(truth.graph, 0.5, 2);
  EXPECT_EQ(f.count(), RoundHalfUp(0.5 * nonadjacent));
  for (const VertexPair& p : f.Pairs()) EXPECT_FALSE(truth.graph.Adjacent(p.first, p.second));
  EXPECT_EQ(GenForbidden(truth.graph, 0.0, 2).count(), 0);
}

TEST(ScenarioTest, FamiliesAndDefaults) {
  EXPECT_EQ(ParseFamily("3bf"), Family::k3bf);
  EXPECT_EQ(FamilyName(Family::kBerkeley), "berkeley");
  EXPECT_THROW(ParseFamily("nope"), std::invalid_argument);

  ScenarioConfig er;
  er.d = 10;
  EXPECT_EQ(MakeScenario(er).truth.latents.size(), 2u);
  ScenarioConfig bf = er;
  bf.family = Family::kBf;
  EXPECT_TRUE(MakeScenario(bf).truth.latents.empty());
  EXPECT_EQ(MakeScenario(bf).data.values, MakeScenario(bf).data.values);
}

TEST(BerkeleyTest, HiddenConfounders) {
  const HiddenData h = BerkeleyDemo(500, 3);
  EXPECT_EQ(h.truth.names, (std::vector<std::string>{"Gender", "Admit"}));
  EXPECT_EQ(h.truth.observed_truth, MixedGraph::FromEdges(2, {}, {{0, 1}}));
  EXPECT_TRUE(h.truth.forbidden(0, 1));
  EXPECT_EQ(h.data.num_samples(), 500);

  const HiddenData full = BerkeleyDemo(500, 3, false);
  EXPECT_EQ(full.data.num_variables(), 4);
  EXPECT_TRUE(full.truth.full_graph.HasDirected(0, 2));
  EXPECT_THROW(BerkeleyDemo(50, 1), std::invalid_argument);
}

}  // namespace
}  // namespace magcut
