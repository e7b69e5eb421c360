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

#ifndef MAGCUT_DATAGEN_H_
#define MAGCUT_DATAGEN_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "magcut/data.h"
#include "magcut/graph.h"

namespace magcut {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream); used to decouple pipeline stages.
Rng MakeRng(std::uint64_t seed, std::uint64_t stream = 0);

// floor(x + 0.5).
int RoundHalfUp(double x);

// A structure with directed weights: weights(k, j) is the coefficient of
// vertex k in the equation of vertex j.
struct WeightedGraph {
  MixedGraph graph;
  Eigen::MatrixXd weights;
};

// Magnitudes uniform on [0.5, 2], sign + or - with probability 1/2.
std::vector<double> SampleWeights(int count, Rng& rng);

// Random vertex order, then m = edges_per_vertex * d distinct edges that
// respect it. Throws std::invalid_argument when m exceeds d(d-1)/2.
WeightedGraph GenEr(int d, int edges_per_vertex, std::uint64_t seed);

inline constexpr double kDefaultDirectedProbability = 0.2;
inline constexpr double kDefaultBidirectedProbability = 0.2;
inline constexpr int kMaxResampleAttempts = 1000;

// Per pair a directed edge (oriented by a random order) with p_directed and
// a bidirected edge with p_bidirected; a proposed bow keeps the directed
// edge. Draws again until the result is a MAG.
WeightedGraph GenBf(int d, double p_directed, double p_bidirected,
                    std::uint64_t seed);

// GenBf, then random incident edges are removed until every vertex has
// degree at most 3. Draws again if the trimmed graph is not a MAG.
WeightedGraph Gen3bf(int d, double p_directed, double p_bidirected,
                     std::uint64_t seed);

// Removes random incident edges until no vertex has degree above max_degree.
void TrimDegree(WeightedGraph& g, int max_degree, Rng& rng);

// I + rho * A with A the bidirected adjacency and
// rho = 0.9 / (1 + lambda_max(A)); I when there are no bidirected edges.
Eigen::MatrixXd NoiseCovariance(const MixedGraph& graph);

// Vertices in a topological order of the directed part. Throws
// std::invalid_argument when the directed part has a cycle.
std::vector<Vertex> TopologicalOrder(const MixedGraph& graph);

struct SemOptions {
  // n x d noise used instead of the Gaussian draw when non-empty.
  Eigen::MatrixXd noise;
};

// n i.i.d. rows of X = X W + eps, eps ~ N(0, NoiseCovariance(graph)).
Dataset SemSample(const WeightedGraph& truth, int n, std::uint64_t seed,
                  const SemOptions& options = {});

// Marginal structure over `observed` (ascending) after hiding the rest:
// a -> b when a reaches b through hidden vertices only; a <-> b when a
// hidden vertex reaches both that way, or when an existing bidirected edge
// joins a (or a hidden vertex reaching a) to b (or a hidden vertex reaching
// b). A pair getting both keeps the directed edge.
MixedGraph LatentProjection(const MixedGraph& graph,
                            const std::vector<Vertex>& observed);

struct GroundTruth {
  MixedGraph full_graph;
  Eigen::MatrixXd full_weights;
  Eigen::MatrixXd noise_covariance;
  std::vector<std::string> full_names;
  std::vector<Vertex> latents;   // ascending, indices into the full graph
  std::vector<Vertex> observed;  // ascending, indices into the full graph
  MixedGraph observed_truth;
  Eigen::MatrixXd observed_weights;  // full_weights restricted to observed
  std::vector<std::string> names;    // observed names
  ForbiddenMatrix forbidden;         // over observed vertices

  std::vector<std::string> latent_names() const;
};

struct HiddenData {
  GroundTruth truth;
  Dataset data;
};

// Hides round(fraction * d) uniformly chosen vertices.
HiddenData HideLatents(const WeightedGraph& truth, const Dataset& data,
                       double fraction, std::uint64_t seed);

// Marks round(fraction * count) of the nonadjacent pairs of `truth`.
ForbiddenMatrix GenForbidden(const MixedGraph& truth, double fraction,
                             std::uint64_t seed);

enum class Family { kEr, kBf, k3bf, kBerkeley };
std::string_view FamilyName(Family family);
// Throws std::invalid_argument on an unknown name.
Family ParseFamily(std::string_view name);

struct ScenarioConfig {
  Family family = Family::kEr;
  int d = 5;
  int edges_per_vertex = 2;
  int n = 100;
  double p_directed = kDefaultDirectedProbability;
  double p_bidirected = kDefaultBidirectedProbability;
  // Negative picks the family default: 0.2 for ER, 0 for BF and 3BF.
  double latent_fraction = -1.0;
  double forbidden_fraction = 0.2;
  // Berkeley only: hide Department and Ability.
  bool hide_confounders = true;
  std::uint64_t seed = 1;
};

// Graph, SEM sample, latent hiding and F in one call.
HiddenData MakeScenario(const ScenarioConfig& config);

// Gender, Department, Admit, Ability with Ability -> Department,
// Ability -> Admit, Department -> Admit, Gender -> Department and
// Gender -> Admit. With hidden confounders only Gender and Admit remain;
// F then marks the pair, which asserts that gender has no direct effect
// once department and ability are accounted for, so the expected structure
// is Gender <-> Admit and observed_truth holds it. Throws std::invalid_argument for n < 100.
HiddenData BerkeleyDemo(int n, std::uint64_t seed, bool hide_confounders = true);

}  // namespace magcut

#endif  // MAGCUT_DATAGEN_H_
