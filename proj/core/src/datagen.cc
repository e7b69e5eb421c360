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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace magcut {

Rng MakeRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

int RoundHalfUp(double x) { return static_cast<int>(std::floor(x + 0.5)); }

namespace {

// Fisher-Yates with our own index draws so the permutation only depends on
// the engine.
template <typename T>
void Shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(v[i - 1], v[pick(rng)]);
  }
}

std::vector<Vertex> RandomOrder(int d, Rng& rng) {
  std::vector<Vertex> order(d);
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, rng);
  return order;
}

double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

WeightedGraph DrawBf(int d, double p_directed, double p_bidirected,
                     Rng& rng) {
  const std::vector<Vertex> order = RandomOrder(d, rng);
  WeightedGraph g{MixedGraph(d), Eigen::MatrixXd::Zero(d, d)};
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const bool directed = Uniform01(rng) < p_directed;
      const bool bidirected = Uniform01(rng) < p_bidirected;
      if (directed) {
        g.graph.AddDirected(order[i], order[j]);
      } else if (bidirected) {
        g.graph.AddBidirected(order[i], order[j]);
      }
    }
  }
  const std::vector<Edge> edges = g.graph.DirectedEdges();
  const std::vector<double> w = SampleWeights(static_cast<int>(edges.size()), rng);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    g.weights(edges[e].from, edges[e].to) = w[e];
  }
  return g;
}

void CheckSize(int d) {
  if (d < 1) throw std::invalid_argument("need at least one vertex");
}

}  // namespace

std::vector<double> SampleWeights(int count, Rng& rng) {
  if (count < 0) throw std::invalid_argument("SampleWeights: negative count");
  std::uniform_real_distribution<double> magnitude(0.5, 2.0);
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double m = magnitude(rng);
    out.push_back(Uniform01(rng) < 0.5 ? -m : m);
  }
  return out;
}

WeightedGraph GenEr(int d, int edges_per_vertex, std::uint64_t seed) {
  CheckSize(d);
  if (edges_per_vertex < 0) {
    throw std::invalid_argument("GenEr: negative edge ratio");
  }
  const long long m = static_cast<long long>(edges_per_vertex) * d;
  const long long capacity = static_cast<long long>(d) * (d - 1) / 2;
  if (m > capacity) {
    throw std::invalid_argument("GenEr: " + std::to_string(m) +
                                " edges do not fit a DAG on " +
                                std::to_string(d) + " vertices");
  }
  Rng rng = MakeRng(seed, 0x45);
  const std::vector<Vertex> order = RandomOrder(d, rng);
  std::vector<Edge> slots;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) slots.push_back({order[i], order[j]});
  }
  Shuffle(slots, rng);
  slots.resize(static_cast<std::size_t>(m));
  std::sort(slots.begin(), slots.end());

  WeightedGraph g{MixedGraph(d), Eigen::MatrixXd::Zero(d, d)};
  const std::vector<double> w = SampleWeights(static_cast<int>(m), rng);
  for (std::size_t e = 0; e < slots.size(); ++e) {
    g.graph.AddDirected(slots[e].from, slots[e].to);
    g.weights(slots[e].from, slots[e].to) = w[e];
  }
  return g;
}

WeightedGraph GenBf(int d, double p_directed, double p_bidirected,
                    std::uint64_t seed) {
  CheckSize(d);
  CheckProbability(p_directed, "p_directed");
  CheckProbability(p_bidirected, "p_bidirected");
  Rng rng = MakeRng(seed, 0x4246);
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    WeightedGraph g = DrawBf(d, p_directed, p_bidirected, rng);
    if (IsMag(g.graph)) return g;
  }
  throw std::runtime_error("GenBf: no MAG after resampling");
}

void TrimDegree(WeightedGraph& g, int max_degree, Rng& rng) {
  const int d = g.graph.num_vertices();
  for (Vertex v = 0; v < d; ++v) {
    while (true) {
      std::vector<Vertex> neighbours;
      for (Vertex u = 0; u < d; ++u) {
        if (u != v && g.graph.Adjacent(u, v)) neighbours.push_back(u);
      }
      if (static_cast<int>(neighbours.size()) <= max_degree) break;
      std::uniform_int_distribution<std::size_t> pick(0, neighbours.size() - 1);
      const Vertex u = neighbours[pick(rng)];
      g.graph.ClearPair(u, v);
      g.weights(u, v) = 0.0;
      g.weights(v, u) = 0.0;
    }
  }
}

WeightedGraph Gen3bf(int d, double p_directed, double p_bidirected,
                     std::uint64_t seed) {
  CheckSize(d);
  CheckProbability(p_directed, "p_directed");
  CheckProbability(p_bidirected, "p_bidirected");
  Rng rng = MakeRng(seed, 0x334246);
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    WeightedGraph g = DrawBf(d, p_directed, p_bidirected, rng);
    if (!IsMag(g.graph)) continue;
    TrimDegree(g, 3, rng);
    if (IsMag(g.graph)) return g;
  }
  throw std::runtime_error("Gen3bf: no MAG after resampling");
}

Eigen::MatrixXd NoiseCovariance(const MixedGraph& graph) {
  const int d = graph.num_vertices();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (const VertexPair& p : graph.BidirectedEdges()) {
    a(p.first, p.second) = 1.0;
    a(p.second, p.first) = 1.0;
  }
  if (graph.num_bidirected() == 0) return Eigen::MatrixXd::Identity(d, d);
  const double lambda_max =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .maxCoeff();
  const double rho = 0.9 / (1.0 + lambda_max);
  return Eigen::MatrixXd::Identity(d, d) + rho * a;
}

std::vector<Vertex> TopologicalOrder(const MixedGraph& graph) {
  const int d = graph.num_vertices();
  std::vector<int> indegree(d, 0);
  for (const Edge& e : graph.DirectedEdges()) ++indegree[e.to];
  std::vector<Vertex> order;
  std::vector<Vertex> ready;
  for (Vertex v = d - 1; v >= 0; --v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    const Vertex v = ready.back();
    ready.pop_back();
    order.push_back(v);
    const std::vector<Vertex> children = graph.Children(v);
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      if (--indegree[*it] == 0) ready.push_back(*it);
    }
  }
  if (static_cast<int>(order.size()) != d) {
    throw std::invalid_argument("directed part has a cycle");
  }
  return order;
}

Dataset SemSample(const WeightedGraph& truth, int n, std::uint64_t seed,
                  const SemOptions& options) {
  const int d = truth.graph.num_vertices();
  if (n < 1) throw std::invalid_argument("SemSample: n must be >= 1");
  if (truth.weights.rows() != d || truth.weights.cols() != d) {
    throw std::invalid_argument("SemSample: weight matrix dimension mismatch");
  }
  const std::vector<Vertex> order = TopologicalOrder(truth.graph);

  Eigen::MatrixXd noise;
  if (options.noise.size() != 0) {
    if (options.noise.rows() != n || options.noise.cols() != d) {
      throw std::invalid_argument("SemSample: noise override has wrong shape");
    }
    noise = options.noise;
  } else {
    const Eigen::MatrixXd sigma = NoiseCovariance(truth.graph);
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
      throw std::logic_error("SemSample: noise covariance not positive definite");
    }
    Rng rng = MakeRng(seed, 0x53454d);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd z(n, d);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) z(i, j) = normal(rng);
    }
    noise = z * llt.matrixL().transpose();
  }

  Dataset out;
  out.values = Eigen::MatrixXd::Zero(n, d);
  out.names = Dataset::DefaultNames(d);
  for (Vertex j : order) {
    Eigen::VectorXd col = noise.col(j);
    for (Vertex k = 0; k < d; ++k) {
      if (truth.graph.HasDirected(k, j)) col += truth.weights(k, j) * out.values.col(k);
    }
    out.values.col(j) = col;
  }
  return out;
}

MixedGraph LatentProjection(const MixedGraph& graph,
                            const std::vector<Vertex>& observed) {
  const int d = graph.num_vertices();
  std::vector<bool> is_observed(d, false);
  for (Vertex v : observed) is_observed[v] = true;

  // hidden_reach[h][v]: hidden h reaches v with only hidden intermediates.
  // observed_reach[a][v]: same, starting from observed a.
  auto reach_from = [&](Vertex s) {
    std::vector<bool> seen(d, false);
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : graph.Children(u)) {
        if (seen[w]) continue;
        seen[w] = true;
        if (!is_observed[w]) stack.push_back(w);
      }
    }
    return seen;
  };
  std::vector<std::vector<bool>> reach(d);
  for (Vertex v = 0; v < d; ++v) reach[v] = reach_from(v);

  // anchors[a]: a and every hidden vertex reaching a through hidden ones.
  std::vector<std::vector<Vertex>> anchors(d);
  for (Vertex a : observed) {
    anchors[a].push_back(a);
    for (Vertex h = 0; h < d; ++h) {
      if (!is_observed[h] && reach[h][a]) anchors[a].push_back(h);
    }
  }

  const int m = static_cast<int>(observed.size());
  MixedGraph out(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && reach[observed[i]][observed[j]]) out.AddDirected(i, j);
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (out.Adjacent(i, j)) continue;  // bows keep the directed edge
      bool confounded = false;
      for (Vertex x : anchors[observed[i]]) {
        for (Vertex y : anchors[observed[j]]) {
          if ((x == y && !is_observed[x]) ||
              (x != y && graph.HasBidirected(x, y))) {
            confounded = true;
          }
        }
      }
      if (confounded) out.AddBidirected(i, j);
    }
  }
  return out;
}

std::vector<std::string> GroundTruth::latent_names() const {
  std::vector<std::string> out;
  for (Vertex v : latents) out.push_back(full_names[v]);
  return out;
}

HiddenData HideLatents(const WeightedGraph& truth, const Dataset& data,
                       double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("HideLatents: fraction must lie in [0, 1)");
  }
  const int d = truth.graph.num_vertices();
  if (data.num_variables() != d) {
    throw std::invalid_argument("HideLatents: data and graph disagree on d");
  }
  Rng rng = MakeRng(seed, 0x4c4154);
  std::vector<Vertex> order(d);
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, rng);
  const int k = std::min(d, RoundHalfUp(fraction * d));

  HiddenData out;
  GroundTruth& t = out.truth;
  t.full_graph = truth.graph;
  t.full_weights = truth.weights;
  t.noise_covariance = NoiseCovariance(truth.graph);
  t.full_names = data.names.empty() ? Dataset::DefaultNames(d) : data.names;
  t.latents.assign(order.begin(), order.begin() + k);
  std::sort(t.latents.begin(), t.latents.end());
  for (Vertex v = 0; v < d; ++v) {
    if (!std::binary_search(t.latents.begin(), t.latents.end(), v)) {
      t.observed.push_back(v);
    }
  }
  t.observed_truth = LatentProjection(truth.graph, t.observed);
  const int m = static_cast<int>(t.observed.size());
  t.observed_weights.resize(m, m);
  out.data.values.resize(data.num_samples(), m);
  for (int i = 0; i < m; ++i) {
    t.names.push_back(t.full_names[t.observed[i]]);
    out.data.values.col(i) = data.values.col(t.observed[i]);
    for (int j = 0; j < m; ++j) {
      t.observed_weights(i, j) = truth.weights(t.observed[i], t.observed[j]);
    }
  }
  out.data.names = t.names;
  t.forbidden = ForbiddenMatrix(m);
  return out;
}

ForbiddenMatrix GenForbidden(const MixedGraph& truth, double fraction,
                             std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("GenForbidden: fraction must lie in [0, 1]");
  }
  const int d = truth.num_vertices();
  std::vector<VertexPair> open;
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = a + 1; b < d; ++b) {
      if (!truth.Adjacent(a, b)) open.push_back({a, b});
    }
  }
  Rng rng = MakeRng(seed, 0x464f52);
  Shuffle(open, rng);
  const int k = std::min(static_cast<int>(open.size()),
                         RoundHalfUp(fraction * static_cast<double>(open.size())));
  ForbiddenMatrix f(d);
  for (int i = 0; i < k; ++i) f.Set(open[i].first, open[i].second, true);
  return f;
}

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kEr:
      return "er";
    case Family::kBf:
      return "bf";
    case Family::k3bf:
      return "3bf";
    case Family::kBerkeley:
      return "berkeley";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  for (Family f : {Family::kEr, Family::kBf, Family::k3bf, Family::kBerkeley}) {
    if (FamilyName(f) == name) return f;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

HiddenData MakeScenario(const ScenarioConfig& config) {
  if (config.family == Family::kBerkeley) {
    return BerkeleyDemo(config.n, config.seed, config.hide_confounders);
  }
  WeightedGraph g;
  double latent = config.latent_fraction;
  switch (config.family) {
    case Family::kEr:
      g = GenEr(config.d, config.edges_per_vertex, config.seed);
      if (latent < 0) latent = 0.2;
      break;
    case Family::kBf:
      g = GenBf(config.d, config.p_directed, config.p_bidirected, config.seed);
      if (latent < 0) latent = 0.0;
      break;
    case Family::k3bf:
      g = Gen3bf(config.d, config.p_directed, config.p_bidirected, config.seed);
      if (latent < 0) latent = 0.0;
      break;
    case Family::kBerkeley:
      break;
  }
  const Dataset full = SemSample(g, config.n, config.seed);
  HiddenData out = HideLatents(g, full, latent, config.seed);
  out.truth.forbidden = GenForbidden(out.truth.observed_truth,
                                     config.forbidden_fraction, config.seed);
  return out;
}

HiddenData BerkeleyDemo(int n, std::uint64_t seed, bool hide_confounders) {
  if (n < 100) throw std::invalid_argument("BerkeleyDemo: n must be >= 100");
  enum : Vertex { kGender, kDepartment, kAdmit, kAbility };
  WeightedGraph g{MixedGraph(4), Eigen::MatrixXd::Zero(4, 4)};
  const std::vector<Edge> edges = {{kGender, kDepartment},
                                   {kGender, kAdmit},
                                   {kDepartment, kAdmit},
                                   {kAbility, kDepartment},
                                   {kAbility, kAdmit}};
  Rng rng = MakeRng(seed, 0x424b);
  const std::vector<double> w = SampleWeights(static_cast<int>(edges.size()), rng);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    g.graph.AddDirected(edges[e].from, edges[e].to);
    g.weights(edges[e].from, edges[e].to) = w[e];
  }
  Dataset full = SemSample(g, n, seed);
  full.names = {"Gender", "Department", "Admit", "Ability"};
  HiddenData out = HideLatents(g, full, 0.0, seed);
  if (!hide_confounders) return out;

  GroundTruth& t = out.truth;
  t.latents = {kDepartment, kAbility};
  t.observed = {kGender, kAdmit};
  t.names = {"Gender", "Admit"};
  t.observed_truth = MixedGraph(2);
  t.observed_truth.AddBidirected(0, 1);
  t.observed_weights.resize(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      t.observed_weights(i, j) = g.weights(t.observed[i], t.observed[j]);
    }
  }
  t.forbidden = ForbiddenMatrix(2);
  t.forbidden.Set(0, 1, true);
  out.data.values.resize(n, 2);
  out.data.values.col(0) = full.values.col(kGender);
  out.data.values.col(1) = full.values.col(kAdmit);
  out.data.names = t.names;
  return out;
}

}  // namespace magcut
