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

#include "brute_force.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

namespace magcut::testing {

MixedGraph RandomMixedGraph(int d, TestRng& rng, double p_none,
                            double p_directed, double p_bidirected) {
  std::discrete_distribution<int> pick(
      {p_none, p_directed / 2, p_directed / 2, p_bidirected});
  MixedGraph g(d);
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = a + 1; b < d; ++b) {
      switch (pick(rng)) {
        case 1:
          g.AddDirected(a, b);
          break;
        case 2:
          g.AddDirected(b, a);
          break;
        case 3:
          g.AddBidirected(a, b);
          break;
        default:
          break;
      }
    }
  }
  return g;
}

MixedGraph RandomDigraph(int d, TestRng& rng, double p_edge) {
  std::bernoulli_distribution coin(p_edge);
  MixedGraph g(d);
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = 0; b < d; ++b) {
      if (a != b && coin(rng)) g.AddDirected(a, b);
    }
  }
  return g;
}

MixedGraph RandomDag(int d, TestRng& rng, double p_edge) {
  std::vector<Vertex> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(p_edge);
  MixedGraph g(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (coin(rng)) g.AddDirected(order[i], order[j]);
    }
  }
  return g;
}

std::vector<MixedGraph> AllPairStateGraphs(int d) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
  }
  std::vector<MixedGraph> out;
  const long total = 1L << (2 * pairs.size());
  for (long code = 0; code < total; ++code) {
    MixedGraph g(d);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [a, b] = pairs[p];
      switch ((code >> (2 * p)) & 3) {
        case 1:
          g.AddDirected(a, b);
          break;
        case 2:
          g.AddDirected(b, a);
          break;
        case 3:
          g.AddBidirected(a, b);
          break;
        default:
          break;
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<std::vector<int>> BfsDistances(const MixedGraph& g) {
  const int d = g.num_vertices();
  std::vector<std::vector<int>> dist(d, std::vector<int>(d, -1));
  for (Vertex s = 0; s < d; ++s) {
    std::deque<Vertex> queue{s};
    dist[s][s] = 0;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex v = 0; v < d; ++v) {
        if (g.HasDirected(u, v) && dist[s][v] < 0) {
          dist[s][v] = dist[s][u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

bool IsAcyclicKahn(const MixedGraph& g) {
  const int d = g.num_vertices();
  std::vector<int> indeg(d, 0);
  for (Vertex u = 0; u < d; ++u) {
    for (Vertex v = 0; v < d; ++v) indeg[v] += g.HasDirected(u, v);
  }
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < d; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  int removed = 0;
  while (!ready.empty()) {
    const Vertex u = ready.back();
    ready.pop_back();
    ++removed;
    for (Vertex v = 0; v < d; ++v) {
      if (g.HasDirected(u, v) && --indeg[v] == 0) ready.push_back(v);
    }
  }
  return removed == d;
}

namespace {

void Walk(const MixedGraph& g, Vertex u, Vertex to, std::vector<Vertex>& path,
          std::vector<bool>& used, std::vector<std::vector<Vertex>>& out) {
  if (u == to) {
    out.push_back(path);
    return;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!g.HasDirected(u, v) || used[v]) continue;
    used[v] = true;
    path.push_back(v);
    Walk(g, v, to, path, used, out);
    path.pop_back();
    used[v] = false;
  }
}

}  // namespace

std::vector<std::vector<Vertex>> SimpleDirectedPaths(const MixedGraph& g,
                                                     Vertex from, Vertex to) {
  std::vector<std::vector<Vertex>> out;
  if (from == to) return out;
  std::vector<Vertex> path{from};
  std::vector<bool> used(g.num_vertices(), false);
  used[from] = true;
  Walk(g, from, to, path, used, out);
  return out;
}

EdgeSet SimplePathEdgeUnion(const MixedGraph& g, Vertex from, Vertex to) {
  EdgeSet edges;
  for (const auto& p : SimpleDirectedPaths(g, from, to)) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) edges.insert({p[i], p[i + 1]});
  }
  return edges;
}

bool MSeparatedByWalks(const MixedGraph& g, Vertex a, Vertex b,
                       const std::vector<Vertex>& conditioning) {
  const int d = g.num_vertices();
  std::vector<bool> in_c(d, false);
  for (Vertex c : conditioning) in_c[c] = true;

  // Edges leaving u: (target, arrowhead at u, arrowhead at target).
  auto edges_of = [&](Vertex u) {
    std::vector<std::tuple<Vertex, bool, bool>> out;
    for (Vertex v = 0; v < d; ++v) {
      if (g.HasDirected(u, v)) out.emplace_back(v, false, true);
      if (g.HasDirected(v, u)) out.emplace_back(v, true, false);
      if (g.HasBidirected(u, v)) out.emplace_back(v, true, true);
    }
    return out;
  };

  std::set<std::pair<Vertex, bool>> seen;
  std::deque<std::pair<Vertex, bool>> queue;
  for (auto [v, head_a, head_v] : edges_of(a)) {
    (void)head_a;
    if (v == b) return false;
    if (seen.insert({v, head_v}).second) queue.emplace_back(v, head_v);
  }
  while (!queue.empty()) {
    const auto [u, head_in] = queue.front();
    queue.pop_front();
    for (auto [v, head_u, head_v] : edges_of(u)) {
      const bool collider = head_in && head_u;
      if (collider ? !in_c[u] : in_c[u]) continue;
      if (v == b) return false;
      if (seen.insert({v, head_v}).second) queue.emplace_back(v, head_v);
    }
  }
  return true;
}

Eigen::VectorXd NormalEquations(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  return (A.transpose() * A).llt().solve(A.transpose() * b);
}

double LadByVertexEnumeration(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              double bound) {
  const int n = static_cast<int>(A.rows());
  const int p = static_cast<int>(A.cols());
  if (p == 0) return b.cwiseAbs().sum();
  // Constraint rows: data rows, then w_k = +bound, then w_k = -bound.
  const int m = n + 2 * p;
  Eigen::MatrixXd rows(m, p);
  Eigen::VectorXd rhs(m);
  rows.topRows(n) = A;
  rhs.head(n) = b;
  for (int k = 0; k < p; ++k) {
    rows.row(n + k).setZero();
    rows(n + k, k) = 1.0;
    rhs(n + k) = bound;
    rows.row(n + p + k).setZero();
    rows(n + p + k, k) = 1.0;
    rhs(n + p + k) = -bound;
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(p);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Eigen::MatrixXd M(p, p);
    Eigen::VectorXd r(p);
    for (int t = 0; t < p; ++t) {
      M.row(t) = rows.row(pick[t]);
      r(t) = rhs(pick[t]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.isInvertible()) {
      const Eigen::VectorXd w = lu.solve(r);
      if (w.cwiseAbs().maxCoeff() <= bound * (1 + 1e-12)) {
        best = std::min(best, (b - A * w).cwiseAbs().sum());
      }
    }
    int t = p - 1;
    while (t >= 0 && pick[t] == m - p + t) --t;
    if (t < 0) break;
    ++pick[t];
    for (int s = t + 1; s < p; ++s) pick[s] = pick[s - 1] + 1;
  }
  return best;
}

}  // namespace magcut::testing
