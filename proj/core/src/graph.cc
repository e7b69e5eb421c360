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

#include "magcut/graph.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace magcut {

MixedGraph::MixedGraph(int num_vertices) : n_(num_vertices) {
  if (num_vertices < 0) {
    throw std::invalid_argument("MixedGraph: negative vertex count");
  }
  const auto cells = static_cast<std::size_t>(n_) * n_;
  directed_.assign(cells, 0);
  bidirected_.assign(cells, 0);
}

MixedGraph MixedGraph::FromEdges(int num_vertices,
                                 const std::vector<Edge>& directed,
                                 const std::vector<VertexPair>& bidirected) {
  MixedGraph g(num_vertices);
  for (const Edge& e : directed) g.AddDirected(e.from, e.to);
  for (const VertexPair& p : bidirected) g.AddBidirected(p.first, p.second);
  return g;
}

void MixedGraph::CheckVertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw std::out_of_range("MixedGraph: vertex " + std::to_string(v) +
                            " out of range");
  }
}

void MixedGraph::AddDirected(Vertex from, Vertex to) {
  CheckVertex(from);
  CheckVertex(to);
  if (from == to) throw std::invalid_argument("MixedGraph: self loop");
  if (HasBidirected(from, to)) {
    throw std::invalid_argument("MixedGraph: pair already bidirected");
  }
  directed_[Index(from, to)] = 1;
}

void MixedGraph::AddBidirected(Vertex a, Vertex b) {
  CheckVertex(a);
  CheckVertex(b);
  if (a == b) throw std::invalid_argument("MixedGraph: self loop");
  if (HasDirected(a, b) || HasDirected(b, a)) {
    throw std::invalid_argument("MixedGraph: pair already directed");
  }
  bidirected_[Index(a, b)] = 1;
  bidirected_[Index(b, a)] = 1;
}

void MixedGraph::RemoveDirected(Vertex from, Vertex to) {
  CheckVertex(from);
  CheckVertex(to);
  directed_[Index(from, to)] = 0;
}

void MixedGraph::RemoveBidirected(Vertex a, Vertex b) {
  CheckVertex(a);
  CheckVertex(b);
  bidirected_[Index(a, b)] = 0;
  bidirected_[Index(b, a)] = 0;
}

void MixedGraph::ClearPair(Vertex a, Vertex b) {
  RemoveDirected(a, b);
  RemoveDirected(b, a);
  RemoveBidirected(a, b);
}

std::vector<Edge> MixedGraph::DirectedEdges() const {
  std::vector<Edge> out;
  for (Vertex j = 0; j < n_; ++j) {
    for (Vertex k = 0; k < n_; ++k) {
      if (HasDirected(j, k)) out.push_back({j, k});
    }
  }
  return out;
}

std::vector<VertexPair> MixedGraph::BidirectedEdges() const {
  std::vector<VertexPair> out;
  for (Vertex j = 0; j < n_; ++j) {
    for (Vertex k = j + 1; k < n_; ++k) {
      if (HasBidirected(j, k)) out.push_back({j, k});
    }
  }
  return out;
}

int MixedGraph::num_directed() const {
  return static_cast<int>(std::count(directed_.begin(), directed_.end(), 1));
}

int MixedGraph::num_bidirected() const {
  return static_cast<int>(
             std::count(bidirected_.begin(), bidirected_.end(), 1)) /
         2;
}

std::vector<Vertex> MixedGraph::Children(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex k = 0; k < n_; ++k) {
    if (HasDirected(v, k)) out.push_back(k);
  }
  return out;
}

std::vector<Vertex> MixedGraph::Spouses(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex k = 0; k < n_; ++k) {
    if (HasBidirected(v, k)) out.push_back(k);
  }
  return out;
}

MixedGraph MixedGraph::Induced(const std::vector<Vertex>& keep) const {
  const int m = static_cast<int>(keep.size());
  MixedGraph g(m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      if (HasDirected(keep[a], keep[b])) g.directed_[g.Index(a, b)] = 1;
      if (HasBidirected(keep[a], keep[b])) g.bidirected_[g.Index(a, b)] = 1;
    }
  }
  return g;
}

MixedGraph MixedGraph::Permuted(const std::vector<Vertex>& perm) const {
  if (static_cast<int>(perm.size()) != n_) {
    throw std::invalid_argument("MixedGraph::Permuted: size mismatch");
  }
  MixedGraph g(n_);
  for (Vertex j = 0; j < n_; ++j) {
    for (Vertex k = 0; k < n_; ++k) {
      g.directed_[g.Index(perm[j], perm[k])] = directed_[Index(j, k)];
      g.bidirected_[g.Index(perm[j], perm[k])] = bidirected_[Index(j, k)];
    }
  }
  return g;
}

DistanceMatrix::DistanceMatrix(const MixedGraph& graph)
    : n_(graph.num_vertices()) {
  const int inf = unreachable();
  dist_.assign(static_cast<std::size_t>(n_) * n_, inf);
  for (Vertex j = 0; j < n_; ++j) {
    dist_[static_cast<std::size_t>(j) * n_ + j] = 0;
    for (Vertex k = 0; k < n_; ++k) {
      if (graph.HasDirected(j, k)) dist_[static_cast<std::size_t>(j) * n_ + k] = 1;
    }
  }
  for (Vertex w = 0; w < n_; ++w) {
    for (Vertex u = 0; u < n_; ++u) {
      const int uw = dist_[static_cast<std::size_t>(u) * n_ + w];
      if (uw >= inf) continue;
      for (Vertex v = 0; v < n_; ++v) {
        const int wv = dist_[static_cast<std::size_t>(w) * n_ + v];
        if (wv >= inf) continue;
        int& uv = dist_[static_cast<std::size_t>(u) * n_ + v];
        uv = std::min(uv, uw + wv);
      }
    }
  }
}

int DistanceMatrix::Through(Vertex from, Vertex via, Vertex to) const {
  const int a = (*this)(from, via);
  const int b = (*this)(via, to);
  if (a >= unreachable() || b >= unreachable()) return unreachable();
  return a + b;
}

DistanceMatrix ComputeDistances(const MixedGraph& graph) {
  return DistanceMatrix(graph);
}

namespace {

enum class Color : std::uint8_t { kWhite, kGrey, kBlack };

// Iterative DFS; `on_back_edge` receives the cycle closed by each back edge
// and returns false to stop the search.
template <typename Callback>
void VisitBackEdgeCycles(const MixedGraph& graph, Callback&& on_back_edge) {
  const int n = graph.num_vertices();
  std::vector<Color> color(n, Color::kWhite);
  std::vector<Vertex> parent(n, -1);
  for (Vertex root = 0; root < n; ++root) {
    if (color[root] != Color::kWhite) continue;
    // (vertex, next child to try)
    std::vector<std::pair<Vertex, Vertex>> stack{{root, 0}};
    color[root] = Color::kGrey;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next == n) {
        color[u] = Color::kBlack;
        stack.pop_back();
        continue;
      }
      const Vertex v = next++;
      if (!graph.HasDirected(u, v)) continue;
      if (color[v] == Color::kWhite) {
        color[v] = Color::kGrey;
        parent[v] = u;
        stack.emplace_back(v, 0);
      } else if (color[v] == Color::kGrey) {
        std::vector<Edge> cycle{{u, v}};
        for (Vertex x = u; x != v; x = parent[x]) {
          cycle.push_back({parent[x], x});
        }
        std::reverse(cycle.begin(), cycle.end());
        if (!on_back_edge(std::move(cycle))) return;
      }
    }
  }
}

}  // namespace

std::optional<std::vector<Edge>> FindDirectedCycle(const MixedGraph& graph) {
  std::optional<std::vector<Edge>> found;
  VisitBackEdgeCycles(graph, [&](std::vector<Edge> cycle) {
    found = std::move(cycle);
    return false;
  });
  return found;
}

std::vector<std::vector<Edge>> FindDirectedCycles(const MixedGraph& graph) {
  std::vector<std::vector<Edge>> cycles;
  VisitBackEdgeCycles(graph, [&](std::vector<Edge> cycle) {
    cycles.push_back(std::move(cycle));
    return true;
  });
  return cycles;
}

EdgeSet TracePathEdges(const DistanceMatrix& dist, const MixedGraph& graph,
                       Vertex from, Vertex to) {
  EdgeSet edges;
  if (from == to || !dist.Reachable(from, to)) return edges;
  const int n = graph.num_vertices();
  std::set<Edge> visited{{from, to}};
  std::vector<Edge> stack{{from, to}};
  auto push = [&](Vertex u, Vertex v) {
    if (visited.insert({u, v}).second) stack.push_back({u, v});
  };
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    if (graph.HasDirected(u, v)) edges.insert({u, v});
    for (Vertex w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if (dist.Through(u, w, v) >= dist.unreachable()) continue;
      push(u, w);
      push(w, v);
    }
  }
  return edges;
}

std::vector<AlmostDirectedCycle> FindAlmostDirectedCycles(
    const MixedGraph& graph) {
  return FindAlmostDirectedCycles(graph, DistanceMatrix(graph));
}

std::vector<AlmostDirectedCycle> FindAlmostDirectedCycles(
    const MixedGraph& graph, const DistanceMatrix& dist) {
  std::vector<AlmostDirectedCycle> out;
  for (const VertexPair& p : graph.BidirectedEdges()) {
    const bool forward = dist.Reachable(p.first, p.second);
    const bool backward = dist.Reachable(p.second, p.first);
    if (!forward && !backward) continue;
    AlmostDirectedCycle w{p, {}};
    if (forward) {
      w.directed_edges = TracePathEdges(dist, graph, p.first, p.second);
    }
    if (backward) {
      w.directed_edges.merge(TracePathEdges(dist, graph, p.second, p.first));
    }
    out.push_back(std::move(w));
  }
  return out;
}

EdgeSet InducingPathEdges(const DistanceMatrix& dist, const MixedGraph& graph,
                          const std::vector<Vertex>& path) {
  EdgeSet edges;
  if (path.size() < 3) return edges;
  const Vertex first = path.front();
  const Vertex last = path.back();
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    edges.merge(TracePathEdges(dist, graph, path[i], first));
    edges.merge(TracePathEdges(dist, graph, path[i], last));
  }
  return edges;
}

namespace {

class InducingPathSearch {
 public:
  InducingPathSearch(const MixedGraph& graph, const DistanceMatrix& dist,
                     const InducingPathOptions& options)
      : graph_(graph),
        dist_(dist),
        options_(options),
        n_(graph.num_vertices()),
        on_path_(n_, false) {}

  std::vector<InducingPathWitness> Run() {
    for (Vertex s = 0; s < n_ && !Full(); ++s) {
      std::vector<bool> endpoints(n_, true);
      path_ = {s};
      on_path_[s] = true;
      Visit(s, s, endpoints);
      on_path_[s] = false;
    }
    return std::move(found_);
  }

 private:
  bool Full() const {
    return options_.max_witnesses != 0 &&
           found_.size() >= options_.max_witnesses;
  }

  void Visit(Vertex start, Vertex u, const std::vector<bool>& endpoints) {
    if (Full()) return;
    if (std::none_of(endpoints.begin(), endpoints.end(),
                     [](bool b) { return b; })) {
      return;
    }
    if (path_.size() > 2 && endpoints[u]) Report(start, u);
    for (Vertex v = 0; v < n_; ++v) {
      if (on_path_[v] || !graph_.HasBidirected(u, v)) continue;
      std::vector<bool> next = endpoints;
      if (!dist_.Reachable(v, start)) {
        for (Vertex x = 0; x < n_; ++x) {
          next[x] = next[x] && dist_.Reachable(v, x);
        }
      }
      path_.push_back(v);
      on_path_[v] = true;
      Visit(start, v, next);
      on_path_[v] = false;
      path_.pop_back();
      if (Full()) return;
    }
  }

  void Report(Vertex start, Vertex end) {
    if (options_.endpoints == InducingPathEndpoints::kNonadjacent &&
        graph_.Adjacent(start, end)) {
      return;
    }
    std::vector<Vertex> canonical = path_;
    if (canonical.front() > canonical.back()) {
      std::reverse(canonical.begin(), canonical.end());
    }
    if (!seen_.insert(canonical).second) return;
    InducingPathWitness w;
    w.directed_edges = InducingPathEdges(dist_, graph_, canonical);
    w.path = std::move(canonical);
    found_.push_back(std::move(w));
  }

  const MixedGraph& graph_;
  const DistanceMatrix& dist_;
  const InducingPathOptions& options_;
  const int n_;
  std::vector<bool> on_path_;
  std::vector<Vertex> path_;
  std::set<std::vector<Vertex>> seen_;
  std::vector<InducingPathWitness> found_;
};

}  // namespace

std::vector<InducingPathWitness> FindInducingPaths(
    const MixedGraph& graph, const InducingPathOptions& options) {
  return FindInducingPaths(graph, DistanceMatrix(graph), options);
}

std::vector<InducingPathWitness> FindInducingPaths(
    const MixedGraph& graph, const DistanceMatrix& dist,
    const InducingPathOptions& options) {
  return InducingPathSearch(graph, dist, options).Run();
}

MagReport CheckMag(const MixedGraph& graph, InducingPathEndpoints endpoints) {
  MagReport report;
  const DistanceMatrix dist(graph);
  report.directed_cycle = FindDirectedCycle(graph);
  report.almost_directed_cycles = FindAlmostDirectedCycles(graph, dist);
  report.inducing_paths =
      FindInducingPaths(graph, dist, InducingPathOptions{endpoints, 0});
  report.is_mag = !report.directed_cycle &&
                  report.almost_directed_cycles.empty() &&
                  report.inducing_paths.empty();
  return report;
}

std::string MagReport::Summary() const {
  std::ostringstream os;
  if (is_mag) return "MAG";
  if (directed_cycle) {
    os << "directed cycle:";
    for (const Edge& e : *directed_cycle) os << ' ' << e.from << "->" << e.to;
    os << '\n';
  }
  for (const auto& w : almost_directed_cycles) {
    os << "almost directed cycle: " << w.bidirected.first << "<->"
       << w.bidirected.second << " with " << w.directed_edges.size()
       << " directed edges\n";
  }
  for (const auto& w : inducing_paths) {
    os << "inducing path:";
    for (Vertex v : w.path) os << ' ' << v;
    os << " with " << w.directed_edges.size() << " directed edges\n";
  }
  return os.str();
}

}  // namespace magcut
