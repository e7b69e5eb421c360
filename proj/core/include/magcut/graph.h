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

#ifndef MAGCUT_GRAPH_H_
#define MAGCUT_GRAPH_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace magcut {

using Vertex = int;

// Ordered pair (from, to); the directed edge from -> to.
struct Edge {
  Vertex from = 0;
  Vertex to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Unordered pair, always stored with first < second.
struct VertexPair {
  Vertex first = 0;
  Vertex second = 0;

  static VertexPair Of(Vertex a, Vertex b) {
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
  }
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

using EdgeSet = std::set<Edge>;

// Directed edge matrix E and symmetric bidirected edge matrix B over dense
// 0-based vertices.
//
// Invariants enforced on every mutation: zero diagonal, B symmetric, and no
// pair carries both a directed and a bidirected edge. Directed 2-cycles are
// representable since the separation routines must be able to see them.
class MixedGraph {
 public:
  MixedGraph() = default;
  explicit MixedGraph(int num_vertices);

  // Throws std::invalid_argument when the edge lists break an invariant.
  static MixedGraph FromEdges(int num_vertices,
                              const std::vector<Edge>& directed,
                              const std::vector<VertexPair>& bidirected);

  int num_vertices() const { return n_; }

  bool HasDirected(Vertex from, Vertex to) const {
    return directed_[Index(from, to)] != 0;
  }
  bool HasBidirected(Vertex a, Vertex b) const {
    return bidirected_[Index(a, b)] != 0;
  }
  bool Adjacent(Vertex a, Vertex b) const {
    return HasDirected(a, b) || HasDirected(b, a) || HasBidirected(a, b);
  }

  void AddDirected(Vertex from, Vertex to);
  void AddBidirected(Vertex a, Vertex b);
  void RemoveDirected(Vertex from, Vertex to);
  void RemoveBidirected(Vertex a, Vertex b);
  // Drops every edge between a and b.
  void ClearPair(Vertex a, Vertex b);

  std::vector<Edge> DirectedEdges() const;
  std::vector<VertexPair> BidirectedEdges() const;
  int num_directed() const;
  int num_bidirected() const;

  std::vector<Vertex> Children(Vertex v) const;
  std::vector<Vertex> Spouses(Vertex v) const;

  // Subgraph induced by `keep` (in the given order).
  MixedGraph Induced(const std::vector<Vertex>& keep) const;

  // Relabels vertex v as perm[v].
  MixedGraph Permuted(const std::vector<Vertex>& perm) const;

  friend bool operator==(const MixedGraph&, const MixedGraph&) = default;

 private:
  std::size_t Index(Vertex a, Vertex b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(b);
  }
  void CheckVertex(Vertex v) const;

  int n_ = 0;
  std::vector<std::uint8_t> directed_;
  std::vector<std::uint8_t> bidirected_;
};

// All-pairs shortest directed path lengths over E (bidirected edges ignored).
// Unreachable pairs hold the sentinel num_vertices() + 1.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(const MixedGraph& graph);

  int num_vertices() const { return n_; }
  int unreachable() const { return n_ + 1; }

  int operator()(Vertex from, Vertex to) const {
    return dist_[static_cast<std::size_t>(from) * n_ + to];
  }
  bool Reachable(Vertex from, Vertex to) const {
    return (*this)(from, to) < unreachable();
  }
  // Length of from -> via -> to, or unreachable() if either leg is.
  int Through(Vertex from, Vertex via, Vertex to) const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) =
      default;

 private:
  int n_ = 0;
  std::vector<int> dist_;
};

// Floyd-Warshall over the directed edges.
DistanceMatrix ComputeDistances(const MixedGraph& graph);

// Edges of one directed cycle in traversal order, if E has any.
std::optional<std::vector<Edge>> FindDirectedCycle(const MixedGraph& graph);

// One cycle per DFS back edge. Cycles may share edges.
std::vector<std::vector<Edge>> FindDirectedCycles(const MixedGraph& graph);

struct AlmostDirectedCycle {
  VertexPair bidirected;
  EdgeSet directed_edges;
};

// For every bidirected {u, v} with u reaching v or v reaching u along E,
// reports the bidirected pair together with every directed edge on such a
// path (both directions merged into one witness).
std::vector<AlmostDirectedCycle> FindAlmostDirectedCycles(
    const MixedGraph& graph);
std::vector<AlmostDirectedCycle> FindAlmostDirectedCycles(
    const MixedGraph& graph, const DistanceMatrix& dist);

// Every directed edge (u, v) that lies on some directed walk from -> to.
// Empty when `to` is unreachable from `from`.
EdgeSet TracePathEdges(const DistanceMatrix& dist, const MixedGraph& graph,
                       Vertex from, Vertex to);

enum class InducingPathEndpoints {
  // Only endpoint pairs that are not adjacent (the maximality condition).
  kNonadjacent,
  // Every endpoint pair the bidirected DFS reaches.
  kAll,
};

struct InducingPathWitness {
  // path[0] and path.back() are the endpoints; consecutive vertices are
  // joined by bidirected edges.
  std::vector<Vertex> path;
  EdgeSet directed_edges;
};

struct InducingPathOptions {
  InducingPathEndpoints endpoints = InducingPathEndpoints::kNonadjacent;
  // Stop after this many distinct witnesses; 0 means no cap.
  std::size_t max_witnesses = 0;
};

// Depth-first search over bidirected edges from every start vertex, pruned by
// the set of endpoints that every inner vertex so far is an ancestor of.
// Paths are simple and each witness is reported once (in the orientation with
// path.front() < path.back()).
std::vector<InducingPathWitness> FindInducingPaths(
    const MixedGraph& graph, const InducingPathOptions& options = {});
std::vector<InducingPathWitness> FindInducingPaths(
    const MixedGraph& graph, const DistanceMatrix& dist,
    const InducingPathOptions& options = {});

// Directed edges carrying the ancestor relations between the inner vertices
// of `path` and its two endpoints.
EdgeSet InducingPathEdges(const DistanceMatrix& dist, const MixedGraph& graph,
                          const std::vector<Vertex>& path);

struct MagReport {
  bool is_mag = true;
  std::optional<std::vector<Edge>> directed_cycle;
  std::vector<AlmostDirectedCycle> almost_directed_cycles;
  std::vector<InducingPathWitness> inducing_paths;

  std::string Summary() const;
};

MagReport CheckMag(const MixedGraph& graph,
                   InducingPathEndpoints endpoints =
                       InducingPathEndpoints::kNonadjacent);

inline bool IsMag(const MixedGraph& graph,
                  InducingPathEndpoints endpoints =
                      InducingPathEndpoints::kNonadjacent) {
  return CheckMag(graph, endpoints).is_mag;
}

}  // namespace magcut

#endif  // MAGCUT_GRAPH_H_
