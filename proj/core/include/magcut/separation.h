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

#ifndef MAGCUT_SEPARATION_H_
#define MAGCUT_SEPARATION_H_

#include <compare>
#include <cstddef>
#include <set>
#include <string_view>
#include <vector>

#include "magcut/graph.h"

namespace magcut {

enum class CutFamily { kDirectedCycle, kAlmostDirectedCycle, kInducingPath };

std::string_view CutFamilyName(CutFamily family);  // "cycle" | "almost" | "inducing"

// Linear inequality over the binary edge indicators:
//
//   sum e(directed_terms) + sum b(bidirected_terms)
//     - sum e(negated_directed_terms) - sum b(negated_bidirected_terms) <= rhs
//
// rhs is always (#directed_terms + #bidirected_terms) - 1, so the cut removes
// exactly the assignments that switch on every positive term while leaving
// the negated terms off. Term lists are sorted, which makes the value
// comparison below a structural one.
struct LazyCut {
  CutFamily family = CutFamily::kDirectedCycle;
  std::vector<Edge> directed_terms;
  std::vector<VertexPair> bidirected_terms;
  // Adjacency indicators of an inducing path's endpoints. A path whose
  // endpoints are adjacent does not violate maximality, so those graphs
  // must stay feasible.
  std::vector<Edge> negated_directed_terms;
  std::vector<VertexPair> negated_bidirected_terms;
  int rhs = 0;

  int Lhs(const MixedGraph& graph) const;
  bool IsViolatedBy(const MixedGraph& graph) const {
    return Lhs(graph) > rhs;
  }

  friend auto operator<=>(const LazyCut&, const LazyCut&) = default;
};

// sum of e over the cycle <= |cycle| - 1. Throws on an empty edge list.
LazyCut CutFromDirectedCycle(const std::vector<Edge>& cycle);

// b(u, v) + sum e(E') <= |E'|. Throws when E' is empty.
LazyCut CutFromAlmostDirectedCycle(const AlmostDirectedCycle& witness);

// sum b(P) + sum e(E') <= |E'| + |P| - 1, with |P| the number of bidirected
// edges on the path. With kNonadjacent the endpoint adjacency indicators are
// subtracted on the left. Throws for paths with fewer than two bidirected
// edges.
LazyCut CutFromInducingPath(
    const InducingPathWitness& witness,
    InducingPathEndpoints endpoints = InducingPathEndpoints::kNonadjacent);

struct SeparationOptions {
  // Default: the first cycle the DFS meets. Otherwise one per back edge.
  bool all_directed_cycles = false;
  // Inducing-path cuts per call; 0 means num_vertices^2.
  std::size_t max_inducing_cuts = 0;
  InducingPathEndpoints endpoints = InducingPathEndpoints::kNonadjacent;
};

// Runs the three detectors (directed cycles, almost directed cycles,
// inducing paths) and returns their canonical, deduplicated cuts. Empty iff
// the graph is a MAG under `options.endpoints`.
std::vector<LazyCut> Separate(const MixedGraph& graph,
                              const SeparationOptions& options = {});

struct CutCounts {
  int directed_cycle = 0;
  int almost_directed_cycle = 0;
  int inducing_path = 0;

  int total() const {
    return directed_cycle + almost_directed_cycle + inducing_path;
  }
  void Add(CutFamily family);
  friend bool operator==(const CutCounts&, const CutCounts&) = default;
};

// Global, deduplicated store of cuts in insertion order.
class CutPool {
 public:
  // Returns false when an identical cut is already pooled.
  bool Add(const LazyCut& cut);

  const std::vector<LazyCut>& cuts() const { return cuts_; }
  const CutCounts& counts() const { return counts_; }
  std::size_t size() const { return cuts_.size(); }

  // First pooled cut violated by `graph`, or nullptr.
  const LazyCut* FirstViolated(const MixedGraph& graph) const;

 private:
  std::set<LazyCut> index_;
  std::vector<LazyCut> cuts_;
  CutCounts counts_;
};

}  // namespace magcut

#endif  // MAGCUT_SEPARATION_H_
