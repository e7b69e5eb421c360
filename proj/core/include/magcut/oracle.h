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

#ifndef MAGCUT_ORACLE_H_
#define MAGCUT_ORACLE_H_

#include <vector>

#include "magcut/data.h"
#include "magcut/graph.h"
#include "magcut/solver.h"

// Brute-force reference implementations straight from the definitions.
// Exponential; meant for small graphs and for certifying the fast paths.
namespace magcut::oracle {

inline constexpr int kMaxMaximalityVertices = 6;
inline constexpr int kMaxEnumerationVertices = 4;

// Ancestors of the vertices in `set` (the set itself included).
std::vector<bool> Ancestors(const MixedGraph& graph,
                            const std::vector<Vertex>& set);

// True iff no simple path between a and b is m-connecting given C: every
// collider on the path in an(C), every non-collider outside C.
// Throws when a == b or a or b is in C.
bool MSeparated(const MixedGraph& graph, Vertex a, Vertex b,
                const std::vector<Vertex>& conditioning);

// For all v != w: v in an(w) or v a spouse of w implies w not in an(v).
bool IsAncestralDef(const MixedGraph& graph);

// Every nonadjacent pair has some m-separating set among the other
// vertices. Throws for more than kMaxMaximalityVertices vertices.
bool IsMaximalDef(const MixedGraph& graph);

inline bool IsMagDef(const MixedGraph& graph) {
  return IsAncestralDef(graph) && IsMaximalDef(graph);
}

// Every pair uses only the states F allows for it.
bool RespectsForbidden(const MixedGraph& graph, const ForbiddenMatrix& forbidden);

// All MAGs over d vertices whose pair states respect F (an empty F means
// no marks), in mixed-radix order of the pair states. Throws for
// d > kMaxEnumerationVertices.
std::vector<MixedGraph> EnumerateMags(int d, const ForbiddenMatrix& forbidden);

// All MAGs over d vertices with every pair free to take any of the four
// states, ignoring F. Throws for d > kMaxEnumerationVertices.
std::vector<MixedGraph> EnumerateAllMags(int d);

struct OracleResult {
  Solution solution;
  // Every enumerated MAG within 1e-9 (relative) of the optimum.
  std::vector<MixedGraph> optima;
  int structures_scored = 0;
};

// Exhaustive minimizer of the objective over the enumerated MAGs. When
// `census` is given (typically EnumerateAllMags(d)) it replaces
// EnumerateMags and is filtered by the instance's F.
OracleResult Solve(const Instance& instance,
                   const std::vector<MixedGraph>* census = nullptr);

}  // namespace magcut::oracle

#endif  // MAGCUT_ORACLE_H_
