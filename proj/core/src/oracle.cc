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
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "magcut/column_fit.h"

namespace magcut::oracle {
namespace {

// One edge leaving u, with its marks.
struct Step {
  Vertex to;
  bool head_at_from;  // arrowhead into u
  bool head_at_to;    // arrowhead into `to`
};

std::vector<Step> Steps(const MixedGraph& g, Vertex u) {
  std::vector<Step> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v == u) continue;
    if (g.HasDirected(u, v)) out.push_back({v, false, true});
    if (g.HasDirected(v, u)) out.push_back({v, true, false});
    if (g.HasBidirected(u, v)) out.push_back({v, true, true});
  }
  return out;
}

// A simple path reduced to what m-separation needs: the inner vertices and
// whether each one is a collider.
struct PathShape {
  std::vector<Vertex> inner;
  std::vector<bool> collider;
};

void Extend(const MixedGraph& g, Vertex u, bool head_into_u, Vertex target,
            std::vector<bool>& on_path, PathShape& current,
            std::vector<PathShape>& out) {
  for (const Step& s : Steps(g, u)) {
    if (on_path[s.to]) continue;
    current.inner.push_back(u);
    current.collider.push_back(head_into_u && s.head_at_from);
    if (s.to == target) {
      out.push_back(current);
    } else {
      on_path[s.to] = true;
      Extend(g, s.to, s.head_at_to, target, on_path, current, out);
      on_path[s.to] = false;
    }
    current.inner.pop_back();
    current.collider.pop_back();
  }
}

std::vector<PathShape> AllPaths(const MixedGraph& g, Vertex a, Vertex b) {
  std::vector<bool> on_path(g.num_vertices(), false);
  std::vector<PathShape> out;
  PathShape current;
  on_path[a] = true;
  for (const Step& s : Steps(g, a)) {
    if (s.to == b) {
      out.push_back(current);
      continue;
    }
    on_path[s.to] = true;
    Extend(g, s.to, s.head_at_to, b, on_path, current, out);
    on_path[s.to] = false;
  }
  return out;
}

bool Connecting(const PathShape& p, const std::vector<bool>& in_c,
                const std::vector<bool>& an_c) {
  for (std::size_t i = 0; i < p.inner.size(); ++i) {
    const Vertex v = p.inner[i];
    if (p.collider[i] ? !an_c[v] : in_c[v]) return false;
  }
  return true;
}

bool SeparatedBy(const MixedGraph& g, const std::vector<PathShape>& paths,
                 const std::vector<Vertex>& conditioning) {
  std::vector<bool> in_c(g.num_vertices(), false);
  for (Vertex v : conditioning) in_c[v] = true;
  const std::vector<bool> an_c = Ancestors(g, conditioning);
  for (const PathShape& p : paths) {
    if (Connecting(p, in_c, an_c)) return false;
  }
  return true;
}

}  // namespace

std::vector<bool> Ancestors(const MixedGraph& graph,
                            const std::vector<Vertex>& set) {
  const int d = graph.num_vertices();
  std::vector<bool> seen(d, false);
  std::vector<Vertex> queue;
  for (Vertex v : set) {
    if (!seen[v]) {
      seen[v] = true;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Vertex u = 0; u < d; ++u) {
      if (!seen[u] && graph.HasDirected(u, v)) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return seen;
}

bool MSeparated(const MixedGraph& graph, Vertex a, Vertex b,
                const std::vector<Vertex>& conditioning) {
  if (a == b) throw std::invalid_argument("MSeparated: a == b");
  for (Vertex c : conditioning) {
    if (c == a || c == b) {
      throw std::invalid_argument("MSeparated: endpoint in conditioning set");
    }
  }
  return SeparatedBy(graph, AllPaths(graph, a, b), conditioning);
}

bool IsAncestralDef(const MixedGraph& graph) {
  const int d = graph.num_vertices();
  std::vector<std::vector<bool>> an(d);
  for (Vertex w = 0; w < d; ++w) an[w] = Ancestors(graph, {w});
  for (Vertex v = 0; v < d; ++v) {
    for (Vertex w = 0; w < d; ++w) {
      if (v == w) continue;
      if ((an[w][v] || graph.HasBidirected(v, w)) && an[v][w]) return false;
    }
  }
  return true;
}

bool IsMaximalDef(const MixedGraph& graph) {
  const int d = graph.num_vertices();
  if (d > kMaxMaximalityVertices) {
    throw std::invalid_argument("IsMaximalDef: too many vertices");
  }
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = a + 1; b < d; ++b) {
      if (graph.Adjacent(a, b)) continue;
      const std::vector<PathShape> paths = AllPaths(graph, a, b);
      std::vector<Vertex> rest;
      for (Vertex v = 0; v < d; ++v) {
        if (v != a && v != b) rest.push_back(v);
      }
      bool separable = false;
      for (unsigned mask = 0; mask < (1U << rest.size()) && !separable; ++mask) {
        std::vector<Vertex> c;
        for (std::size_t i = 0; i < rest.size(); ++i) {
          if (mask >> i & 1U) c.push_back(rest[i]);
        }
        separable = SeparatedBy(graph, paths, c);
      }
      if (!separable) return false;
    }
  }
  return true;
}

bool RespectsForbidden(const MixedGraph& graph,
                       const ForbiddenMatrix& forbidden) {
  const int d = graph.num_vertices();
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = a + 1; b < d; ++b) {
      const bool f = forbidden.num_vertices() != 0 && forbidden(a, b);
      const bool directed = graph.HasDirected(a, b) || graph.HasDirected(b, a);
      if (f ? directed : graph.HasBidirected(a, b)) return false;
    }
  }
  return true;
}

std::vector<MixedGraph> EnumerateMags(int d, const ForbiddenMatrix& forbidden) {
  if (d < 0 || d > kMaxEnumerationVertices) {
    throw std::invalid_argument("EnumerateMags: d must lie in [0, 4]");
  }
  if (forbidden.num_vertices() != 0 && forbidden.num_vertices() != d) {
    throw std::invalid_argument("EnumerateMags: forbidden matrix size mismatch");
  }
  const PairIndex pairs(d);
  std::vector<std::vector<PairState>> states;
  for (int p = 0; p < pairs.size(); ++p) {
    states.push_back(forbidden.num_vertices() == 0
                         ? AllowedStates(ForbiddenMatrix(d), pairs.pair(p))
                         : AllowedStates(forbidden, pairs.pair(p)));
  }
  std::vector<MixedGraph> out;
  std::vector<std::size_t> digit(pairs.size(), 0);
  std::vector<PairState> assignment(pairs.size());
  while (true) {
    for (int p = 0; p < pairs.size(); ++p) assignment[p] = states[p][digit[p]];
    MixedGraph g = AssignmentGraph(pairs, assignment);
    if (IsMagDef(g)) out.push_back(std::move(g));
    int p = pairs.size() - 1;
    while (p >= 0 && ++digit[p] == states[p].size()) digit[p--] = 0;
    if (p < 0) break;
  }
  return out;
}

std::vector<MixedGraph> EnumerateAllMags(int d) {
  if (d < 0 || d > kMaxEnumerationVertices) {
    throw std::invalid_argument("EnumerateAllMags: d must lie in [0, 4]");
  }
  const PairIndex pairs(d);
  const int count = 1 << (2 * pairs.size());
  constexpr PairState kStates[] = {PairState::kNone, PairState::kForward,
                                   PairState::kBackward, PairState::kBidirected};
  std::vector<MixedGraph> out;
  std::vector<PairState> assignment(pairs.size());
  for (int code = 0; code < count; ++code) {
    for (int p = 0; p < pairs.size(); ++p) {
      assignment[p] = kStates[(code >> (2 * (pairs.size() - 1 - p))) & 3];
    }
    MixedGraph g = AssignmentGraph(pairs, assignment);
    if (IsMagDef(g)) out.push_back(std::move(g));
  }
  return out;
}

OracleResult Solve(const Instance& instance,
                   const std::vector<MixedGraph>* census) {
  instance.Validate();
  const int d = instance.num_variables();
  if (d > kMaxEnumerationVertices) {
    throw std::invalid_argument("oracle::Solve: d must be at most 4");
  }
  const ForbiddenMatrix f = instance.forbidden.num_vertices() == 0
                                ? ForbiddenMatrix(d)
                                : instance.forbidden;
  std::vector<MixedGraph> candidates;
  if (census != nullptr) {
    for (const MixedGraph& g : *census) {
      if (g.num_vertices() == d && RespectsForbidden(g, f)) candidates.push_back(g);
    }
  } else {
    candidates = EnumerateMags(d, f);
  }

  const Eigen::MatrixXd& X = instance.data.values;
  std::map<std::pair<int, std::vector<int>>, Eigen::VectorXd> fits;
  struct Scored {
    double objective;
    Eigen::MatrixXd weights;
  };
  std::vector<Scored> scored;
  scored.reserve(candidates.size());
  for (const MixedGraph& g : candidates) {
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(d, d);
    for (Vertex j = 0; j < d; ++j) {
      std::vector<int> support;
      for (Vertex k = 0; k < d; ++k) {
        if (g.HasDirected(k, j) || g.HasBidirected(k, j)) support.push_back(k);
      }
      auto key = std::make_pair(j, support);
      auto it = fits.find(key);
      if (it == fits.end()) {
        it = fits.emplace(key, FitColumn(X, j, support, instance.q,
                                         instance.big_m)
                                   .weights)
                 .first;
      }
      for (std::size_t s = 0; s < support.size(); ++s) {
        W(support[s], j) = it->second(static_cast<Eigen::Index>(s));
      }
    }
    scored.push_back({Objective(W, g, X, instance.lambda, instance.q), W});
  }

  OracleResult out;
  out.structures_scored = static_cast<int>(candidates.size());
  if (candidates.empty()) {
    throw std::logic_error("oracle::Solve: no admissible structure");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (scored[i].objective < scored[best].objective) best = i;
  }
  const double opt = scored[best].objective;
  const double tol = 1e-9 * std::max(1.0, std::abs(opt));
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (scored[i].objective <= opt + tol) out.optima.push_back(candidates[i]);
  }
  Solution& s = out.solution;
  s.graph = candidates[best];
  s.weights = scored[best].weights;
  s.objective = opt;
  s.best_bound = opt;
  s.mip_gap = 0.0;
  s.status = SolveStatus::kOptimal;
  return out;
}

}  // namespace magcut::oracle
