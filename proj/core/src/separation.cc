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

#include "magcut/separation.h"

#include <algorithm>
#include <stdexcept>

namespace magcut {

std::string_view CutFamilyName(CutFamily family) {
  switch (family) {
    case CutFamily::kDirectedCycle:
      return "cycle";
    case CutFamily::kAlmostDirectedCycle:
      return "almost";
    case CutFamily::kInducingPath:
      return "inducing";
  }
  return "unknown";
}

int LazyCut::Lhs(const MixedGraph& graph) const {
  int lhs = 0;
  for (const Edge& e : directed_terms) lhs += graph.HasDirected(e.from, e.to);
  for (const VertexPair& p : bidirected_terms) {
    lhs += graph.HasBidirected(p.first, p.second);
  }
  for (const Edge& e : negated_directed_terms) {
    lhs -= graph.HasDirected(e.from, e.to);
  }
  for (const VertexPair& p : negated_bidirected_terms) {
    lhs -= graph.HasBidirected(p.first, p.second);
  }
  return lhs;
}

namespace {

void Canonicalize(LazyCut& cut) {
  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(cut.directed_terms);
  sort_unique(cut.bidirected_terms);
  sort_unique(cut.negated_directed_terms);
  sort_unique(cut.negated_bidirected_terms);
  cut.rhs = static_cast<int>(cut.directed_terms.size() +
                             cut.bidirected_terms.size()) -
            1;
}

}  // namespace

LazyCut CutFromDirectedCycle(const std::vector<Edge>& cycle) {
  if (cycle.empty()) {
    throw std::invalid_argument("CutFromDirectedCycle: empty cycle");
  }
  LazyCut cut;
  cut.family = CutFamily::kDirectedCycle;
  cut.directed_terms = cycle;
  Canonicalize(cut);
  return cut;
}

LazyCut CutFromAlmostDirectedCycle(const AlmostDirectedCycle& witness) {
  if (witness.directed_edges.empty()) {
    throw std::invalid_argument(
        "CutFromAlmostDirectedCycle: witness has no directed edges");
  }
  LazyCut cut;
  cut.family = CutFamily::kAlmostDirectedCycle;
  cut.directed_terms.assign(witness.directed_edges.begin(),
                            witness.directed_edges.end());
  cut.bidirected_terms.push_back(witness.bidirected);
  Canonicalize(cut);
  return cut;
}

LazyCut CutFromInducingPath(const InducingPathWitness& witness,
                            InducingPathEndpoints endpoints) {
  if (witness.path.size() < 3) {
    throw std::invalid_argument(
        "CutFromInducingPath: path needs at least two bidirected edges");
  }
  LazyCut cut;
  cut.family = CutFamily::kInducingPath;
  cut.directed_terms.assign(witness.directed_edges.begin(),
                            witness.directed_edges.end());
  for (std::size_t i = 0; i + 1 < witness.path.size(); ++i) {
    cut.bidirected_terms.push_back(
        VertexPair::Of(witness.path[i], witness.path[i + 1]));
  }
  if (endpoints == InducingPathEndpoints::kNonadjacent) {
    const Vertex a = witness.path.front();
    const Vertex b = witness.path.back();
    cut.negated_directed_terms = {{a, b}, {b, a}};
    cut.negated_bidirected_terms = {VertexPair::Of(a, b)};
  }
  Canonicalize(cut);
  return cut;
}

std::vector<LazyCut> Separate(const MixedGraph& graph,
                              const SeparationOptions& options) {
  std::set<LazyCut> seen;
  std::vector<LazyCut> cuts;
  auto emit = [&](LazyCut cut) {
    if (seen.insert(cut).second) cuts.push_back(std::move(cut));
  };

  if (options.all_directed_cycles) {
    for (const auto& cycle : FindDirectedCycles(graph)) {
      emit(CutFromDirectedCycle(cycle));
    }
  } else if (auto cycle = FindDirectedCycle(graph)) {
    emit(CutFromDirectedCycle(*cycle));
  }

  const DistanceMatrix dist(graph);
  for (const auto& w : FindAlmostDirectedCycles(graph, dist)) {
    emit(CutFromAlmostDirectedCycle(w));
  }

  const int n = graph.num_vertices();
  InducingPathOptions ip;
  ip.endpoints = options.endpoints;
  ip.max_witnesses = options.max_inducing_cuts != 0
                         ? options.max_inducing_cuts
                         : static_cast<std::size_t>(n) * n;
  for (const auto& w : FindInducingPaths(graph, dist, ip)) {
    emit(CutFromInducingPath(w, options.endpoints));
  }
  return cuts;
}

void CutCounts::Add(CutFamily family) {
  switch (family) {
    case CutFamily::kDirectedCycle:
      ++directed_cycle;
      break;
    case CutFamily::kAlmostDirectedCycle:
      ++almost_directed_cycle;
      break;
    case CutFamily::kInducingPath:
      ++inducing_path;
      break;
  }
}

bool CutPool::Add(const LazyCut& cut) {
  if (!index_.insert(cut).second) return false;
  cuts_.push_back(cut);
  counts_.Add(cut.family);
  return true;
}

const LazyCut* CutPool::FirstViolated(const MixedGraph& graph) const {
  for (const LazyCut& cut : cuts_) {
    if (cut.IsViolatedBy(graph)) return &cut;
  }
  return nullptr;
}

}  // namespace magcut
