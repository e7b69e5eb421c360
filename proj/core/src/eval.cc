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

#include "magcut/eval.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magcut {
namespace {

void CheckSameSize(const MixedGraph& a, const MixedGraph& b) {
  if (a.num_vertices() != b.num_vertices()) {
    throw std::invalid_argument("graphs have different vertex counts");
  }
}

}  // namespace

EdgeType EdgeTypeOf(const MixedGraph& graph, Vertex a, Vertex b) {
  if (graph.HasBidirected(a, b)) return EdgeType::kBidirected;
  if (graph.HasDirected(a, b)) return EdgeType::kRight;
  if (graph.HasDirected(b, a)) return EdgeType::kLeft;
  return EdgeType::kNone;
}

MixedGraph Threshold(const Eigen::MatrixXd& W, const MixedGraph& support,
                     double delta) {
  const int d = support.num_vertices();
  if (W.rows() != d || W.cols() != d) {
    throw std::invalid_argument("Threshold: weight matrix dimension mismatch");
  }
  if (!(delta >= 0)) throw std::invalid_argument("Threshold: delta must be >= 0");
  MixedGraph out(d);
  for (const Edge& e : support.DirectedEdges()) {
    if (std::abs(W(e.from, e.to)) >= delta) out.AddDirected(e.from, e.to);
  }
  for (const VertexPair& p : support.BidirectedEdges()) {
    const double w = std::max(std::abs(W(p.first, p.second)),
                              std::abs(W(p.second, p.first)));
    if (w >= delta) out.AddBidirected(p.first, p.second);
  }
  return out;
}

double Shd(const MixedGraph& truth, const MixedGraph& predicted) {
  CheckSameSize(truth, predicted);
  const int d = truth.num_vertices();
  double total = 0.0;
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = a + 1; b < d; ++b) {
      const EdgeType gt = EdgeTypeOf(truth, a, b);
      const EdgeType pr = EdgeTypeOf(predicted, a, b);
      if (gt == pr) continue;
      total += gt != EdgeType::kNone && pr != EdgeType::kNone ? 0.5 : 1.0;
    }
  }
  return total;
}

double F1(const MixedGraph& truth, const MixedGraph& predicted, F1Mode mode) {
  CheckSameSize(truth, predicted);
  const int d = truth.num_vertices();
  int true_positive = 0;
  int predicted_count = 0;
  int truth_count = 0;
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = a + 1; b < d; ++b) {
      const EdgeType gt = EdgeTypeOf(truth, a, b);
      const EdgeType pr = EdgeTypeOf(predicted, a, b);
      truth_count += gt != EdgeType::kNone;
      predicted_count += pr != EdgeType::kNone;
      if (gt == EdgeType::kNone || pr == EdgeType::kNone) continue;
      if (mode == F1Mode::kSkeleton || gt == pr) ++true_positive;
    }
  }
  const double precision =
      predicted_count == 0 ? 0.0 : static_cast<double>(true_positive) / predicted_count;
  const double recall =
      truth_count == 0 ? 0.0 : static_cast<double>(true_positive) / truth_count;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

ThresholdChoice BestOverThresholds(const Eigen::MatrixXd& W,
                                   const MixedGraph& support,
                                   const MixedGraph& truth,
                                   const std::vector<double>& delta_grid) {
  if (delta_grid.empty()) {
    throw std::invalid_argument("BestOverThresholds: empty delta grid");
  }
  std::vector<double> grid = delta_grid;
  std::sort(grid.begin(), grid.end());
  ThresholdChoice best;
  bool have = false;
  for (double delta : grid) {
    MixedGraph g = Threshold(W, support, delta);
    const double s = Shd(truth, g);
    if (!have || s < best.shd) {
      best = {std::move(g), s, delta};
      have = true;
    }
  }
  return best;
}

std::vector<double> DefaultDeltaGrid() {
  std::vector<double> grid{0.0};
  for (int i = 0; i <= 20; ++i) grid.push_back(std::pow(10.0, -3.0 + 3.0 * i / 20.0));
  return grid;
}

}  // namespace magcut
