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

#ifndef MAGCUT_EVAL_H_
#define MAGCUT_EVAL_H_

#include <vector>

#include <Eigen/Dense>

#include "magcut/graph.h"

namespace magcut {

enum class EdgeType { kNone, kRight, kLeft, kBidirected };

// Type of the pair {a, b} read from a's side: kRight is a -> b.
EdgeType EdgeTypeOf(const MixedGraph& graph, Vertex a, Vertex b);

// Keeps directed k -> j when |W(k, j)| >= delta and bidirected j <-> k when
// max(|W(j, k)|, |W(k, j)|) >= delta.
MixedGraph Threshold(const Eigen::MatrixXd& W, const MixedGraph& support,
                     double delta);

// Sum over unordered pairs of 0 (same type), 0.5 (both present, types
// differ) or 1 (exactly one present). Throws on a dimension mismatch.
double Shd(const MixedGraph& truth, const MixedGraph& predicted);

enum class F1Mode { kTyped, kSkeleton };

// Positives are adjacent pairs of `predicted`; typed mode also requires the
// edge type to match. 0 when precision + recall is 0.
double F1(const MixedGraph& truth, const MixedGraph& predicted,
          F1Mode mode = F1Mode::kTyped);

struct ThresholdChoice {
  MixedGraph graph;
  double shd = 0.0;
  double delta = 0.0;
};

// Smallest SHD over the grid, the smallest delta on ties. Throws on an
// empty grid.
ThresholdChoice BestOverThresholds(const Eigen::MatrixXd& W,
                                   const MixedGraph& support,
                                   const MixedGraph& truth,
                                   const std::vector<double>& delta_grid);

// 0 followed by 21 log-spaced values from 1e-3 to 1.
std::vector<double> DefaultDeltaGrid();

}  // namespace magcut

#endif  // MAGCUT_EVAL_H_
