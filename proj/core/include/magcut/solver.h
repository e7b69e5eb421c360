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

#ifndef MAGCUT_SOLVER_H_
#define MAGCUT_SOLVER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "magcut/column_fit.h"
#include "magcut/data.h"
#include "magcut/graph.h"
#include "magcut/separation.h"

namespace magcut {

inline constexpr double kDefaultBigM = 100.0;
inline constexpr double kDefaultLambda = 1.0;
inline constexpr double kDefaultTimeLimitSeconds = 900.0;

// A learning problem: data, forbidden pairs and the model parameters of
//
//   min  sum_i sum_j |X_ij - sum_k X_ik w_kj|^q + lambda * sum_jk (e_jk + b_jk)
//
// over MAG structures (E, B) and weights with |w_kj| <= c (e_kj + b_kj).
// The penalty runs over ordered pairs, so one bidirected edge costs
// 2 * lambda (b_jk and b_kj are both set).
struct Instance {
  Dataset data;
  ForbiddenMatrix forbidden;
  double lambda = kDefaultLambda;
  int q = 2;
  double big_m = kDefaultBigM;
  double time_limit_s = kDefaultTimeLimitSeconds;
  double gap_tol = 0.0;
  std::uint64_t seed = 0;

  int num_variables() const { return data.num_variables(); }
  // Throws std::invalid_argument describing the first broken precondition.
  void Validate() const;
};

// Decision for the unordered pair {j, k} with j < k.
enum class PairState : std::uint8_t {
  kUndecided,
  kNone,
  kForward,   // j -> k
  kBackward,  // k -> j
  kBidirected,
};

// Dense index of the unordered pairs {j, k}, j < k, in row-major order.
class PairIndex {
 public:
  explicit PairIndex(int num_vertices);

  int num_vertices() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  const VertexPair& pair(int index) const { return pairs_[index]; }
  int index(Vertex a, Vertex b) const;

 private:
  int n_;
  std::vector<VertexPair> pairs_;
};

// States a pair may take given F: {none, j->k, k->j} when f_jk = 0,
// {none, j<->k} when f_jk = 1.
std::vector<PairState> AllowedStates(const ForbiddenMatrix& forbidden,
                                     const VertexPair& pair);

// Graph of a complete assignment. Throws if any pair is undecided.
MixedGraph AssignmentGraph(const PairIndex& pairs,
                           const std::vector<PairState>& assignment);

struct SearchNode {
  std::vector<PairState> assignment;
  int depth = 0;
  double bound = 0.0;
};

enum class SolveStatus { kOptimal, kGapLimit, kTimeLimit, kInfeasible };
std::string_view SolveStatusName(SolveStatus status);

struct Solution {
  // w(k, j) is the weight of k in the regression of column j.
  Eigen::MatrixXd weights;
  MixedGraph graph;
  double objective = 0.0;
  double best_bound = 0.0;
  double mip_gap = 0.0;
  SolveStatus status = SolveStatus::kOptimal;
  CutCounts cuts_added;
  std::int64_t nodes_explored = 0;
  // Every cut separated during the search, in the order added.
  std::vector<LazyCut> cuts;
};

// One line of the solver log:
//   node=<int> bound=<float> incumbent=<float> gap=<float> cuts=<c,a,i>
struct NodeLogRecord {
  std::int64_t node = 0;
  double bound = 0.0;
  double incumbent = 0.0;
  double gap = 0.0;
  CutCounts cuts;

  std::string ToString() const;
};

enum class BoundKind {
  // Per column, the loss with every still-permitted parent or spouse and the
  // penalty of the edges already fixed on. Cheap and weak.
  kRelaxedSupport,
  // Per column, the best penalized score over the supports between the fixed
  // and the permitted ones; pair consistency and MAG cuts are relaxed.
  kBestSubset,
};

struct SolveOptions {
  BoundKind bound = BoundKind::kBestSubset;
  SeparationOptions separation;
  // Greedy edge deletion on rejected candidates to find incumbents early.
  bool repair_incumbents = true;
  // 0 means unlimited.
  std::int64_t node_limit = 0;
  std::function<void(const NodeLogRecord&)> on_node;
};

// |incumbent - bound| / |incumbent|; 0 when the two agree, +infinity when the
// incumbent is 0 and the bound is not.
double MipGap(double incumbent_objective, double best_bound);

// Evaluates the objective for explicit weights. Throws std::invalid_argument
// if W is nonzero (beyond 1e-9) off the support of the graph.
double Objective(const Eigen::MatrixXd& W, const MixedGraph& graph,
                 const Eigen::MatrixXd& X, double lambda, int q);

// Memoized per-column fits keyed by the support bitmask.
class ColumnScores {
 public:
  ColumnScores(const Eigen::MatrixXd& X, int q, double big_m, double lambda);

  int num_variables() const { return d_; }

  struct Entry {
    double loss = 0.0;
    double score = 0.0;  // loss + lambda * |support|
    Eigen::VectorXd weights;  // full length d, zero off the support
  };

  const Entry& Get(int column, std::uint64_t support_mask);

  // min over required <= S <= allowed of score(S), with its minimizer.
  // Falls back to the relaxed-support value once the free part exceeds
  // `max_free_bits` columns.
  std::pair<double, std::uint64_t> BestSubset(int column, std::uint64_t required,
                                              std::uint64_t allowed);

  static constexpr int max_free_bits = 12;

 private:
  Eigen::MatrixXd X_;
  int d_;
  int q_;
  double big_m_;
  double lambda_;
  std::vector<std::unordered_map<std::uint64_t, Entry>> cache_;
  struct SubsetKey {
    std::uint64_t required;
    std::uint64_t allowed;
    bool operator==(const SubsetKey&) const = default;
  };
  struct SubsetKeyHash {
    std::size_t operator()(const SubsetKey& k) const {
      return std::hash<std::uint64_t>()(k.required * 0x9E3779B97F4A7C15ULL ^
                                        k.allowed);
    }
  };
  std::vector<std::unordered_map<SubsetKey, std::pair<double, std::uint64_t>,
                                 SubsetKeyHash>>
      best_;
};

// Lower bound of kRelaxedSupport kind for one node.
double NodeBound(const SearchNode& node, const Instance& instance);

// Best-first branch and bound over pair states with lazy MAG cuts.
Solution Solve(const Instance& instance, const SolveOptions& options = {});

}  // namespace magcut

#endif  // MAGCUT_SOLVER_H_
