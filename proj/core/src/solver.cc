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

#include "magcut/solver.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>

namespace magcut {

void Instance::Validate() const {
  const int n = data.num_samples();
  const int d = data.num_variables();
  if (n < 1) throw std::invalid_argument("instance needs at least one sample");
  if (d < 1) throw std::invalid_argument("instance needs at least one variable");
  if (d > 63) throw std::invalid_argument("at most 63 variables are supported");
  if (!data.names.empty() && static_cast<int>(data.names.size()) != d) {
    throw std::invalid_argument("variable name count does not match columns");
  }
  if (forbidden.num_vertices() != 0 && forbidden.num_vertices() != d) {
    throw std::invalid_argument("forbidden matrix dimension mismatch");
  }
  if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
  if (q != 1 && q != 2) throw std::invalid_argument("q must be 1 or 2");
  if (!(big_m > 0)) throw std::invalid_argument("big-M bound must be > 0");
  if (!(time_limit_s > 0)) throw std::invalid_argument("time limit must be > 0");
  if (!(gap_tol >= 0)) throw std::invalid_argument("gap tolerance must be >= 0");
  if (!data.values.allFinite()) {
    throw std::invalid_argument("data contains non-finite values");
  }
}

PairIndex::PairIndex(int num_vertices) : n_(num_vertices) {
  for (Vertex j = 0; j < n_; ++j) {
    for (Vertex k = j + 1; k < n_; ++k) pairs_.push_back({j, k});
  }
}

int PairIndex::index(Vertex a, Vertex b) const {
  const VertexPair p = VertexPair::Of(a, b);
  // Row-major position of (first, second) in the strict upper triangle.
  return p.first * n_ - p.first * (p.first + 1) / 2 + (p.second - p.first - 1);
}

std::vector<PairState> AllowedStates(const ForbiddenMatrix& forbidden,
                                     const VertexPair& pair) {
  const bool f = forbidden.num_vertices() != 0 &&
                 forbidden(pair.first, pair.second);
  if (f) return {PairState::kNone, PairState::kBidirected};
  return {PairState::kNone, PairState::kForward, PairState::kBackward};
}

MixedGraph AssignmentGraph(const PairIndex& pairs,
                           const std::vector<PairState>& assignment) {
  MixedGraph g(pairs.num_vertices());
  for (int p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs.pair(p);
    switch (assignment[p]) {
      case PairState::kUndecided:
        throw std::invalid_argument("AssignmentGraph: undecided pair");
      case PairState::kNone:
        break;
      case PairState::kForward:
        g.AddDirected(a, b);
        break;
      case PairState::kBackward:
        g.AddDirected(b, a);
        break;
      case PairState::kBidirected:
        g.AddBidirected(a, b);
        break;
    }
  }
  return g;
}

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "OPTIMAL";
    case SolveStatus::kGapLimit:
      return "GAP_LIMIT";
    case SolveStatus::kTimeLimit:
      return "TIME_LIMIT";
    case SolveStatus::kInfeasible:
      return "INFEASIBLE";
  }
  return "UNKNOWN";
}

std::string NodeLogRecord::ToString() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "node=%lld bound=%.9g incumbent=%.9g gap=%.9g cuts=%d,%d,%d",
                static_cast<long long>(node), bound, incumbent, gap,
                cuts.directed_cycle, cuts.almost_directed_cycle,
                cuts.inducing_path);
  return buf;
}

double MipGap(double incumbent_objective, double best_bound) {
  if (incumbent_objective == best_bound) return 0.0;
  if (incumbent_objective == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::abs(incumbent_objective - best_bound) /
         std::abs(incumbent_objective);
}

double Objective(const Eigen::MatrixXd& W, const MixedGraph& graph,
                 const Eigen::MatrixXd& X, double lambda, int q) {
  const int d = graph.num_vertices();
  if (W.rows() != d || W.cols() != d || X.cols() != d) {
    throw std::invalid_argument("Objective: dimension mismatch");
  }
  if (q != 1 && q != 2) throw std::invalid_argument("Objective: q must be 1 or 2");
  for (Vertex k = 0; k < d; ++k) {
    for (Vertex j = 0; j < d; ++j) {
      const bool on = k != j && (graph.HasDirected(k, j) ||
                                 graph.HasBidirected(k, j));
      if (!on && std::abs(W(k, j)) > 1e-9) {
        throw std::invalid_argument(
            "Objective: weight outside the graph support");
      }
    }
  }
  double loss = 0.0;
  for (Vertex j = 0; j < d; ++j) {
    Eigen::VectorXd w = W.col(j);
    w(j) = 0.0;
    const Eigen::VectorXd r = X.col(j) - X * w;
    loss += q == 2 ? r.squaredNorm() : r.cwiseAbs().sum();
  }
  return loss +
         lambda * (graph.num_directed() + 2.0 * graph.num_bidirected());
}

ColumnScores::ColumnScores(const Eigen::MatrixXd& X, int q, double big_m,
                           double lambda)
    : X_(X),
      d_(static_cast<int>(X.cols())),
      q_(q),
      big_m_(big_m),
      lambda_(lambda),
      cache_(d_),
      best_(d_) {}

const ColumnScores::Entry& ColumnScores::Get(int column,
                                             std::uint64_t support_mask) {
  auto& cache = cache_[column];
  if (auto it = cache.find(support_mask); it != cache.end()) return it->second;
  std::vector<int> support;
  for (int k = 0; k < d_; ++k) {
    if (support_mask >> k & 1U) support.push_back(k);
  }
  const ColumnFit fit = FitColumn(X_, column, support, q_, big_m_);
  Entry e;
  e.loss = fit.loss;
  e.score = fit.loss + lambda_ * static_cast<double>(support.size());
  e.weights = Eigen::VectorXd::Zero(d_);
  for (std::size_t s = 0; s < support.size(); ++s) {
    e.weights(support[s]) = fit.weights(static_cast<Eigen::Index>(s));
  }
  return cache.emplace(support_mask, std::move(e)).first->second;
}

std::pair<double, std::uint64_t> ColumnScores::BestSubset(
    int column, std::uint64_t required, std::uint64_t allowed) {
  auto& memo = best_[column];
  const SubsetKey key{required, allowed};
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const std::uint64_t free = allowed & ~required;
  std::pair<double, std::uint64_t> best;
  if (std::popcount(free) > max_free_bits) {
    best = {Get(column, allowed).loss +
                lambda_ * static_cast<double>(std::popcount(required)),
            allowed};
  } else {
    best = {std::numeric_limits<double>::infinity(), required};
    // Enumerate the submasks of `free`, starting from the empty one.
    std::uint64_t sub = 0;
    while (true) {
      const double score = Get(column, required | sub).score;
      if (score < best.first) best = {score, required | sub};
      if (sub == free) break;
      sub = (sub - free) & free;
    }
  }
  memo.emplace(key, best);
  return best;
}

namespace {

struct ColumnMasks {
  std::vector<std::uint64_t> required;
  std::vector<std::uint64_t> allowed;
};

ColumnMasks MasksOf(const PairIndex& pairs,
                    const std::vector<PairState>& assignment) {
  const int d = pairs.num_vertices();
  ColumnMasks m{std::vector<std::uint64_t>(d, 0),
                std::vector<std::uint64_t>(d, 0)};
  for (int p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs.pair(p);
    const std::uint64_t bit_a = std::uint64_t{1} << a;
    const std::uint64_t bit_b = std::uint64_t{1} << b;
    switch (assignment[p]) {
      case PairState::kUndecided:
        m.allowed[a] |= bit_b;
        m.allowed[b] |= bit_a;
        break;
      case PairState::kNone:
        break;
      case PairState::kForward:
        m.allowed[b] |= bit_a;
        m.required[b] |= bit_a;
        break;
      case PairState::kBackward:
        m.allowed[a] |= bit_b;
        m.required[a] |= bit_b;
        break;
      case PairState::kBidirected:
        m.allowed[a] |= bit_b;
        m.required[a] |= bit_b;
        m.allowed[b] |= bit_a;
        m.required[b] |= bit_a;
        break;
    }
  }
  return m;
}

}  // namespace

double NodeBound(const SearchNode& node, const Instance& instance) {
  const int d = instance.num_variables();
  const PairIndex pairs(d);
  if (static_cast<int>(node.assignment.size()) != pairs.size()) {
    throw std::invalid_argument("NodeBound: assignment size mismatch");
  }
  const ColumnMasks masks = MasksOf(pairs, node.assignment);
  double bound = 0.0;
  for (int j = 0; j < d; ++j) {
    std::vector<int> support;
    for (int k = 0; k < d; ++k) {
      if (masks.allowed[j] >> k & 1U) support.push_back(k);
    }
    bound += FitColumn(instance.data.values, j, support, instance.q,
                       instance.big_m)
                 .loss;
    bound += instance.lambda *
             static_cast<double>(std::popcount(masks.required[j]));
  }
  return bound;
}

namespace {

class BranchAndCut {
 public:
  BranchAndCut(const Instance& instance, const SolveOptions& options)
      : instance_(instance),
        options_(options),
        d_(instance.num_variables()),
        pairs_(d_),
        forbidden_(instance.forbidden.num_vertices() == 0
                       ? ForbiddenMatrix(d_)
                       : instance.forbidden),
        scores_(instance.data.values, instance.q, instance.big_m,
                instance.lambda) {}

  Solution Run();

 private:
  struct Relaxation {
    double bound = 0.0;
    std::vector<std::uint64_t> masks;
  };

  struct QueueEntry {
    double bound;
    int depth;
    std::int64_t id;
    std::vector<PairState> assignment;
  };
  struct QueueOrder {
    // Lowest bound first, deeper nodes first on ties, then creation order.
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.id > b.id;
    }
  };

  Relaxation Relax(const std::vector<PairState>& assignment);
  double Score(const std::vector<std::uint64_t>& masks);
  // Structure encoded by per-column supports, or the undecided pairs whose
  // two columns disagree.
  std::optional<MixedGraph> Candidate(const std::vector<std::uint64_t>& masks,
                                      const std::vector<PairState>& assignment,
                                      std::vector<int>& conflicts) const;
  double PairWeight(int p, const std::vector<std::uint64_t>& masks);
  int PickPair(const std::vector<int>& candidates,
               const std::vector<std::uint64_t>& masks);
  std::vector<int> UndecidedPairsOf(const LazyCut& cut,
                                    const std::vector<PairState>& a) const;
  std::vector<std::uint64_t> MasksOfGraph(const MixedGraph& g) const;
  void Offer(const MixedGraph& g, const std::vector<std::uint64_t>& masks);
  void Repair(MixedGraph g);
  double PruneTolerance() const {
    return 1e-9 * std::max(1.0, std::abs(incumbent_value_));
  }

  const Instance& instance_;
  const SolveOptions& options_;
  const int d_;
  const PairIndex pairs_;
  const ForbiddenMatrix forbidden_;
  ColumnScores scores_;
  CutPool pool_;

  double incumbent_value_ = std::numeric_limits<double>::infinity();
  MixedGraph incumbent_graph_;
  std::vector<std::uint64_t> incumbent_masks_;
};

BranchAndCut::Relaxation BranchAndCut::Relax(
    const std::vector<PairState>& assignment) {
  const ColumnMasks m = MasksOf(pairs_, assignment);
  Relaxation r;
  r.masks.resize(d_);
  for (int j = 0; j < d_; ++j) {
    if (options_.bound == BoundKind::kBestSubset) {
      const auto [value, mask] =
          scores_.BestSubset(j, m.required[j], m.allowed[j]);
      r.bound += value;
      r.masks[j] = mask;
    } else {
      r.bound += scores_.Get(j, m.allowed[j]).loss +
                 instance_.lambda *
                     static_cast<double>(std::popcount(m.required[j]));
      r.masks[j] = m.allowed[j];
    }
  }
  return r;
}

double BranchAndCut::Score(const std::vector<std::uint64_t>& masks) {
  double total = 0.0;
  for (int j = 0; j < d_; ++j) total += scores_.Get(j, masks[j]).score;
  return total;
}

std::optional<MixedGraph> BranchAndCut::Candidate(
    const std::vector<std::uint64_t>& masks,
    const std::vector<PairState>& assignment,
    std::vector<int>& conflicts) const {
  conflicts.clear();
  MixedGraph g(d_);
  for (int p = 0; p < pairs_.size(); ++p) {
    const auto [a, b] = pairs_.pair(p);
    const bool b_in_a = masks[a] >> b & 1U;  // b regresses into column a
    const bool a_in_b = masks[b] >> a & 1U;
    if (forbidden_(a, b)) {
      if (a_in_b && b_in_a) {
        g.AddBidirected(a, b);
      } else if (a_in_b || b_in_a) {
        conflicts.push_back(p);
      }
    } else {
      if (a_in_b && b_in_a) {
        conflicts.push_back(p);
      } else if (a_in_b) {
        g.AddDirected(a, b);
      } else if (b_in_a) {
        g.AddDirected(b, a);
      }
    }
  }
  for (int p : conflicts) {
    if (assignment[p] != PairState::kUndecided) {
      throw std::logic_error("relaxation contradicts a decided pair");
    }
  }
  if (!conflicts.empty()) return std::nullopt;
  return g;
}

double BranchAndCut::PairWeight(int p,
                                const std::vector<std::uint64_t>& masks) {
  const auto [a, b] = pairs_.pair(p);
  double w = 0.0;
  if (masks[b] >> a & 1U) {
    w = std::max(w, std::abs(scores_.Get(b, masks[b]).weights(a)));
  }
  if (masks[a] >> b & 1U) {
    w = std::max(w, std::abs(scores_.Get(a, masks[a]).weights(b)));
  }
  return w;
}

int BranchAndCut::PickPair(const std::vector<int>& candidates,
                           const std::vector<std::uint64_t>& masks) {
  int best = candidates.front();
  double best_w = -1.0;
  for (int p : candidates) {
    const double w = PairWeight(p, masks);
    if (w > best_w) {
      best_w = w;
      best = p;
    }
  }
  return best;
}

std::vector<int> BranchAndCut::UndecidedPairsOf(
    const LazyCut& cut, const std::vector<PairState>& a) const {
  std::vector<int> out;
  auto add = [&](Vertex u, Vertex v) {
    const int p = pairs_.index(u, v);
    if (a[p] == PairState::kUndecided &&
        std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(p);
    }
  };
  for (const Edge& e : cut.directed_terms) add(e.from, e.to);
  for (const VertexPair& b : cut.bidirected_terms) add(b.first, b.second);
  for (const Edge& e : cut.negated_directed_terms) add(e.from, e.to);
  for (const VertexPair& b : cut.negated_bidirected_terms) {
    add(b.first, b.second);
  }
  return out;
}

std::vector<std::uint64_t> BranchAndCut::MasksOfGraph(
    const MixedGraph& g) const {
  std::vector<std::uint64_t> masks(d_, 0);
  for (int j = 0; j < d_; ++j) {
    for (int k = 0; k < d_; ++k) {
      if (g.HasDirected(k, j) || g.HasBidirected(k, j)) {
        masks[j] |= std::uint64_t{1} << k;
      }
    }
  }
  return masks;
}

void BranchAndCut::Offer(const MixedGraph& g,
                         const std::vector<std::uint64_t>& masks) {
  const double value = Score(masks);
  if (value < incumbent_value_) {
    incumbent_value_ = value;
    incumbent_graph_ = g;
    incumbent_masks_ = masks;
  }
}

void BranchAndCut::Repair(MixedGraph g) {
  std::vector<std::uint64_t> masks = MasksOfGraph(g);
  const int max_rounds = g.num_directed() + g.num_bidirected() + 1;
  for (int round = 0; round < max_rounds; ++round) {
    const LazyCut* cut = pool_.FirstViolated(g);
    std::vector<LazyCut> fresh;
    if (cut == nullptr) {
      fresh = Separate(g, options_.separation);
      if (fresh.empty()) {
        Offer(g, masks);
        return;
      }
      for (const LazyCut& c : fresh) pool_.Add(c);
      cut = &fresh.front();
    }
    // Delete the cheapest edge among the cut's positive terms.
    double best_delta = std::numeric_limits<double>::infinity();
    std::optional<Edge> drop_directed;
    std::optional<VertexPair> drop_bidirected;
    for (const Edge& e : cut->directed_terms) {
      const std::uint64_t without = masks[e.to] & ~(std::uint64_t{1} << e.from);
      const double delta = scores_.Get(e.to, without).score -
                           scores_.Get(e.to, masks[e.to]).score;
      if (delta < best_delta) {
        best_delta = delta;
        drop_directed = e;
        drop_bidirected.reset();
      }
    }
    for (const VertexPair& p : cut->bidirected_terms) {
      const std::uint64_t wa = masks[p.first] & ~(std::uint64_t{1} << p.second);
      const std::uint64_t wb = masks[p.second] & ~(std::uint64_t{1} << p.first);
      const double delta = scores_.Get(p.first, wa).score -
                           scores_.Get(p.first, masks[p.first]).score +
                           scores_.Get(p.second, wb).score -
                           scores_.Get(p.second, masks[p.second]).score;
      if (delta < best_delta) {
        best_delta = delta;
        drop_bidirected = p;
        drop_directed.reset();
      }
    }
    if (drop_directed) {
      g.RemoveDirected(drop_directed->from, drop_directed->to);
    } else if (drop_bidirected) {
      g.RemoveBidirected(drop_bidirected->first, drop_bidirected->second);
    } else {
      return;
    }
    masks = MasksOfGraph(g);
  }
}

Solution BranchAndCut::Run() {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(instance_.time_limit_s));

  // The empty graph is always a MAG.
  Offer(MixedGraph(d_), std::vector<std::uint64_t>(d_, 0));

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue;
  std::int64_t next_id = 0;
  {
    std::vector<PairState> root(pairs_.size(), PairState::kUndecided);
    const double bound = Relax(root).bound;
    queue.push({bound, 0, next_id++, std::move(root)});
  }

  SolveStatus status = SolveStatus::kOptimal;
  double global_bound = incumbent_value_;
  std::int64_t explored = 0;
  std::vector<int> conflicts;

  while (!queue.empty()) {
    if (Clock::now() >= deadline) {
      status = SolveStatus::kTimeLimit;
      break;
    }
    if (options_.node_limit > 0 && explored >= options_.node_limit) {
      status = SolveStatus::kTimeLimit;
      break;
    }
    QueueEntry node = queue.top();
    queue.pop();
    if (node.bound >= incumbent_value_ - PruneTolerance()) {
      // Best-first: every remaining node is at least as bad.
      queue = {};
      break;
    }
    ++explored;
    global_bound = std::min(node.bound, incumbent_value_);
    if (options_.on_node) {
      options_.on_node({explored, global_bound, incumbent_value_,
                        MipGap(incumbent_value_, global_bound),
                        pool_.counts()});
    }
    if (instance_.gap_tol > 0 &&
        MipGap(incumbent_value_, global_bound) <= instance_.gap_tol) {
      status = SolveStatus::kGapLimit;
      break;
    }

    const Relaxation relax = Relax(node.assignment);
    std::optional<MixedGraph> candidate =
        Candidate(relax.masks, node.assignment, conflicts);

    std::vector<int> branch_on;
    if (!candidate) {
      branch_on = conflicts;
    } else {
      // A copy: Repair below grows the pool and may move its cuts.
      std::optional<LazyCut> violated;
      if (const LazyCut* pooled = pool_.FirstViolated(*candidate)) {
        violated = *pooled;
      } else {
        const std::vector<LazyCut> fresh = Separate(*candidate, options_.separation);
        for (const LazyCut& c : fresh) pool_.Add(c);
        if (!fresh.empty()) violated = fresh.front();
      }
      if (!violated) {
        Offer(*candidate, relax.masks);
        const double value = Score(relax.masks);
        if (value <= relax.bound + PruneTolerance()) continue;
        for (int p = 0; p < pairs_.size(); ++p) {
          if (node.assignment[p] == PairState::kUndecided) {
            branch_on.push_back(p);
          }
        }
        if (branch_on.empty()) continue;
      } else {
        if (options_.repair_incumbents) Repair(*candidate);
        branch_on = UndecidedPairsOf(*violated, node.assignment);
        // Every term of the violated cut is fixed: no completion survives.
        if (branch_on.empty()) continue;
      }
    }

    const int p = PickPair(branch_on, relax.masks);
    for (PairState s : AllowedStates(forbidden_, pairs_.pair(p))) {
      std::vector<PairState> child = node.assignment;
      child[p] = s;
      const double bound = Relax(child).bound;
      if (bound < incumbent_value_ - PruneTolerance()) {
        queue.push({bound, node.depth + 1, next_id++, std::move(child)});
      }
    }
  }

  Solution sol;
  sol.graph = incumbent_graph_;
  sol.objective = incumbent_value_;
  sol.status = status;
  sol.nodes_explored = explored;
  sol.cuts_added = pool_.counts();
  sol.cuts = pool_.cuts();
  if (status == SolveStatus::kOptimal) {
    sol.best_bound = incumbent_value_;
  } else {
    double open = incumbent_value_;
    while (!queue.empty()) {
      open = std::min(open, queue.top().bound);
      queue.pop();
    }
    sol.best_bound = std::min(global_bound, open);
  }
  sol.mip_gap = MipGap(sol.objective, sol.best_bound);
  sol.weights = Eigen::MatrixXd::Zero(d_, d_);
  for (int j = 0; j < d_; ++j) {
    sol.weights.col(j) = scores_.Get(j, incumbent_masks_[j]).weights;
  }
  if (!IsMag(sol.graph, options_.separation.endpoints)) {
    throw std::logic_error("solver produced a structure that is not a MAG");
  }
  return sol;
}

}  // namespace

Solution Solve(const Instance& instance, const SolveOptions& options) {
  instance.Validate();
  return BranchAndCut(instance, options).Run();
}

}  // namespace magcut
