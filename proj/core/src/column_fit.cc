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

#include "magcut/column_fit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace magcut {
namespace fit {
namespace {

enum class BoundState : std::uint8_t { kFree, kLower, kUpper };

Eigen::VectorXd MinNormSolve(const Eigen::MatrixXd& A,
                             const Eigen::VectorXd& b) {
  return A.completeOrthogonalDecomposition().solve(b);
}

}  // namespace

Eigen::VectorXd BoxLeastSquares(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b, double bound) {
  const Eigen::Index p = A.cols();
  if (p == 0) return Eigen::VectorXd(0);

  Eigen::VectorXd w = MinNormSolve(A, b);
  if (w.cwiseAbs().maxCoeff() <= bound) return w;

  // Primal active set, started from the clipped unconstrained solution.
  std::vector<BoundState> state(p, BoundState::kFree);
  for (Eigen::Index i = 0; i < p; ++i) {
    if (w(i) >= bound) {
      w(i) = bound;
      state[i] = BoundState::kUpper;
    } else if (w(i) <= -bound) {
      w(i) = -bound;
      state[i] = BoundState::kLower;
    }
  }
  const double grad_tol =
      1e-10 * std::max(1.0, A.colwise().squaredNorm().maxCoeff());
  const int max_iter = 20 * static_cast<int>(p) + 50;

  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<Eigen::Index> free_idx;
    for (Eigen::Index i = 0; i < p; ++i) {
      if (state[i] == BoundState::kFree) free_idx.push_back(i);
    }
    if (!free_idx.empty()) {
      Eigen::VectorXd rhs = b;
      for (Eigen::Index i = 0; i < p; ++i) {
        if (state[i] != BoundState::kFree) rhs -= A.col(i) * w(i);
      }
      Eigen::MatrixXd Af(A.rows(), static_cast<Eigen::Index>(free_idx.size()));
      for (std::size_t f = 0; f < free_idx.size(); ++f) {
        Af.col(static_cast<Eigen::Index>(f)) = A.col(free_idx[f]);
      }
      const Eigen::VectorXd target = MinNormSolve(Af, rhs);

      // Longest feasible step towards the subproblem minimizer.
      double alpha = 1.0;
      Eigen::Index blocking = -1;
      BoundState blocking_state = BoundState::kFree;
      for (std::size_t f = 0; f < free_idx.size(); ++f) {
        const Eigen::Index i = free_idx[f];
        const double delta = target(static_cast<Eigen::Index>(f)) - w(i);
        if (delta > 0 && w(i) + delta > bound) {
          const double a = (bound - w(i)) / delta;
          if (a < alpha) {
            alpha = a;
            blocking = i;
            blocking_state = BoundState::kUpper;
          }
        } else if (delta < 0 && w(i) + delta < -bound) {
          const double a = (-bound - w(i)) / delta;
          if (a < alpha) {
            alpha = a;
            blocking = i;
            blocking_state = BoundState::kLower;
          }
        }
      }
      for (std::size_t f = 0; f < free_idx.size(); ++f) {
        const Eigen::Index i = free_idx[f];
        w(i) += alpha * (target(static_cast<Eigen::Index>(f)) - w(i));
      }
      if (blocking >= 0) {
        w(blocking) = blocking_state == BoundState::kUpper ? bound : -bound;
        state[blocking] = blocking_state;
        continue;
      }
    }

    // Subproblem optimal; check the multipliers of the bound constraints.
    const Eigen::VectorXd grad = A.transpose() * (A * w - b);
    Eigen::Index release = -1;
    double worst = grad_tol;
    for (Eigen::Index i = 0; i < p; ++i) {
      double violation = 0.0;
      if (state[i] == BoundState::kLower) violation = -grad(i);
      if (state[i] == BoundState::kUpper) violation = grad(i);
      if (violation > worst) {
        worst = violation;
        release = i;
      }
    }
    if (release < 0) break;
    state[release] = BoundState::kFree;
  }
  return w.cwiseMax(-bound).cwiseMin(bound);
}

Eigen::VectorXd BoxLeastAbsolute(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& b, double bound) {
  const Eigen::Index p = A.cols();
  const Eigen::Index n = A.rows();
  if (p == 0) return Eigen::VectorXd(0);

  // Active constraint t is either a data row (a_i' w = b_i, index < n) or a
  // bound on variable k (index n + k) sitting at `side[t]` * bound.
  std::vector<Eigen::Index> active(p);
  std::vector<int> side(p, 0);
  {
    const Eigen::VectorXd start = MinNormSolve(A, b);
    for (Eigen::Index k = 0; k < p; ++k) {
      active[k] = n + k;
      side[k] = start(k) >= 0 ? 1 : -1;
    }
  }

  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  const double zero_tol = 1e-11 * scale;
  const double slope_tol = 1e-12 * std::max(1.0, A.cwiseAbs().sum());
  const int max_iter = 50 * static_cast<int>(p + n) + 100;

  Eigen::MatrixXd M(p, p);
  Eigen::VectorXd rhs(p);
  Eigen::VectorXd w(p);
  std::vector<bool> row_active(n, false);

  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(row_active.begin(), row_active.end(), false);
    for (Eigen::Index t = 0; t < p; ++t) {
      if (active[t] < n) {
        M.row(t) = A.row(active[t]);
        rhs(t) = b(active[t]);
        row_active[active[t]] = true;
      } else {
        M.row(t).setZero();
        M(t, active[t] - n) = 1.0;
        rhs(t) = side[t] * bound;
      }
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    const Eigen::MatrixXd Minv = lu.inverse();
    w = Minv * rhs;
    const Eigen::VectorXd r = b - A * w;

    // Steepest edge out of the current vertex.
    double best_slope = -slope_tol;
    Eigen::Index best_t = -1;
    Eigen::VectorXd best_dir;
    for (Eigen::Index t = 0; t < p; ++t) {
      const bool is_row = active[t] < n;
      for (int sigma : {1, -1}) {
        if (!is_row && sigma != -side[t]) continue;
        const Eigen::VectorXd dir = sigma * Minv.col(t);
        const Eigen::VectorXd ad = A * dir;
        double slope = is_row ? 1.0 : 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (row_active[i]) continue;
          if (std::abs(r(i)) > zero_tol) {
            slope -= (r(i) > 0 ? 1.0 : -1.0) * ad(i);
          } else {
            slope += std::abs(ad(i));
          }
        }
        if (slope < best_slope) {
          best_slope = slope;
          best_t = t;
          best_dir = dir;
        }
      }
    }
    if (best_t < 0) break;

    // Exact line search: the objective along the edge is convex and
    // piecewise linear with kinks where residuals cross zero.
    const Eigen::VectorXd ad = A * best_dir;
    double box_step = std::numeric_limits<double>::infinity();
    Eigen::Index box_var = -1;
    for (Eigen::Index k = 0; k < p; ++k) {
      const double dk = best_dir(k);
      if (std::abs(dk) < 1e-15) continue;
      const double s = dk > 0 ? (bound - w(k)) / dk : (-bound - w(k)) / dk;
      if (s < box_step) {
        box_step = std::max(0.0, s);
        box_var = k;
      }
    }
    struct Kink {
      double step;
      double weight;
      Eigen::Index row;
    };
    std::vector<Kink> kinks;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (row_active[i] || std::abs(ad(i)) < 1e-14) continue;
      if (std::abs(r(i)) <= zero_tol) continue;
      const double s = r(i) / ad(i);
      if (s > 0) kinks.push_back({s, std::abs(ad(i)), i});
    }
    std::sort(kinks.begin(), kinks.end(), [](const Kink& a, const Kink& b) {
      return a.step < b.step || (a.step == b.step && a.row < b.row);
    });
    double slope = best_slope;
    Eigen::Index entering_row = -1;
    for (const Kink& kink : kinks) {
      if (kink.step >= box_step) break;
      slope += 2.0 * kink.weight;
      if (slope >= -slope_tol) {
        entering_row = kink.row;
        break;
      }
    }
    if (entering_row >= 0) {
      active[best_t] = entering_row;
      side[best_t] = 0;
    } else if (box_var >= 0) {
      active[best_t] = n + box_var;
      side[best_t] = best_dir(box_var) > 0 ? 1 : -1;
    } else {
      break;
    }
  }
  return w.cwiseMax(-bound).cwiseMin(bound);
}

Eigen::VectorXd BoxLeastAbsoluteIrls(const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b, double bound,
                                     double tol) {
  if (A.cols() == 0) return Eigen::VectorXd(0);
  Eigen::VectorXd w = BoxLeastSquares(A, b, bound);
  const double floor = 1e-8 * std::max(1.0, b.cwiseAbs().maxCoeff());
  for (int iter = 0; iter < 500; ++iter) {
    const Eigen::VectorXd r = b - A * w;
    const Eigen::VectorXd sqrt_wt =
        r.cwiseAbs().cwiseMax(floor).cwiseInverse().cwiseSqrt();
    const Eigen::VectorXd next = BoxLeastSquares(
        sqrt_wt.asDiagonal() * A, sqrt_wt.cwiseProduct(b), bound);
    const double change = (next - w).cwiseAbs().maxCoeff();
    w = next;
    if (change < tol) break;
  }
  return w;
}

}  // namespace fit

ColumnFit FitColumn(const Eigen::MatrixXd& X, int target,
                    std::span<const int> support, int q, double bound) {
  if (q != 1 && q != 2) throw std::invalid_argument("FitColumn: q must be 1 or 2");
  if (!(bound > 0)) throw std::invalid_argument("FitColumn: bound must be > 0");
  const int d = static_cast<int>(X.cols());
  if (target < 0 || target >= d) {
    throw std::invalid_argument("FitColumn: target out of range");
  }
  Eigen::MatrixXd A(X.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t s = 0; s < support.size(); ++s) {
    const int k = support[s];
    if (k < 0 || k >= d || k == target) {
      throw std::invalid_argument("FitColumn: invalid support column");
    }
    A.col(static_cast<Eigen::Index>(s)) = X.col(k);
  }
  const Eigen::VectorXd b = X.col(target);

  ColumnFit out;
  if (q == 2) {
    out.weights = fit::BoxLeastSquares(A, b, bound);
    out.loss = (b - A * out.weights).squaredNorm();
  } else {
    out.weights = support.size() <= static_cast<std::size_t>(kExactLadMaxColumns)
                      ? fit::BoxLeastAbsolute(A, b, bound)
                      : fit::BoxLeastAbsoluteIrls(A, b, bound);
    out.loss = (b - A * out.weights).cwiseAbs().sum();
  }
  return out;
}

}  // namespace magcut
