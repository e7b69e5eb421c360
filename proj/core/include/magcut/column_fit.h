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

#ifndef MAGCUT_COLUMN_FIT_H_
#define MAGCUT_COLUMN_FIT_H_

#include <span>

#include <Eigen/Dense>

namespace magcut {

struct ColumnFit {
  // One weight per support column, in support order.
  Eigen::VectorXd weights;
  // Attained sum of |residual|^q.
  double loss = 0.0;
};

// Regresses column `target` of X on the columns in `support`, minimizing
// sum_i |x_target - X_support w|^q subject to |w| <= bound elementwise.
//
// q = 2 solves the box-constrained least-squares problem exactly (active set
// on the normal equations, minimum-norm steps when the design is rank
// deficient). q = 1 solves least absolute deviations: exactly by vertex
// descent for up to kExactLadMaxColumns columns, by iteratively reweighted
// least squares beyond that.
//
// Throws std::invalid_argument when q is not 1 or 2, bound <= 0, or the
// support contains the target or an out-of-range column.
ColumnFit FitColumn(const Eigen::MatrixXd& X, int target,
                    std::span<const int> support, int q, double bound);

inline constexpr int kExactLadMaxColumns = 10;

namespace fit {

// min ||b - A w||^2 s.t. -bound <= w <= bound.
Eigen::VectorXd BoxLeastSquares(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b, double bound);

// min sum |b - A w| s.t. -bound <= w <= bound, exact (simplex-style descent
// along the edges of the piecewise-linear objective).
Eigen::VectorXd BoxLeastAbsolute(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& b, double bound);

// Iteratively reweighted least squares for the same problem; converges to
// within `tol` in the weights.
Eigen::VectorXd BoxLeastAbsoluteIrls(const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b, double bound,
                                     double tol = 1e-8);

}  // namespace fit
}  // namespace magcut

#endif  // MAGCUT_COLUMN_FIT_H_
