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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "brute_force.h"

namespace magcut {
namespace {

using testing::TestRng;

Eigen::MatrixXd RandomMatrix(int rows, int cols, TestRng& rng) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = z(rng);
  }
  return m;
}

// Box least squares by trying every free / upper / lower pattern.
double BoxLsByPatterns(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       double bound) {
  const int p = static_cast<int>(A.cols());
  int total = 1;
  for (int k = 0; k < p; ++k) total *= 3;
  double best = std::numeric_limits<double>::infinity();
  for (int code = 0; code < total; ++code) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    std::vector<int> free;
    int c = code;
    for (int k = 0; k < p; ++k, c /= 3) {
      if (c % 3 == 0) free.push_back(k);
      else w(k) = c % 3 == 1 ? bound : -bound;
    }
    if (!free.empty()) {
      Eigen::MatrixXd Af(A.rows(), free.size());
      for (std::size_t t = 0; t < free.size(); ++t) Af.col(t) = A.col(free[t]);
      const Eigen::VectorXd rest = b - A * w;
      const Eigen::VectorXd wf = testing::NormalEquations(Af, rest);
      for (std::size_t t = 0; t < free.size(); ++t) w(free[t]) = wf(t);
      if (w.cwiseAbs().maxCoeff() > bound) continue;
    }
    best = std::min(best, (b - A * w).squaredNorm());
  }
  return best;
}

TEST(BoxLeastSquaresTest, UnconstrainedMatchesNormalEquations) {
  TestRng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 1 + trial % 5;
    const Eigen::MatrixXd A = RandomMatrix(40, p, rng);
    const Eigen::VectorXd b = RandomMatrix(40, 1, rng);
    const Eigen::VectorXd w = fit::BoxLeastSquares(A, b, 1e6);
    EXPECT_LT((w - testing::NormalEquations(A, b)).norm(), 1e-8);
  }
}

TEST(BoxLeastSquaresTest, ActiveBoundsMatchPatternSearch) {
  TestRng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + trial % 4;
    const Eigen::MatrixXd A = RandomMatrix(30, p, rng);
    const Eigen::VectorXd b = A * Eigen::VectorXd::Constant(p, 3.0) +
                              RandomMatrix(30, 1, rng);
    const double bound = 0.5 + (trial % 3);
    const Eigen::VectorXd w = fit::BoxLeastSquares(A, b, bound);
    EXPECT_LE(w.cwiseAbs().maxCoeff(), bound + 1e-12);
    const double expected = BoxLsByPatterns(A, b, bound);
    EXPECT_NEAR((b - A * w).squaredNorm(), expected, 1e-8 * (1 + expected));
  }
}

TEST(BoxLeastSquaresTest, RankDeficientDesign) {
  TestRng rng(33);
  Eigen::MatrixXd A = RandomMatrix(25, 3, rng);
  A.col(2) = A.col(0);
  const Eigen::VectorXd b = RandomMatrix(25, 1, rng);
  const Eigen::VectorXd w = fit::BoxLeastSquares(A, b, 100.0);
  ASSERT_TRUE(w.allFinite());
  const double expected = BoxLsByPatterns(A.leftCols(2), b, 100.0);
  EXPECT_NEAR((b - A * w).squaredNorm(), expected, 1e-8 * (1 + expected));
}

TEST(LeastAbsoluteTest, MatchesVertexEnumeration) {
  TestRng rng(34);
  std::cauchy_distribution<double> heavy(0.0, 0.5);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = 1 + trial % 3;
    const Eigen::MatrixXd A = RandomMatrix(18, p, rng);
    Eigen::VectorXd b = A * Eigen::VectorXd::Constant(p, 1.5);
    for (int i = 0; i < b.size(); ++i) b(i) += heavy(rng);
    const double bound = trial % 2 ? 1.0 : 100.0;
    const Eigen::VectorXd w = fit::BoxLeastAbsolute(A, b, bound);
    EXPECT_LE(w.cwiseAbs().maxCoeff(), bound + 1e-9);
    const double expected = testing::LadByVertexEnumeration(A, b, bound);
    EXPECT_NEAR((b - A * w).cwiseAbs().sum(), expected, 1e-8 * (1 + expected));
  }
}

TEST(LeastAbsoluteTest, IrlsApproachesExact) {
  TestRng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 2 + trial % 3;
    const Eigen::MatrixXd A = RandomMatrix(60, p, rng);
    const Eigen::VectorXd b = A * Eigen::VectorXd::Ones(p) + RandomMatrix(60, 1, rng);
    const double exact = (b - A * fit::BoxLeastAbsolute(A, b, 100.0)).cwiseAbs().sum();
    const double irls =
        (b - A * fit::BoxLeastAbsoluteIrls(A, b, 100.0)).cwiseAbs().sum();
    EXPECT_GE(irls, exact - 1e-9);
    EXPECT_LE(irls, exact * (1 + 1e-3));
  }
}

TEST(FitColumnTest, SupportsAndLoss) {
  TestRng rng(36);
  const Eigen::MatrixXd X = RandomMatrix(50, 4, rng);
  const std::vector<int> empty;
  const ColumnFit none = FitColumn(X, 2, empty, 2, 100.0);
  EXPECT_EQ(none.weights.size(), 0);
  EXPECT_NEAR(none.loss, X.col(2).squaredNorm(), 1e-9);

  const std::vector<int> support{0, 3};
  const ColumnFit ls = FitColumn(X, 1, support, 2, 100.0);
  Eigen::MatrixXd A(50, 2);
  A << X.col(0), X.col(3);
  EXPECT_LT((ls.weights - testing::NormalEquations(A, X.col(1))).norm(), 1e-8);
  EXPECT_NEAR(ls.loss, (X.col(1) - A * ls.weights).squaredNorm(), 1e-9);

  const ColumnFit lad = FitColumn(X, 1, support, 1, 100.0);
  EXPECT_NEAR(lad.loss, testing::LadByVertexEnumeration(A, X.col(1), 100.0), 1e-8);
}

TEST(FitColumnTest, RejectsBadArguments) {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(5, 3);
  const std::vector<int> self{1};
  const std::vector<int> outside{3};
  const std::vector<int> ok{0};
  EXPECT_THROW(FitColumn(X, 1, self, 2, 1.0), std::invalid_argument);
  EXPECT_THROW(FitColumn(X, 1, outside, 2, 1.0), std::invalid_argument);
  EXPECT_THROW(FitColumn(X, 1, ok, 3, 1.0), std::invalid_argument);
  EXPECT_THROW(FitColumn(X, 1, ok, 2, 0.0), std::invalid_argument);
  EXPECT_THROW(FitColumn(X, 5, ok, 2, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace magcut
