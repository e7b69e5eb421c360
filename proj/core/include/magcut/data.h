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

#ifndef MAGCUT_DATA_H_
#define MAGCUT_DATA_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magcut/graph.h"

namespace magcut {

// n x d sample matrix with one name per column.
struct Dataset {
  Eigen::MatrixXd values;
  std::vector<std::string> names;

  int num_samples() const { return static_cast<int>(values.rows()); }
  int num_variables() const { return static_cast<int>(values.cols()); }

  // Fills in x0, x1, ... when names are missing.
  static std::vector<std::string> DefaultNames(int d);
};

// Symmetric binary matrix F with zero diagonal. f(j, k) = 1 declares that
// neither j -> k nor k -> j is allowed; only j <-> k or no edge remains.
class ForbiddenMatrix {
 public:
  ForbiddenMatrix() = default;
  explicit ForbiddenMatrix(int num_vertices);

  static ForbiddenMatrix AllPairs(int num_vertices);

  int num_vertices() const { return n_; }
  bool operator()(Vertex a, Vertex b) const {
    return cells_[static_cast<std::size_t>(a) * n_ + b] != 0;
  }
  void Set(Vertex a, Vertex b, bool forbidden);

  std::vector<VertexPair> Pairs() const;
  int count() const { return static_cast<int>(Pairs().size()); }

  friend bool operator==(const ForbiddenMatrix&, const ForbiddenMatrix&) =
      default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> cells_;
};

}  // namespace magcut

#endif  // MAGCUT_DATA_H_
