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

#include "magcut/data.h"

#include <stdexcept>

namespace magcut {

std::vector<std::string> Dataset::DefaultNames(int d) {
  std::vector<std::string> names;
  names.reserve(d);
  for (int j = 0; j < d; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

ForbiddenMatrix::ForbiddenMatrix(int num_vertices)
    : n_(num_vertices),
      cells_(static_cast<std::size_t>(num_vertices) * num_vertices, 0) {
  if (num_vertices < 0) {
    throw std::invalid_argument("ForbiddenMatrix: negative size");
  }
}

ForbiddenMatrix ForbiddenMatrix::AllPairs(int num_vertices) {
  ForbiddenMatrix f(num_vertices);
  for (Vertex a = 0; a < num_vertices; ++a) {
    for (Vertex b = a + 1; b < num_vertices; ++b) f.Set(a, b, true);
  }
  return f;
}

void ForbiddenMatrix::Set(Vertex a, Vertex b, bool forbidden) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) {
    throw std::out_of_range("ForbiddenMatrix: vertex out of range");
  }
  if (a == b) {
    if (forbidden) throw std::invalid_argument("ForbiddenMatrix: diagonal");
    return;
  }
  const std::uint8_t v = forbidden ? 1 : 0;
  cells_[static_cast<std::size_t>(a) * n_ + b] = v;
  cells_[static_cast<std::size_t>(b) * n_ + a] = v;
}

std::vector<VertexPair> ForbiddenMatrix::Pairs() const {
  std::vector<VertexPair> out;
  for (Vertex a = 0; a < n_; ++a) {
    for (Vertex b = a + 1; b < n_; ++b) {
      if ((*this)(a, b)) out.push_back({a, b});
    }
  }
  return out;
}

}  // namespace magcut
