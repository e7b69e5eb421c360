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

#ifndef MAGCUT_IO_H_
#define MAGCUT_IO_H_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magcut/data.h"
#include "magcut/datagen.h"
#include "magcut/graph.h"
#include "magcut/separation.h"
#include "magcut/solver.h"

// File formats. JSON documents are returned and accepted as text; all
// writers are deterministic for identical inputs.
namespace magcut::io {

// Unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// printf("%.9g").
std::string FormatDouble(double value);

// {"d", "names", "directed": [[j,k]], "bidirected": [[j,k]] (j < k)}.
std::string GraphToJson(const MixedGraph& graph,
                        const std::vector<std::string>& names);
MixedGraph GraphFromJson(const std::string& text,
                         std::vector<std::string>* names = nullptr);

// {"e": [[j,k]], "b": [[j,k]], "rhs", "family"} plus "e_neg" and "b_neg"
// when the cut carries negated endpoint terms.
std::string CutToJson(const LazyCut& cut);

// Graph document plus "W", "objective", "gap", "status", "best_bound",
// "nodes" and "cuts".
std::string SolutionToJson(const Solution& solution,
                           const std::vector<std::string>& names);

struct SolutionFile {
  MixedGraph graph;
  std::vector<std::string> names;
  Eigen::MatrixXd weights;
  double objective = 0.0;
  double gap = 0.0;
  double best_bound = 0.0;
  std::string status;
};
SolutionFile SolutionFromJson(const std::string& text);

// Graph document of observed_truth plus "latents" (names), "F" (pairs) and
// "W" (observed weights).
std::string GroundTruthToJson(const GroundTruth& truth);

struct GroundTruthFile {
  MixedGraph graph;
  std::vector<std::string> names;
  std::vector<std::string> latents;
  ForbiddenMatrix forbidden;
};
GroundTruthFile GroundTruthFromJson(const std::string& text);

// {"d", "names", "F": [[j,k]]}.
std::string ForbiddenToJson(const ForbiddenMatrix& forbidden,
                            const std::vector<std::string>& names);
ForbiddenMatrix ForbiddenFromJson(const std::string& text,
                                  std::vector<std::string>* names = nullptr);

// Header of names, one row per sample, 9 significant digits.
void WriteCsv(std::ostream& out, const Dataset& data);
std::string DatasetToCsv(const Dataset& data);
Dataset ReadCsv(std::istream& in);
Dataset DatasetFromCsv(const std::string& text);

struct MetricsRow {
  std::string dataset;
  int d = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::string method;
  double shd = 0.0;
  double f1_typed = 0.0;
  double f1_skeleton = 0.0;
  double delta = 0.0;
  double runtime_s = 0.0;
  double gap = 0.0;

  static std::string Header();
  std::string ToCsv() const;
};

std::string ReadFile(const std::filesystem::path& path);
// Creates missing parent directories.
void WriteFile(const std::filesystem::path& path, const std::string& content);

}  // namespace magcut::io

#endif  // MAGCUT_IO_H_
