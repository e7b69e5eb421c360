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

#ifndef MAGCUT_TOOLS_COMMANDS_H_
#define MAGCUT_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "magcut/data.h"
#include "magcut/datagen.h"
#include "magcut/io.h"
#include "magcut/solver.h"

namespace magcut::tools {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitIoFailure = 3;

// Bad flags or flag combinations; maps to kExitInvalidConfig.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SolverFlags {
  double lambda = kDefaultLambda;
  int q = 2;
  double big_m = kDefaultBigM;
  double time_limit_s = kDefaultTimeLimitSeconds;
  double gap_tol = 0.0;
  std::uint64_t seed = 0;
};

// File names written into an output directory.
inline constexpr char kDataFile[] = "data.csv";
inline constexpr char kTruthFile[] = "truth.json";
inline constexpr char kForbiddenFile[] = "forbidden.json";
inline constexpr char kSolutionFile[] = "solution.json";
inline constexpr char kLogFile[] = "solver.log";
inline constexpr char kTimingFile[] = "timing.json";
inline constexpr char kDirectedHeatmap[] = "W_directed.svg";
inline constexpr char kBidirectedHeatmap[] = "W_bidirected.svg";
inline constexpr char kMetricsFile[] = "metrics.csv";

struct GenerateConfig {
  ScenarioConfig scenario;
  fs::path out;
};

// Writes data.csv, truth.json and forbidden.json into config.out.
HiddenData RunGenerate(const GenerateConfig& config);

struct LearnConfig {
  fs::path data;
  fs::path forbidden;  // optional
  SolverFlags solver;
  fs::path out;
  bool heatmaps = true;
};

struct LearnResult {
  Solution solution;
  std::vector<std::string> names;
  double runtime_s = 0.0;
};

// Solves in memory; `log` receives one NodeLogRecord line per node.
LearnResult Learn(const Dataset& data, const ForbiddenMatrix& forbidden,
                  const SolverFlags& flags, std::ostream* log = nullptr);

// Writes solution.json, solver.log (node records, then one JSON line per
// cut), timing.json and, when asked, the two heatmaps. Timing lives in its
// own file so the other outputs are byte-identical across reruns.
LearnResult RunLearn(const LearnConfig& config, std::ostream& warnings);

struct EvalConfig {
  fs::path solution;
  fs::path truth;
  fs::path timing;  // optional; runtime_s is 0 without it
  std::vector<double> delta_grid;  // empty means DefaultDeltaGrid()
  std::string dataset = "custom";
  std::string method = "magcut";
  std::uint64_t seed = 0;
  int n = 0;
  fs::path out;  // metrics CSV, appended; header written when new
};

io::MetricsRow Evaluate(const io::SolutionFile& solution,
                        const io::GroundTruthFile& truth,
                        const std::vector<double>& delta_grid);
io::MetricsRow RunEval(const EvalConfig& config);

struct BenchConfig {
  std::vector<Family> families{Family::kEr, Family::kBf};
  std::vector<int> dims{3, 4};
  std::vector<int> samples{20, 100, 1000};
  int seeds = 10;
  std::uint64_t first_seed = 1;
  int edges_per_vertex = 1;
  SolverFlags solver;
  std::vector<double> delta_grid;
  fs::path out;
  // 0 reads MAGCUT_WORKERS, falling back to 1.
  int workers = 0;
};

struct BenchCell {
  Family family;
  int d;
  int n;
  int count = 0;
  int failures = 0;
  double shd_mean = 0, shd_std = 0;
  double f1_typed_mean = 0, f1_typed_std = 0;
  double f1_skeleton_mean = 0, f1_skeleton_std = 0;
  double gap_mean = 0;
};

// Writes runs.csv (one metrics row per run, runtime included),
// aggregate.csv (mean and standard deviation per family, d, n; no timing)
// and failures.txt.
std::vector<BenchCell> RunBench(const BenchConfig& config, std::ostream& progress);

struct DemoConfig {
  int n = 1000;
  std::uint64_t seed = 1;
  SolverFlags solver;
  fs::path out;  // optional
};

struct DemoResult {
  MixedGraph learned;
  MixedGraph learned_without_f;
  MixedGraph expected;
  std::vector<std::string> names;
};

// Berkeley scenario learned twice: with the domain F marking Gender-Admit,
// and with F = 0, where a purely directed answer is expected.
DemoResult RunDemo(const DemoConfig& config, std::ostream& report);

// f(j, k) = 1 for columns in different groups. Throws ConfigError on an
// unknown or repeated column name.
ForbiddenMatrix ForbiddenFromGroups(
    const std::vector<std::string>& columns,
    const std::vector<std::vector<std::string>>& groups);

// Diverging blue-white-red heatmap, symmetric around 0 with max |value| as
// the range.
std::string HeatmapSvg(const Eigen::MatrixXd& values,
                       const std::vector<std::string>& names,
                       const std::string& title);

// Parses "0,0.01,0.1"; throws ConfigError.
std::vector<double> ParseDoubleList(const std::string& text);
std::vector<int> ParseIntList(const std::string& text);

}  // namespace magcut::tools

#endif  // MAGCUT_TOOLS_COMMANDS_H_
