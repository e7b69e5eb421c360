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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "magcut/eval.h"

namespace magcut::tools {
namespace {

std::vector<std::string> NamesOr(const std::vector<std::string>& names, int d) {
  return names.empty() ? Dataset::DefaultNames(d) : names;
}

Instance MakeInstance(const Dataset& data, const ForbiddenMatrix& forbidden,
                      const SolverFlags& flags) {
  Instance inst;
  inst.data = data;
  inst.forbidden = forbidden;
  inst.lambda = flags.lambda;
  inst.q = flags.q;
  inst.big_m = flags.big_m;
  inst.time_limit_s = flags.time_limit_s;
  inst.gap_tol = flags.gap_tol;
  inst.seed = flags.seed;
  try {
    inst.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return inst;
}

std::string TimingJson(double runtime_s) {
  return "{\n  \"runtime_s\": " + io::FormatDouble(runtime_s) + "\n}\n";
}

double ReadTiming(const fs::path& path) {
  const std::string text = io::ReadFile(path);
  const auto key = text.find("\"runtime_s\"");
  if (key == std::string::npos) throw io::IoError("no runtime_s in " + path.string());
  const auto colon = text.find(':', key);
  if (colon == std::string::npos) throw io::IoError("bad timing file " + path.string());
  return std::strtod(text.c_str() + colon + 1, nullptr);
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample standard deviation; 0 for fewer than two values.
double StdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

int WorkersFromEnv() {
  if (const char* env = std::getenv("MAGCUT_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string Describe(const MixedGraph& g, const std::vector<std::string>& names) {
  std::ostringstream out;
  bool first = true;
  for (const Edge& e : g.DirectedEdges()) {
    out << (first ? "" : ", ") << names[e.from] << " -> " << names[e.to];
    first = false;
  }
  for (const VertexPair& p : g.BidirectedEdges()) {
    out << (first ? "" : ", ") << names[p.first] << " <-> " << names[p.second];
    first = false;
  }
  if (first) out << "(no edges)";
  return out.str();
}

}  // namespace

HiddenData RunGenerate(const GenerateConfig& config) {
  HiddenData h;
  try {
    h = MakeScenario(config.scenario);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  io::WriteFile(config.out / kDataFile, io::DatasetToCsv(h.data));
  io::WriteFile(config.out / kTruthFile, io::GroundTruthToJson(h.truth));
  io::WriteFile(config.out / kForbiddenFile,
                io::ForbiddenToJson(h.truth.forbidden, h.truth.names));
  return h;
}

LearnResult Learn(const Dataset& data, const ForbiddenMatrix& forbidden,
                  const SolverFlags& flags, std::ostream* log) {
  const Instance inst = MakeInstance(data, forbidden, flags);
  SolveOptions options;
  if (log != nullptr) {
    options.on_node = [log](const NodeLogRecord& r) { *log << r.ToString() << '\n'; };
  }
  const auto start = std::chrono::steady_clock::now();
  LearnResult out;
  out.solution = Solve(inst, options);
  out.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.names = NamesOr(data.names, data.num_variables());
  if (log != nullptr) {
    for (const LazyCut& c : out.solution.cuts) *log << "cut=" << io::CutToJson(c) << '\n';
  }
  return out;
}

LearnResult RunLearn(const LearnConfig& config, std::ostream& warnings) {
  const Dataset data = io::DatasetFromCsv(io::ReadFile(config.data));
  ForbiddenMatrix f(data.num_variables());
  if (!config.forbidden.empty()) {
    std::vector<std::string> names;
    f = io::ForbiddenFromJson(io::ReadFile(config.forbidden), &names);
    if (f.num_vertices() != data.num_variables()) {
      throw ConfigError("forbidden matrix has " + std::to_string(f.num_vertices()) +
                        " variables, data has " +
                        std::to_string(data.num_variables()));
    }
    if (names != data.names) {
      throw ConfigError("forbidden matrix names do not match the CSV header");
    }
  }
  std::ostringstream log;
  LearnResult r = Learn(data, f, config.solver, &log);
  if (!IsMag(r.solution.graph)) {
    throw std::logic_error("learned structure is not a MAG");
  }
  if (r.solution.status == SolveStatus::kTimeLimit) {
    warnings << "warning: time limit reached; returning the incumbent (gap "
             << io::FormatDouble(r.solution.mip_gap) << ")\n";
  }
  io::WriteFile(config.out / kSolutionFile, io::SolutionToJson(r.solution, r.names));
  io::WriteFile(config.out / kLogFile, log.str());
  io::WriteFile(config.out / kTimingFile, TimingJson(r.runtime_s));
  if (config.heatmaps) {
    const int d = r.solution.graph.num_vertices();
    Eigen::MatrixXd directed = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd bidirected = Eigen::MatrixXd::Zero(d, d);
    for (const Edge& e : r.solution.graph.DirectedEdges()) {
      directed(e.from, e.to) = r.solution.weights(e.from, e.to);
    }
    for (const VertexPair& p : r.solution.graph.BidirectedEdges()) {
      bidirected(p.first, p.second) = r.solution.weights(p.first, p.second);
      bidirected(p.second, p.first) = r.solution.weights(p.second, p.first);
    }
    io::WriteFile(config.out / kDirectedHeatmap,
                  HeatmapSvg(directed, r.names, "directed weights W"));
    io::WriteFile(config.out / kBidirectedHeatmap,
                  HeatmapSvg(bidirected, r.names, "bidirected weights"));
  }
  return r;
}

io::MetricsRow Evaluate(const io::SolutionFile& solution,
                        const io::GroundTruthFile& truth,
                        const std::vector<double>& delta_grid) {
  if (solution.graph.num_vertices() != truth.graph.num_vertices()) {
    throw ConfigError("solution has " + std::to_string(solution.graph.num_vertices()) +
                      " variables, truth has " +
                      std::to_string(truth.graph.num_vertices()));
  }
  const std::vector<double> grid = delta_grid.empty() ? DefaultDeltaGrid() : delta_grid;
  const ThresholdChoice best =
      BestOverThresholds(solution.weights, solution.graph, truth.graph, grid);
  io::MetricsRow row;
  row.d = truth.graph.num_vertices();
  row.shd = best.shd;
  row.f1_typed = F1(truth.graph, best.graph, F1Mode::kTyped);
  row.f1_skeleton = F1(truth.graph, best.graph, F1Mode::kSkeleton);
  row.delta = best.delta;
  row.gap = solution.gap;
  return row;
}

io::MetricsRow RunEval(const EvalConfig& config) {
  const io::SolutionFile sol = io::SolutionFromJson(io::ReadFile(config.solution));
  const io::GroundTruthFile truth =
      io::GroundTruthFromJson(io::ReadFile(config.truth));
  io::MetricsRow row = Evaluate(sol, truth, config.delta_grid);
  row.dataset = config.dataset;
  row.method = config.method;
  row.seed = config.seed;
  row.n = config.n;
  if (!config.timing.empty()) row.runtime_s = ReadTiming(config.timing);
  if (!config.out.empty()) {
    std::string content;
    if (fs::exists(config.out)) content = io::ReadFile(config.out);
    if (content.empty()) content = io::MetricsRow::Header() + "\n";
    content += row.ToCsv() + "\n";
    io::WriteFile(config.out, content);
  }
  return row;
}

std::vector<BenchCell> RunBench(const BenchConfig& config, std::ostream& progress) {
  if (config.seeds < 1) throw ConfigError("bench needs at least one seed");
  struct Job {
    Family family;
    int d;
    int n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Family f : config.families) {
    for (int d : config.dims) {
      for (int n : config.samples) {
        for (int s = 0; s < config.seeds; ++s) {
          jobs.push_back({f, d, n, config.first_seed + static_cast<std::uint64_t>(s)});
        }
      }
    }
  }
  struct Outcome {
    bool ok = false;
    io::MetricsRow row;
    std::string error;
  };
  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      Outcome& o = outcomes[i];
      try {
        ScenarioConfig sc;
        sc.family = job.family;
        sc.d = job.d;
        sc.n = job.n;
        sc.edges_per_vertex = config.edges_per_vertex;
        sc.seed = job.seed;
        const HiddenData h = MakeScenario(sc);
        const LearnResult r = Learn(h.data, h.truth.forbidden, config.solver);
        io::SolutionFile sf{r.solution.graph, r.names, r.solution.weights,
                            r.solution.objective, r.solution.mip_gap,
                            r.solution.best_bound,
                            std::string(SolveStatusName(r.solution.status))};
        io::GroundTruthFile gt{h.truth.observed_truth, h.truth.names,
                               h.truth.latent_names(), h.truth.forbidden};
        o.row = Evaluate(sf, gt, config.delta_grid);
        o.row.dataset = std::string(FamilyName(job.family));
        o.row.n = job.n;
        o.row.seed = job.seed;
        o.row.method = "magcut";
        o.row.runtime_s = r.runtime_s;
        o.ok = true;
      } catch (const std::exception& e) {
        o.error = e.what();
      }
      std::lock_guard<std::mutex> lock(progress_mu);
      progress << FamilyName(job.family) << " d=" << job.d << " n=" << job.n
               << " seed=" << job.seed << (o.ok ? " ok" : " FAILED: " + o.error)
               << '\n';
    }
  };
  const int workers = std::max(1, config.workers > 0 ? config.workers : WorkersFromEnv());
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::string runs = io::MetricsRow::Header() + "\n";
  std::string failures;
  std::vector<BenchCell> cells;
  std::size_t i = 0;
  while (i < jobs.size()) {
    BenchCell cell{jobs[i].family, jobs[i].d, jobs[i].n};
    std::vector<double> shd, f1t, f1s, gap;
    for (int s = 0; s < config.seeds; ++s, ++i) {
      const Outcome& o = outcomes[i];
      if (!o.ok) {
        ++cell.failures;
        failures += std::string(FamilyName(jobs[i].family)) + ",d=" +
                    std::to_string(jobs[i].d) + ",n=" + std::to_string(jobs[i].n) +
                    ",seed=" + std::to_string(jobs[i].seed) + ": " + o.error + "\n";
        continue;
      }
      runs += o.row.ToCsv() + "\n";
      shd.push_back(o.row.shd);
      f1t.push_back(o.row.f1_typed);
      f1s.push_back(o.row.f1_skeleton);
      gap.push_back(o.row.gap);
    }
    cell.count = static_cast<int>(shd.size());
    cell.shd_mean = Mean(shd);
    cell.shd_std = StdDev(shd);
    cell.f1_typed_mean = Mean(f1t);
    cell.f1_typed_std = StdDev(f1t);
    cell.f1_skeleton_mean = Mean(f1s);
    cell.f1_skeleton_std = StdDev(f1s);
    cell.gap_mean = Mean(gap);
    cells.push_back(cell);
  }

  if (!config.out.empty()) {
    std::string agg =
        "dataset,d,n,count,failures,shd_mean,shd_std,f1_typed_mean,f1_typed_std,"
        "f1_skeleton_mean,f1_skeleton_std,gap_mean\n";
    for (const BenchCell& c : cells) {
      agg += std::string(FamilyName(c.family)) + "," + std::to_string(c.d) + "," +
             std::to_string(c.n) + "," + std::to_string(c.count) + "," +
             std::to_string(c.failures) + "," + io::FormatDouble(c.shd_mean) + "," +
             io::FormatDouble(c.shd_std) + "," + io::FormatDouble(c.f1_typed_mean) +
             "," + io::FormatDouble(c.f1_typed_std) + "," +
             io::FormatDouble(c.f1_skeleton_mean) + "," +
             io::FormatDouble(c.f1_skeleton_std) + "," + io::FormatDouble(c.gap_mean) +
             "\n";
    }
    io::WriteFile(config.out / "runs.csv", runs);
    io::WriteFile(config.out / "aggregate.csv", agg);
    io::WriteFile(config.out / "failures.txt", failures);
  }
  return cells;
}

DemoResult RunDemo(const DemoConfig& config, std::ostream& report) {
  HiddenData h;
  try {
    h = BerkeleyDemo(config.n, config.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  DemoResult out;
  out.names = h.truth.names;
  out.expected = h.truth.observed_truth;
  out.learned = Learn(h.data, h.truth.forbidden, config.solver).solution.graph;
  out.learned_without_f =
      Learn(h.data, ForbiddenMatrix(h.data.num_variables()), config.solver)
          .solution.graph;
  report << "hidden:   Department, Ability\n"
         << "expected: " << Describe(out.expected, out.names) << '\n'
         << "learned:  " << Describe(out.learned, out.names) << '\n'
         << "learned without the Gender-Admit mark: "
         << Describe(out.learned_without_f, out.names) << '\n';
  if (!config.out.empty()) {
    io::WriteFile(config.out / kDataFile, io::DatasetToCsv(h.data));
    io::WriteFile(config.out / kTruthFile, io::GroundTruthToJson(h.truth));
    io::WriteFile(config.out / kForbiddenFile,
                  io::ForbiddenToJson(h.truth.forbidden, h.truth.names));
    io::WriteFile(config.out / "learned.json", io::GraphToJson(out.learned, out.names));
  }
  return out;
}

ForbiddenMatrix ForbiddenFromGroups(
    const std::vector<std::string>& columns,
    const std::vector<std::vector<std::string>>& groups) {
  std::map<std::string, int> index;
  for (std::size_t j = 0; j < columns.size(); ++j) index[columns[j]] = static_cast<int>(j);
  std::vector<int> group_of(columns.size(), -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const std::string& name : groups[g]) {
      auto it = index.find(name);
      if (it == index.end()) throw ConfigError("unknown column '" + name + "'");
      if (group_of[it->second] != -1) {
        throw ConfigError("column '" + name + "' appears in two groups");
      }
      group_of[it->second] = static_cast<int>(g);
    }
  }
  const int d = static_cast<int>(columns.size());
  ForbiddenMatrix f(d);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      if (group_of[a] != -1 && group_of[b] != -1 && group_of[a] != group_of[b]) {
        f.Set(a, b, true);
      }
    }
  }
  return f;
}

std::string HeatmapSvg(const Eigen::MatrixXd& values,
                       const std::vector<std::string>& names,
                       const std::string& title) {
  const int rows = static_cast<int>(values.rows());
  const int cols = static_cast<int>(values.cols());
  const int cell = 36;
  const int margin = 90;
  const int width = margin + cols * cell + 20;
  const int height = margin + rows * cell + 20;
  const double range = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();

  auto colour = [range](double v) {
    // 0 maps to white, -range to blue, +range to red.
    const double t = range > 0 ? std::clamp(v / range, -1.0, 1.0) : 0.0;
    int r = 255, g = 255, b = 255;
    if (t > 0) {
      g = b = static_cast<int>(std::lround(255 * (1 - t)));
      r = static_cast<int>(std::lround(255 - 75 * t));
    } else if (t < 0) {
      r = g = static_cast<int>(std::lround(255 * (1 + t)));
      b = static_cast<int>(std::lround(255 + 75 * t));
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"" << margin << "\" y=\"16\" font-size=\"13\">" << title
      << " (range +/-" << io::FormatDouble(range) << ")</text>\n";
  for (int j = 0; j < cols; ++j) {
    svg << "<text x=\"" << margin + j * cell + cell / 2 << "\" y=\"" << margin - 6
        << "\" text-anchor=\"middle\">" << names[j] << "</text>\n";
  }
  for (int i = 0; i < rows; ++i) {
    svg << "<text x=\"" << margin - 6 << "\" y=\"" << margin + i * cell + cell / 2 + 4
        << "\" text-anchor=\"end\">" << names[i] << "</text>\n";
    for (int j = 0; j < cols; ++j) {
      svg << "<rect x=\"" << margin + j * cell << "\" y=\"" << margin + i * cell
          << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
          << colour(values(i, j)) << "\" stroke=\"#999\"><title>"
          << io::FormatDouble(values(i, j)) << "</title></rect>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) {
      throw ConfigError("not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (double v : ParseDoubleList(text)) {
    if (v != std::floor(v)) throw ConfigError("not an integer: " + io::FormatDouble(v));
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace magcut::tools
