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

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using namespace magcut;
using namespace magcut::tools;

void AddSolverFlags(CLI::App* app, SolverFlags& f) {
  app->add_option("--lambda", f.lambda, "penalty per edge indicator")->capture_default_str();
  app->add_option("--q", f.q, "loss exponent, 1 or 2")->capture_default_str();
  app->add_option("--big-m", f.big_m, "weight bound c")->capture_default_str();
  app->add_option("--time-limit", f.time_limit_s, "seconds")->capture_default_str();
  app->add_option("--gap-tol", f.gap_tol, "stop once the relative gap is this small")
      ->capture_default_str();
  app->add_option("--seed", f.seed, "recorded with the run")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magcut: exact learning of maximal ancestral graphs"};
  app.require_subcommand(1);

  // generate
  GenerateConfig gen;
  std::string gen_family = "er";
  auto* generate = app.add_subcommand("generate", "write a synthetic dataset");
  generate->add_option("--family", gen_family, "er, bf, 3bf or berkeley")->capture_default_str();
  generate->add_option("--d", gen.scenario.d, "variables before hiding")->capture_default_str();
  generate->add_option("--ratio", gen.scenario.edges_per_vertex, "ER edges per variable")
      ->capture_default_str();
  generate->add_option("--n", gen.scenario.n, "samples")->capture_default_str();
  generate->add_option("--p-directed", gen.scenario.p_directed)->capture_default_str();
  generate->add_option("--p-bidirected", gen.scenario.p_bidirected)->capture_default_str();
  generate->add_option("--latent-fraction", gen.scenario.latent_fraction,
                       "negative picks the family default");
  generate->add_option("--forbidden-fraction", gen.scenario.forbidden_fraction)
      ->capture_default_str();
  generate->add_option("--seed", gen.scenario.seed)->capture_default_str();
  generate->add_option("--out", gen.out, "output directory")->required();

  // learn
  LearnConfig learn;
  bool no_heatmaps = false;
  auto* learn_cmd = app.add_subcommand("learn", "learn a MAG from a CSV dataset");
  learn_cmd->add_option("--data", learn.data, "dataset CSV")->required();
  learn_cmd->add_option("--forbidden", learn.forbidden, "F JSON");
  AddSolverFlags(learn_cmd, learn.solver);
  learn_cmd->add_option("--out", learn.out, "output directory")->required();
  learn_cmd->add_flag("--no-heatmaps", no_heatmaps);

  // eval
  EvalConfig eval;
  std::string eval_grid;
  auto* eval_cmd = app.add_subcommand("eval", "score a solution against a ground truth");
  eval_cmd->add_option("--solution", eval.solution)->required();
  eval_cmd->add_option("--truth", eval.truth)->required();
  eval_cmd->add_option("--timing", eval.timing, "timing.json from learn");
  eval_cmd->add_option("--delta-grid", eval_grid, "comma separated thresholds");
  eval_cmd->add_option("--dataset", eval.dataset)->capture_default_str();
  eval_cmd->add_option("--method", eval.method)->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed)->capture_default_str();
  eval_cmd->add_option("--n", eval.n)->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "metrics CSV (appended)")->required();

  // bench
  BenchConfig bench;
  std::string bench_families = "er,bf", bench_dims = "3,4", bench_n = "20,100,1000",
              bench_grid;
  auto* bench_cmd = app.add_subcommand("bench", "generate, learn and evaluate over a grid");
  bench_cmd->add_option("--families", bench_families)->capture_default_str();
  bench_cmd->add_option("--dims", bench_dims)->capture_default_str();
  bench_cmd->add_option("--samples", bench_n)->capture_default_str();
  bench_cmd->add_option("--seeds", bench.seeds, "seeds per cell")->capture_default_str();
  bench_cmd->add_option("--first-seed", bench.first_seed)->capture_default_str();
  bench_cmd->add_option("--ratio", bench.edges_per_vertex)->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "0 reads MAGCUT_WORKERS");
  bench_cmd->add_option("--delta-grid", bench_grid);
  AddSolverFlags(bench_cmd, bench.solver);
  bench_cmd->add_option("--out", bench.out)->required();

  // demo
  DemoConfig demo;
  auto* demo_cmd = app.add_subcommand("demo", "Berkeley admissions confounding example");
  demo_cmd->add_option("--n", demo.n)->capture_default_str();
  AddSolverFlags(demo_cmd, demo.solver);
  demo_cmd->add_option("--out", demo.out);

  // forbid
  std::string forbid_data, forbid_out;
  std::vector<std::string> forbid_groups;
  auto* forbid = app.add_subcommand("forbid", "F from column groups");
  forbid->add_option("--data", forbid_data, "CSV whose header names the columns")->required();
  forbid->add_option("--group", forbid_groups, "comma separated names; repeat per group")
      ->required();
  forbid->add_option("--out", forbid_out, "F JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (*generate) {
      gen.scenario.family = ParseFamily(gen_family);
      const HiddenData h = RunGenerate(gen);
      std::cout << "wrote " << h.data.num_samples() << " samples of "
                << h.data.num_variables() << " variables to " << gen.out.string() << '\n';
    } else if (*learn_cmd) {
      learn.heatmaps = !no_heatmaps;
      const LearnResult r = RunLearn(learn, std::cerr);
      std::cout << "status " << SolveStatusName(r.solution.status) << " objective "
                << io::FormatDouble(r.solution.objective) << " gap "
                << io::FormatDouble(r.solution.mip_gap) << " nodes "
                << r.solution.nodes_explored << '\n';
    } else if (*eval_cmd) {
      if (!eval_grid.empty()) eval.delta_grid = ParseDoubleList(eval_grid);
      const io::MetricsRow row = RunEval(eval);
      std::cout << io::MetricsRow::Header() << '\n' << row.ToCsv() << '\n';
    } else if (*bench_cmd) {
      bench.families.clear();
      std::string item;
      std::istringstream fam(bench_families);
      while (std::getline(fam, item, ',')) bench.families.push_back(ParseFamily(item));
      bench.dims = ParseIntList(bench_dims);
      bench.samples = ParseIntList(bench_n);
      if (!bench_grid.empty()) bench.delta_grid = ParseDoubleList(bench_grid);
      for (const BenchCell& c : RunBench(bench, std::cerr)) {
        std::cout << FamilyName(c.family) << " d=" << c.d << " n=" << c.n
                  << " count=" << c.count << " shd=" << io::FormatDouble(c.shd_mean)
                  << "+/-" << io::FormatDouble(c.shd_std) << '\n';
      }
    } else if (*demo_cmd) {
      demo.seed = demo.solver.seed == 0 ? 1 : demo.solver.seed;
      RunDemo(demo, std::cout);
    } else if (*forbid) {
      const Dataset data = io::DatasetFromCsv(io::ReadFile(forbid_data));
      std::vector<std::vector<std::string>> groups;
      for (const std::string& g : forbid_groups) {
        std::vector<std::string> names;
        std::istringstream in(g);
        std::string name;
        while (std::getline(in, name, ',')) names.push_back(name);
        groups.push_back(names);
      }
      const ForbiddenMatrix f = ForbiddenFromGroups(data.names, groups);
      io::WriteFile(forbid_out, io::ForbiddenToJson(f, data.names));
      std::cout << "marked " << f.count() << " pairs\n";
    }
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIoFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return kExitOk;
}
