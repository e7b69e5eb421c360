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

#include "magcut/io.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace magcut::io {
namespace {

using nlohmann::json;

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

json Graph(const MixedGraph& graph, const std::vector<std::string>& names) {
  json j;
  j["d"] = graph.num_vertices();
  j["names"] = names.empty() ? Dataset::DefaultNames(graph.num_vertices())
                             : names;
  json directed = json::array();
  for (const Edge& e : graph.DirectedEdges()) directed.push_back({e.from, e.to});
  json bidirected = json::array();
  for (const VertexPair& p : graph.BidirectedEdges()) {
    bidirected.push_back({p.first, p.second});
  }
  j["directed"] = directed;
  j["bidirected"] = bidirected;
  return j;
}

std::vector<std::pair<int, int>> PairList(const json& j, const char* key) {
  std::vector<std::pair<int, int>> out;
  if (!j.contains(key)) return out;
  for (const json& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2) {
      throw IoError(std::string("'") + key + "' entries must be [j, k]");
    }
    out.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return out;
}

MixedGraph GraphOf(const json& j, std::vector<std::string>* names) {
  try {
    const int d = j.at("d").get<int>();
    if (d < 0) throw IoError("negative vertex count");
    std::vector<std::string> n =
        j.contains("names") ? j.at("names").get<std::vector<std::string>>()
                            : Dataset::DefaultNames(d);
    if (static_cast<int>(n.size()) != d) {
      throw IoError("'names' does not have d entries");
    }
    std::vector<Edge> directed;
    for (auto [a, b] : PairList(j, "directed")) directed.push_back({a, b});
    std::vector<VertexPair> bidirected;
    for (auto [a, b] : PairList(j, "bidirected")) {
      bidirected.push_back(VertexPair::Of(a, b));
    }
    if (names != nullptr) *names = std::move(n);
    return MixedGraph::FromEdges(d, directed, bidirected);
  } catch (const json::exception& e) {
    throw IoError(std::string("bad graph document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("bad graph document: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw IoError(std::string("bad graph document: ") + e.what());
  }
}

json Matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd MatrixOf(const json& j, int d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    throw IoError("'W' must be a d x d array");
  }
  for (int i = 0; i < d; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != d) {
      throw IoError("'W' must be a d x d array");
    }
    for (int k = 0; k < d; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

double NumberOr(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (j.at(key).is_null()) return std::numeric_limits<double>::infinity();
  return j.at(key).get<double>();
}

json ForbiddenPairs(const ForbiddenMatrix& f) {
  json pairs = json::array();
  for (const VertexPair& p : f.Pairs()) pairs.push_back({p.first, p.second});
  return pairs;
}

ForbiddenMatrix ForbiddenOf(const json& j, int d) {
  ForbiddenMatrix f(d);
  for (auto [a, b] : PairList(j, "F")) {
    if (a < 0 || b < 0 || a >= d || b >= d || a == b) {
      throw IoError("'F' pair out of range");
    }
    f.Set(a, b, true);
  }
  return f;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string GraphToJson(const MixedGraph& graph,
                        const std::vector<std::string>& names) {
  return Dump(Graph(graph, names));
}

MixedGraph GraphFromJson(const std::string& text,
                         std::vector<std::string>* names) {
  return GraphOf(Parse(text), names);
}

std::string CutToJson(const LazyCut& cut) {
  json j;
  json e = json::array();
  for (const Edge& t : cut.directed_terms) e.push_back({t.from, t.to});
  json b = json::array();
  for (const VertexPair& t : cut.bidirected_terms) b.push_back({t.first, t.second});
  j["e"] = e;
  j["b"] = b;
  if (!cut.negated_directed_terms.empty() ||
      !cut.negated_bidirected_terms.empty()) {
    json en = json::array();
    for (const Edge& t : cut.negated_directed_terms) en.push_back({t.from, t.to});
    json bn = json::array();
    for (const VertexPair& t : cut.negated_bidirected_terms) {
      bn.push_back({t.first, t.second});
    }
    j["e_neg"] = en;
    j["b_neg"] = bn;
  }
  j["rhs"] = cut.rhs;
  j["family"] = std::string(CutFamilyName(cut.family));
  return j.dump();
}

std::string SolutionToJson(const Solution& solution,
                           const std::vector<std::string>& names) {
  json j = Graph(solution.graph, names);
  j["W"] = Matrix(solution.weights);
  j["objective"] = solution.objective;
  j["gap"] = solution.mip_gap;
  j["best_bound"] = solution.best_bound;
  j["status"] = std::string(SolveStatusName(solution.status));
  j["nodes"] = solution.nodes_explored;
  j["cuts"] = {{"cycle", solution.cuts_added.directed_cycle},
               {"almost", solution.cuts_added.almost_directed_cycle},
               {"inducing", solution.cuts_added.inducing_path}};
  return Dump(j);
}

SolutionFile SolutionFromJson(const std::string& text) {
  const json j = Parse(text);
  SolutionFile out;
  out.graph = GraphOf(j, &out.names);
  try {
    const int d = out.graph.num_vertices();
    out.weights = j.contains("W") ? MatrixOf(j.at("W"), d)
                                  : Eigen::MatrixXd::Zero(d, d);
    out.objective = NumberOr(j, "objective", 0.0);
    out.gap = NumberOr(j, "gap", 0.0);
    out.best_bound = NumberOr(j, "best_bound", out.objective);
    out.status = j.value("status", std::string("OPTIMAL"));
  } catch (const json::exception& e) {
    throw IoError(std::string("bad solution document: ") + e.what());
  }
  return out;
}

std::string GroundTruthToJson(const GroundTruth& truth) {
  json j = Graph(truth.observed_truth, truth.names);
  j["latents"] = truth.latent_names();
  j["F"] = ForbiddenPairs(truth.forbidden);
  j["W"] = Matrix(truth.observed_weights);
  return Dump(j);
}

GroundTruthFile GroundTruthFromJson(const std::string& text) {
  const json j = Parse(text);
  GroundTruthFile out;
  out.graph = GraphOf(j, &out.names);
  try {
    if (j.contains("latents")) {
      out.latents = j.at("latents").get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("bad ground truth document: ") + e.what());
  }
  out.forbidden = ForbiddenOf(j, out.graph.num_vertices());
  return out;
}

std::string ForbiddenToJson(const ForbiddenMatrix& forbidden,
                            const std::vector<std::string>& names) {
  json j;
  j["d"] = forbidden.num_vertices();
  j["names"] = names.empty() ? Dataset::DefaultNames(forbidden.num_vertices())
                             : names;
  j["F"] = ForbiddenPairs(forbidden);
  return Dump(j);
}

ForbiddenMatrix ForbiddenFromJson(const std::string& text,
                                  std::vector<std::string>* names) {
  const json j = Parse(text);
  try {
    const int d = j.at("d").get<int>();
    if (names != nullptr) {
      *names = j.contains("names")
                   ? j.at("names").get<std::vector<std::string>>()
                   : Dataset::DefaultNames(d);
    }
    return ForbiddenOf(j, d);
  } catch (const json::exception& e) {
    throw IoError(std::string("bad forbidden document: ") + e.what());
  }
}

void WriteCsv(std::ostream& out, const Dataset& data) {
  const std::vector<std::string> names =
      data.names.empty() ? Dataset::DefaultNames(data.num_variables())
                         : data.names;
  for (std::size_t j = 0; j < names.size(); ++j) {
    out << (j ? "," : "") << names[j];
  }
  out << '\n';
  for (int i = 0; i < data.num_samples(); ++i) {
    for (int j = 0; j < data.num_variables(); ++j) {
      out << (j ? "," : "") << FormatDouble(data.values(i, j));
    }
    out << '\n';
  }
}

std::string DatasetToCsv(const Dataset& data) {
  std::ostringstream out;
  WriteCsv(out, data);
  return out.str();
}

Dataset ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  Dataset data;
  data.names = SplitCsvLine(line);
  const std::size_t d = data.names.size();
  if (d == 0) throw IoError("CSV header has no columns");
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != d) {
      throw IoError("CSV line " + std::to_string(line_no) + " has " +
                    std::to_string(cells.size()) + " cells, expected " +
                    std::to_string(d));
    }
    std::vector<double> row;
    for (const std::string& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size()) {
        throw IoError("CSV line " + std::to_string(line_no) +
                      ": not a number '" + c + "'");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  data.values.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return data;
}

Dataset DatasetFromCsv(const std::string& text) {
  std::istringstream in(text);
  return ReadCsv(in);
}

std::string MetricsRow::Header() {
  return "dataset,d,n,seed,method,shd,f1_typed,f1_skeleton,delta,runtime_s,gap";
}

std::string MetricsRow::ToCsv() const {
  std::ostringstream out;
  out << dataset << ',' << d << ',' << n << ',' << seed << ',' << method << ','
      << FormatDouble(shd) << ',' << FormatDouble(f1_typed) << ','
      << FormatDouble(f1_skeleton) << ',' << FormatDouble(delta) << ','
      << FormatDouble(runtime_s) << ',' << FormatDouble(gap);
  return out.str();
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace magcut::io
