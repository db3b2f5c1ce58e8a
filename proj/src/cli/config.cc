// Copyright 2026 The ogne Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ogne/cli/config.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ogne/benchmarks.h"

namespace ogne::cli {

namespace {

using nlohmann::json;

void RejectUnknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!known.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

const json& Section(const json& root, const char* key) {
  if (!root.contains(key)) throw ConfigError(std::string("missing section '") + key + "'");
  const json& s = root.at(key);
  if (!s.is_object()) throw ConfigError(std::string("'") + key + "' must be an object");
  return s;
}

GameConfig ParseGame(const json& j) {
  RejectUnknown(j, {"name", "n", "m", "seed"}, "game");
  GameConfig g;
  g.name = j.at("name").get<std::string>();
  Read(j, "n", g.n);
  Read(j, "m", g.m);
  Read(j, "seed", g.seed);
  // Compact form "quadratic(n,m,seed)".
  int n = 0, m = 0;
  unsigned long long seed = 0;
  char tail = 0;
  if (g.name.rfind("quadratic(", 0) == 0) {
    if (std::sscanf(g.name.c_str(), "quadratic(%d,%d,%llu%c", &n, &m, &seed, &tail) != 4 ||
        tail != ')')
      throw ConfigError("game: expected quadratic(n,m,seed), got '" + g.name + "'");
    g.name = "quadratic";
    g.n = n;
    g.m = m;
    g.seed = seed;
  }
  return g;
}

GraphConfig ParseGraph(const json& j) {
  RejectUnknown(j, {"edges", "matrix"}, "graph");
  if (j.contains("edges") == j.contains("matrix"))
    throw ConfigError("graph: give exactly one of 'edges' or 'matrix'");
  GraphConfig g;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("graph: edges are [i, j] pairs");
      g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  } else {
    const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    const int n = static_cast<int>(rows.size());
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) throw ConfigError("graph: matrix must be square");
      for (int k = 0; k < n; ++k) a(i, k) = rows[i][k];
    }
    g.matrix = a;
  }
  return g;
}

RateConfig ParseRate(const json& j) {
  RejectUnknown(j, {"kind", "c", "d", "eta"}, "rate");
  RateConfig r;
  r.kind = j.at("kind").get<std::string>();
  Read(j, "c", r.c);
  Read(j, "d", r.d);
  Read(j, "eta", r.eta);
  return r;
}

InitialConfig ParseInitial(const json& j) {
  RejectUnknown(j, {"mode", "actions", "other_estimate", "multiplier"}, "initial");
  InitialConfig c;
  Read(j, "mode", c.mode);
  if (j.contains("actions")) c.actions = j.at("actions").get<std::vector<double>>();
  Read(j, "other_estimate", c.other_estimate);
  Read(j, "multiplier", c.multiplier);
  if (c.mode != "paper-eq11" && c.mode != "section-iv" && c.mode != "explicit")
    throw ConfigError("initial: unknown mode '" + c.mode + "'");
  return c;
}

OracleConfig ParseOracle(const json& j) {
  RejectUnknown(j, {"mode", "tol", "max_iter", "path"}, "oracle");
  OracleConfig o;
  Read(j, "mode", o.mode);
  Read(j, "tol", o.tol);
  Read(j, "max_iter", o.max_iter);
  Read(j, "path", o.path);
  if (o.mode != "compute" && o.mode != "load" && o.mode != "none")
    throw ConfigError("oracle: unknown mode '" + o.mode + "'");
  return o;
}

MonitorSettings ParseMonitors(const json& j) {
  RejectUnknown(j, {"lemma1", "lemma2_i", "lemma2_ii", "lemma2_iii", "lemma2_iv"}, "monitors");
  MonitorSettings m;
  Read(j, "lemma1", m.lemma1);
  Read(j, "lemma2_i", m.lemma2_i);
  Read(j, "lemma2_ii", m.lemma2_ii);
  Read(j, "lemma2_iii", m.lemma2_iii);
  Read(j, "lemma2_iv", m.lemma2_iv);
  return m;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  try {
    RejectUnknown(root,
                  {"game", "graph", "rate", "T", "initial", "oracle", "outputs", "seed",
                   "kappa_samples", "monitors"},
                  "config");
    RunConfig c;
    c.game = ParseGame(Section(root, "game"));
    c.graph = ParseGraph(Section(root, "graph"));
    c.rate = ParseRate(Section(root, "rate"));
    if (!root.contains("T")) throw ConfigError("missing 'T'");
    c.T = root.at("T").get<int>();
    if (root.contains("initial")) c.initial = ParseInitial(Section(root, "initial"));
    if (root.contains("oracle")) c.oracle = ParseOracle(Section(root, "oracle"));
    if (root.contains("monitors")) c.monitors = ParseMonitors(Section(root, "monitors"));
    Read(root, "outputs", c.outputs);
    Read(root, "seed", c.seed);
    Read(root, "kappa_samples", c.kappa_samples);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::string> config_issues(const RunConfig& c) {
  std::vector<std::string> issues;
  const std::string& g = c.game.name;
  if (g != "cournot-siv" && g != "cournot-static" && g != "quadratic")
    issues.push_back("game: unknown factory '" + g + "'");
  if (g == "quadratic" && (c.game.n < 2 || c.game.m < 1))
    issues.push_back("game: quadratic needs n >= 2 and m >= 1");
  if (c.T < 1) issues.push_back("T must be >= 1");
  const RateConfig& r = c.rate;
  if (r.kind == "constant") {
    if (!(r.c >= 0.0 && r.c <= 1.0)) issues.push_back("rate: constant c must lie in [0, 1]");
  } else if (r.kind == "power") {
    if (!(r.c > 0.0 && r.d > 0.0)) issues.push_back("rate: power needs c > 0 and d > 0");
    if (!(r.eta > 0.0 && r.eta < 0.5)) issues.push_back("rate: power eta must lie in (0, 1/2)");
  } else if (r.kind == "paper_cuberoot") {
    if (!(r.c > 0.0 && r.d > 0.0)) issues.push_back("rate: paper_cuberoot needs c > 0 and d > 0");
  } else {
    issues.push_back("rate: unknown kind '" + r.kind + "'");
  }
  if (c.initial.mode == "explicit" && !c.initial.actions)
    issues.push_back("initial: explicit mode needs 'actions'");
  if (c.oracle.mode == "compute" && !(c.oracle.tol > 0.0 && c.oracle.max_iter >= 1))
    issues.push_back("oracle: tol must be > 0 and max_iter >= 1");
  if (c.oracle.mode == "load" && c.oracle.path.empty())
    issues.push_back("oracle: load mode needs 'path'");
  if (c.kappa_samples < 1) issues.push_back("kappa_samples must be >= 1");
  return issues;
}

std::shared_ptr<const GameSpec> build_game(const RunConfig& c) {
  try {
    if (c.game.name == "cournot-siv") return std::make_shared<const GameSpec>(cournot_game());
    if (c.game.name == "cournot-static")
      return std::make_shared<const GameSpec>(static_cournot_game());
    if (c.game.name == "quadratic")
      return random_quadratic_game(c.game.n, c.game.m, c.game.seed).spec();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("game: ") + e.what());
  }
  throw ConfigError("game: unknown factory '" + c.game.name + "'");
}

std::shared_ptr<const CommGraph> build_graph(const RunConfig& c, int n) {
  try {
    if (c.graph.matrix) {
      if (c.graph.matrix->rows() != n) throw ConfigError("matrix size differs from player count");
      return std::make_shared<const CommGraph>(CommGraph::FromMatrix(*c.graph.matrix));
    }
    return std::make_shared<const CommGraph>(CommGraph::Metropolis(c.graph.edges, n));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("graph: ") + e.what());
  }
}

LearningRate build_rate(const RunConfig& c) {
  for (const std::string& issue : config_issues(c))
    if (issue.rfind("rate:", 0) == 0) throw ConfigError(issue);
  const RateConfig& r = c.rate;
  if (r.kind == "constant") return LearningRate::Constant(r.c);
  if (r.kind == "power") return LearningRate::Power(r.c, r.d, r.eta);
  return LearningRate::PaperCuberoot(r.c, r.d);
}

InitialCondition build_initial(const RunConfig& c, const GameSpec& game) {
  Vector x;
  if (c.initial.actions) {
    const auto& a = *c.initial.actions;
    if (static_cast<int>(a.size()) != game.dimension())
      throw ConfigError("initial: expected " + std::to_string(game.dimension()) + " actions");
    x = Eigen::Map<const Vector>(a.data(), static_cast<Eigen::Index>(a.size()));
  } else if (game.default_initial_actions()) {
    x = *game.default_initial_actions();
  } else {
    x = game.feasible_point();
  }
  if (!game.InPrivateSets(x)) throw ConfigError("initial: actions leave the private sets");
  if (c.initial.mode == "section-iv") return InitialCondition::SectionIV(x);
  if (c.initial.mode == "explicit") return {x, c.initial.other_estimate, c.initial.multiplier};
  return InitialCondition::Algorithm(x);
}

VgneOptions build_oracle_options(const RunConfig& c) {
  VgneOptions o;
  o.tol = c.oracle.tol;
  o.max_iter = c.oracle.max_iter;
  return o;
}

Kappas resolve_kappas(const RunConfig& c, const GameSpec& game) {
  if (game.kappa()) return *game.kappa();
  return estimate_kappas(game, c.kappa_samples, c.seed, RoundRange{1, std::max(c.T, 1)});
}

void apply_overrides(RunConfig& c, const std::optional<std::string>& out,
                     const std::optional<std::uint64_t>& seed) {
  if (const char* env = std::getenv("OGNE_OUT"); env && *env) c.outputs = env;
  if (out) c.outputs = *out;
  if (seed) c.seed = *seed;
}

}  // namespace ogne::cli
