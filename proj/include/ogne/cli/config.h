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

#ifndef OGNE_CLI_CONFIG_H_
#define OGNE_CLI_CONFIG_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogne/engine.h"
#include "ogne/graph.h"
#include "ogne/report.h"
#include "ogne/vgne.h"

namespace ogne::cli {

// Malformed or out-of-range configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameConfig {
  std::string name;  // cournot-siv | cournot-static | quadratic
  int n = 2;         // quadratic only
  int m = 1;
  std::uint64_t seed = 0;
};

struct GraphConfig {
  std::vector<Edge> edges;       // 0-based
  std::optional<Matrix> matrix;  // "from-matrix"
};

struct RateConfig {
  std::string kind;  // constant | power | paper_cuberoot
  double c = 1.0;
  double d = 1.0;
  double eta = 0.25;
};

struct InitialConfig {
  std::string mode = "paper-eq11";  // paper-eq11 | section-iv | explicit
  std::optional<std::vector<double>> actions;
  double other_estimate = 0.0;  // explicit only
  double multiplier = 0.0;      // explicit only
};

struct OracleConfig {
  std::string mode = "compute";  // compute | load | none
  double tol = 1e-8;
  int max_iter = 100000;
  std::string path;
};

struct RunConfig {
  GameConfig game;
  GraphConfig graph;
  RateConfig rate;
  int T = 1;
  InitialConfig initial;
  OracleConfig oracle;
  std::string outputs = "out";
  std::uint64_t seed = 0;
  int kappa_samples = 256;
  MonitorSettings monitors;
};

// Parses the JSON document; throws ConfigError on missing keys, wrong types
// or unknown enumerators. Range checks are left to config_issues().
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Range and consistency problems (T >= 1, schedule parameters, known game
// factory). Empty when the config is runnable.
std::vector<std::string> config_issues(const RunConfig& config);

// Builders. They throw ConfigError when the corresponding part is invalid.
std::shared_ptr<const GameSpec> build_game(const RunConfig& config);
std::shared_ptr<const CommGraph> build_graph(const RunConfig& config, int n);
LearningRate build_rate(const RunConfig& config);
InitialCondition build_initial(const RunConfig& config, const GameSpec& game);
VgneOptions build_oracle_options(const RunConfig& config);
// Certified constants from the game when available, otherwise sampled.
Kappas resolve_kappas(const RunConfig& config, const GameSpec& game);

// Applies OGNE_OUT, then the --out / --seed flags when given.
void apply_overrides(RunConfig& config, const std::optional<std::string>& out,
                     const std::optional<std::uint64_t>& seed);

}  // namespace ogne::cli

#endif  // OGNE_CLI_CONFIG_H_
