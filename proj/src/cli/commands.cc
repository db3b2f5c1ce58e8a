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

#include "ogne/cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <random>

#include "json.hpp"
#include "ogne/cli/svg_chart.h"
#include "ogne/csv.h"

namespace ogne::cli {

namespace {

namespace fs = std::filesystem;

// Progress messages on stderr. OGNE_LOG_LEVEL: quiet | info (default) | debug.
class Log {
 public:
  Log(std::ostream& err, bool quiet) : err_(err) {
    const char* env = std::getenv("OGNE_LOG_LEVEL");
    const std::string level = env ? env : "info";
    level_ = level == "quiet" ? 0 : level == "debug" ? 2 : 1;
    if (quiet) level_ = 0;
  }
  void Info(const std::string& msg) const {
    if (level_ >= 1) err_ << "ogne: " << msg << '\n';
  }
  void Debug(const std::string& msg) const {
    if (level_ >= 2) err_ << "ogne: " << msg << '\n';
  }

 private:
  std::ostream& err_;
  int level_ = 1;
};

int Fail(std::ostream& err, ExitCode code, const std::string& kind, const std::string& msg) {
  nlohmann::ordered_json j;
  j["error"] = {{"code", static_cast<int>(code)}, {"kind", kind}, {"message", msg}};
  err << j.dump() << '\n';
  return code;
}

RunConfig LoadWithOverrides(const std::string& path, const CommandOptions& options) {
  RunConfig config = load_config(path);
  apply_overrides(config, options.out, options.seed);
  return config;
}

void RequireRunnable(const RunConfig& config) {
  const auto issues = config_issues(config);
  if (!issues.empty()) throw ConfigError(issues.front());
}

std::shared_ptr<const GameSpec> Game(const RunConfig& config) {
  try {
    return build_game(config);
  } catch (const ConfigError& e) {
    throw CommandError(kExitInvalidConfig, "invalid_config", e.what());
  }
}

void WriteOut(const fs::path& path, const std::string& contents) {
  try {
    WriteFileAtomic(path.string(), contents);
  } catch (const std::exception& e) {
    throw CommandError(kExitIoError, "io", e.what());
  }
}

void CheckTrace(const VgneTrace& trace, int T) {
  if (trace.length() < T)
    throw CommandError(kExitOracleFailure, "oracle",
                       "oracle trace has " + std::to_string(trace.length()) +
                           " rounds, need " + std::to_string(T));
  for (int t = 1; t <= T; ++t) {
    if (!trace.at(t).converged())
      throw CommandError(kExitOracleFailure, "oracle",
                         "oracle did not converge at round " + std::to_string(t) + " (" +
                             ToString(trace.at(t).status) + ", residual " +
                             FormatDouble(trace.at(t).residual) + ")");
  }
}

}  // namespace

VgneTrace execute_oracle(const RunConfig& config) {
  try {
    RequireRunnable(config);
  } catch (const ConfigError& e) {
    throw CommandError(kExitInvalidConfig, "invalid_config", e.what());
  }
  const auto game = Game(config);
  try {
    return solve_trace(*game, config.T, build_oracle_options(config));
  } catch (const std::exception& e) {
    throw CommandError(kExitOracleFailure, "oracle", e.what());
  }
}

RunArtifacts execute_run(const RunConfig& config) {
  std::shared_ptr<const GameSpec> game;
  std::shared_ptr<const CommGraph> graph;
  LearningRate rate = LearningRate::Constant(0.0);
  InitialCondition init;
  try {
    RequireRunnable(config);
    game = build_game(config);
    graph = build_graph(config, game->n());
    rate = build_rate(config);
    init = build_initial(config, *game);
  } catch (const ConfigError& e) {
    throw CommandError(kExitInvalidConfig, "invalid_config", e.what());
  }

  RunArtifacts artifacts;
  if (config.oracle.mode == "compute") {
    auto trace = std::make_shared<VgneTrace>(execute_oracle(config));
    artifacts.trace_computed = true;
    artifacts.trace = trace;
  } else if (config.oracle.mode == "load") {
    try {
      artifacts.trace = std::make_shared<const VgneTrace>(
          read_trace_csv(config.oracle.path, game->dimension(), game->r(), config.oracle.tol));
    } catch (const std::exception& e) {
      throw CommandError(kExitOracleFailure, "oracle", e.what());
    }
  }
  if (artifacts.trace) CheckTrace(*artifacts.trace, config.T);

  RecorderOptions rec;
  rec.kappas = resolve_kappas(config, *game);
  rec.monitors = config.monitors;
  rec.zero_initial_estimates = init.other_estimate == 0.0 && init.multiplier == 0.0;
  rec.trace = artifacts.trace;
  EngineState state = init_state(game, graph, rate, init);
  artifacts.report = simulate(std::move(state), config.T, rec);
  return artifacts;
}

int cmd_run(const std::string& config_path, const CommandOptions& options, std::ostream& out,
            std::ostream& err) {
  const Log log(err, options.quiet);
  try {
    const RunConfig config = LoadWithOverrides(config_path, options);
    log.Info("running " + config.game.name + " for " + std::to_string(config.T) + " rounds");
    const RunArtifacts artifacts = execute_run(config);
    const fs::path dir(config.outputs);
    WriteOut(dir / "report.csv", report_csv(artifacts.report));
    WriteOut(dir / "summary.json", summary_json(artifacts.report));
    if (artifacts.trace_computed) {
      try {
        write_trace_csv(*artifacts.trace, (dir / "vgne_trace.csv").string());
      } catch (const std::exception& e) {
        throw CommandError(kExitIoError, "io", e.what());
      }
    }
    const RunReport& report = artifacts.report;
    if (!report.complete)
      return Fail(err, kExitEngineFailure, "engine", report.error);
    if (report.summary.hard_failure) {
      const MonitorEvent& first = report.monitor_failures.front();
      return Fail(err, kExitMonitorFailure, "monitor",
                  first.monitor + " bound violated at round " + std::to_string(first.t) +
                      " (slack " + FormatDouble(first.slack) + ")");
    }
    if (!report.monitor_failures.empty())
      log.Info(std::to_string(report.monitor_failures.size()) +
               " monitor violations with estimated constants (not fatal)");
    log.Info("wrote " + (dir / "report.csv").string());
    if (!options.quiet) out << (dir / "summary.json").string() << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    return Fail(err, kExitInvalidConfig, "invalid_config", e.what());
  } catch (const CommandError& e) {
    return Fail(err, e.code(), e.kind(), e.what());
  }
}

int cmd_oracle(const std::string& config_path, const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  const Log log(err, options.quiet);
  try {
    const RunConfig config = LoadWithOverrides(config_path, options);
    log.Info("solving " + std::to_string(config.T) + " rounds of " + config.game.name);
    const VgneTrace trace = execute_oracle(config);
    const fs::path path = fs::path(config.outputs) / "vgne_trace.csv";
    try {
      write_trace_csv(trace, path.string());
    } catch (const std::exception& e) {
      throw CommandError(kExitIoError, "io", e.what());
    }
    CheckTrace(trace, config.T);
    if (!options.quiet) out << path.string() << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    return Fail(err, kExitInvalidConfig, "invalid_config", e.what());
  } catch (const CommandError& e) {
    return Fail(err, e.code(), e.kind(), e.what());
  }
}

namespace {

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<int> Rounds(int T) {
  std::vector<int> r{1, std::max(1, T / 2), std::max(1, T)};
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

Vector RandomPoint(const GameSpec& game, std::mt19937_64& rng) {
  Vector x(game.dimension());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < game.n(); ++i) {
    const BoxSet& box = game.private_set(i);
    for (int k = 0; k < game.m(); ++k)
      x[i * game.m() + k] = box.lower()[k] + u(rng) * (box.upper()[k] - box.lower()[k]);
  }
  return x;
}

Check GradientCheck(const GameSpec& game, int T, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t : Rounds(T)) {
    for (int s = 0; s < 8; ++s) {
      const Vector x = RandomPoint(game, rng);
      for (int i = 0; i < game.n(); ++i) {
        const Vector g = game.Gradient(i, t, x);
        for (int k = 0; k < game.m(); ++k) {
          const int idx = i * game.m() + k;
          const double h = 1e-5 * std::max(1.0, std::abs(x[idx]));
          Vector xp = x, xm = x;
          xp[idx] += h;
          xm[idx] -= h;
          const double fd = (game.Cost(i, t, xp) - game.Cost(i, t, xm)) / (2 * h);
          worst = std::max(worst, std::abs(fd - g[k]) / std::max(1.0, std::abs(g[k])));
        }
      }
    }
  }
  return {"gradient finite differences", worst <= 1e-5,
          "max relative error " + FormatDouble(worst)};
}

Check MonotonicityCheck(const GameSpec& game, int T, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  const double mu = game.mu().value_or(0.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int t : Rounds(T)) {
    for (int s = 0; s < 64; ++s) {
      const Vector x = RandomPoint(game, rng), z = RandomPoint(game, rng);
      const double d2 = (x - z).squaredNorm();
      if (d2 == 0.0) continue;
      const double inner = (game.PseudoGradient(t, x) - game.PseudoGradient(t, z)).dot(x - z);
      worst = std::min(worst, inner / d2);
    }
  }
  return {"strong monotonicity (mu = " + FormatDouble(mu) + ")", worst >= mu - 1e-9,
          "min sampled ratio " + FormatDouble(worst)};
}

std::vector<Check> RunChecks(const RunConfig& config) {
  std::vector<Check> checks;
  const auto issues = config_issues(config);
  if (issues.empty()) checks.push_back({"config ranges", true, "ok"});
  for (const auto& issue : issues) checks.push_back({"config ranges", false, issue});

  std::shared_ptr<const GameSpec> game;
  try {
    game = build_game(config);
    checks.push_back({"game factory", true, game->name()});
  } catch (const ConfigError& e) {
    checks.push_back({"game factory", false, e.what()});
    return checks;
  }
  const int n = game->n();

  if (config.graph.matrix) {
    const bool connected = config.graph.matrix->rows() == n && is_connected(*config.graph.matrix);
    checks.push_back({"graph connected", connected, connected ? "ok" : "not connected"});
  } else {
    Matrix adj = Matrix::Identity(n, n);
    bool in_range = true;
    for (auto [a, b] : config.graph.edges) {
      if (a < 0 || b < 0 || a >= n || b >= n) {
        in_range = false;
        continue;
      }
      adj(a, b) = adj(b, a) = 1.0;
    }
    const bool connected = in_range && is_connected(adj);
    checks.push_back({"graph connected", connected,
                      !in_range ? "edge index out of range" : connected ? "ok" : "not connected"});
  }
  try {
    const auto graph = build_graph(config, n);
    checks.push_back({"graph weights", true,
                      "doubly stochastic; lambda " + FormatDouble(graph->lambda()) + ", sigma2 " +
                          FormatDouble(graph->sigma2())});
  } catch (const ConfigError& e) {
    checks.push_back({"graph weights", false, e.what()});
  }

  checks.push_back(GradientCheck(*game, config.T, config.seed));
  checks.push_back(MonotonicityCheck(*game, config.T, config.seed));
  checks.push_back({"slater point", true, "feasible point validated by the game"});
  try {
    build_initial(config, *game);
    checks.push_back({"initial actions feasible", true, "within private sets"});
  } catch (const ConfigError& e) {
    checks.push_back({"initial actions feasible", false, e.what()});
  }
  return checks;
}

}  // namespace

int cmd_validate(const std::string& config_path, const CommandOptions& options, std::ostream& out,
                 std::ostream& err) {
  RunConfig config;
  try {
    config = LoadWithOverrides(config_path, options);
  } catch (const ConfigError& e) {
    return Fail(err, kExitInvalidConfig, "invalid_config", e.what());
  }
  const std::vector<Check> checks = RunChecks(config);
  bool all = true;
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "check" << "  status  detail\n";
  for (const auto& c : checks) {
    all = all && c.pass;
    out << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
        << (c.pass ? "PASS  " : "FAIL  ") << "  " << c.detail << '\n';
  }
  return all ? kExitOk : kExitValidateFailed;
}

int cmd_plot(const std::string& report_path, const CommandOptions& options, std::ostream& out,
             std::ostream& err) {
  CsvTable table;
  try {
    table = ReadCsv(report_path);
  } catch (const std::exception& e) {
    return Fail(err, kExitIoError, "io", e.what());
  }
  const int tcol = table.Column("t"), gcol = table.Column("R_g");
  if (tcol < 0 || gcol < 0)
    return Fail(err, kExitInvalidConfig, "invalid_report", "report.csv lacks t or R_g columns");

  std::vector<double> t;
  for (const auto& row : table.rows) t.push_back(ParseDouble(row[tcol]));
  auto column = [&](int col, bool per_round) {
    std::vector<double> v;
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      const double raw = ParseDouble(table.rows[k][col]);
      v.push_back(per_round ? raw / t[k] : raw);
    }
    return v;
  };

  std::vector<ChartSeries> regret, actions;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& h = table.header[c];
    if (h.rfind("R_", 0) == 0 && h != "R_g")
      regret.push_back({h + "/t", t, column(static_cast<int>(c), true)});
    if (h.rfind("x_", 0) == 0) actions.push_back({h, t, column(static_cast<int>(c), false)});
  }
  const std::vector<ChartSeries> violation{{"R_g/t", t, column(gcol, true)}};

  const fs::path dir = options.out ? fs::path(*options.out)
                                   : fs::path(report_path).parent_path();
  try {
    WriteOut(dir / "regret.svg", render_line_chart("Average regret", "t", "R_i(t)/t", regret));
    WriteOut(dir / "violation.svg",
             render_line_chart("Average constraint violation", "t", "R_g(t)/t", violation));
    WriteOut(dir / "actions.svg", render_line_chart("Actions", "t", "x_i(t)", actions));
  } catch (const CommandError& e) {
    return Fail(err, e.code(), e.kind(), e.what());
  }
  if (!options.quiet) out << (dir / "regret.svg").string() << '\n';
  return kExitOk;
}

}  // namespace ogne::cli
