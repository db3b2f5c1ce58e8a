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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "ogne/cli/commands.h"
#include "ogne/cli/config.h"
#include "ogne/csv.h"
#include "test_util.h"

namespace ogne::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kSource = OGNE_SOURCE_DIR;

json MinimalJson() {
  return json::parse(R"({
    "game": {"name": "cournot-siv"},
    "graph": {"edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]},
    "rate": {"kind": "paper_cuberoot", "c": 6, "d": 0.1},
    "T": 1,
    "initial": {"mode": "section-iv"}
  })");
}

std::string WriteConfig(const testing::TempDir& dir, json config, const std::string& name = "c.json") {
  if (!config.contains("outputs")) config["outputs"] = (dir.path() / "out").string();
  const fs::path p = dir.path() / name;
  std::ofstream(p) << config.dump(2);
  return p.string();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

template <typename Fn>
Result Call(Fn fn, const std::string& path, CommandOptions options = {}) {
  std::ostringstream out, err;
  options.quiet = true;
  const int code = fn(path, options, out, err);
  return {code, out.str(), err.str()};
}

TEST(ParseConfigTest, MinimalDefaults) {
  const RunConfig c = parse_config(MinimalJson().dump());
  EXPECT_EQ(c.game.name, "cournot-siv");
  EXPECT_EQ(c.graph.edges.size(), 5u);
  EXPECT_EQ(c.T, 1);
  EXPECT_EQ(c.initial.mode, "section-iv");
  EXPECT_EQ(c.oracle.mode, "compute");
  EXPECT_DOUBLE_EQ(c.oracle.tol, 1e-8);
  EXPECT_TRUE(config_issues(c).empty());
}

TEST(ParseConfigTest, StructuralErrors) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  json j = MinimalJson();
  j.erase("rate");
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = MinimalJson();
  j["colour"] = "blue";
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = MinimalJson();
  j["initial"]["mode"] = "warm";
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = MinimalJson();
  j["T"] = "many";
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = MinimalJson();
  j["graph"]["matrix"] = {{1.0}};
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
}

TEST(ParseConfigTest, CompactQuadraticName) {
  json j = MinimalJson();
  j["game"] = {{"name", "quadratic(3,2,9)"}};
  const RunConfig c = parse_config(j.dump());
  EXPECT_EQ(c.game.name, "quadratic");
  EXPECT_EQ(c.game.n, 3);
  EXPECT_EQ(c.game.m, 2);
  EXPECT_EQ(c.game.seed, 9u);
  j["game"] = {{"name", "quadratic(3,2)"}};
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
}

TEST(ConfigIssuesTest, RangeChecks) {
  RunConfig c = parse_config(MinimalJson().dump());
  c.T = 0;
  EXPECT_EQ(config_issues(c).size(), 1u);
  c = parse_config(MinimalJson().dump());
  c.rate = {"power", 1, 1, 0.6};
  ASSERT_EQ(config_issues(c).size(), 1u);
  EXPECT_NE(config_issues(c)[0].find("eta"), std::string::npos);
  c.rate.eta = 0.5;
  EXPECT_FALSE(config_issues(c).empty());
  c.rate.eta = 0.49;
  EXPECT_TRUE(config_issues(c).empty());
  c.game.name = "chess";
  EXPECT_FALSE(config_issues(c).empty());
}

TEST(ApplyOverridesTest, EnvironmentThenFlags) {
  RunConfig c = parse_config(MinimalJson().dump());
  ::setenv("OGNE_OUT", "/tmp/from-env", 1);
  apply_overrides(c, std::nullopt, std::nullopt);
  EXPECT_EQ(c.outputs, "/tmp/from-env");
  apply_overrides(c, std::string("/tmp/from-flag"), 5u);
  EXPECT_EQ(c.outputs, "/tmp/from-flag");
  EXPECT_EQ(c.seed, 5u);
  ::unsetenv("OGNE_OUT");
}

TEST(BuildersTest, InitialActionsDefaultToPublishedSetup) {
  const RunConfig c = parse_config(MinimalJson().dump());
  const auto game = build_game(c);
  const InitialCondition init = build_initial(c, *game);
  Vector expected(5);
  expected << 0, 30, 10, 10, 30;
  EXPECT_EQ(init.actions, expected);
  EXPECT_EQ(init.other_estimate, 10.0);
  EXPECT_EQ(init.multiplier, 1.0);
}

TEST(CmdRunTest, MinimalRunMatchesGolden) {
  const testing::TempDir dir("golden");
  const Result r = Call(cmd_run, WriteConfig(dir, MinimalJson()));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string report = testing::Slurp(dir.path() / "out" / "report.csv");
  EXPECT_EQ(report, testing::Slurp(kSource / "tests" / "golden" / "minimal_report.csv"));
  const CsvTable table = ReadCsv((dir.path() / "out" / "report.csv").string());
  EXPECT_EQ(table.rows.size(), 1u);
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "summary.json"));
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "vgne_trace.csv"));
}

TEST(CmdRunTest, ShippedConfigsParseAndPassRangeChecks) {
  for (const auto& entry : fs::directory_iterator(kSource / "configs")) {
    const RunConfig c = load_config(entry.path().string());
    EXPECT_TRUE(config_issues(c).empty()) << entry.path();
  }
}

TEST(CmdRunTest, DeterministicAcrossRuns) {
  const testing::TempDir dir("determinism");
  json j = MinimalJson();
  j["T"] = 40;
  j["outputs"] = (dir.path() / "a").string();
  ASSERT_EQ(Call(cmd_run, WriteConfig(dir, j, "a.json")).code, 0);
  j["outputs"] = (dir.path() / "b").string();
  ASSERT_EQ(Call(cmd_run, WriteConfig(dir, j, "b.json")).code, 0);
  EXPECT_EQ(testing::Slurp(dir.path() / "a" / "report.csv"),
            testing::Slurp(dir.path() / "b" / "report.csv"));
  EXPECT_EQ(testing::Slurp(dir.path() / "a" / "summary.json"),
            testing::Slurp(dir.path() / "b" / "summary.json"));
}

TEST(CmdRunTest, OutFlagOverridesConfig) {
  const testing::TempDir dir("outflag");
  CommandOptions o;
  o.out = (dir.path() / "elsewhere").string();
  ASSERT_EQ(Call(cmd_run, WriteConfig(dir, MinimalJson()), o).code, 0);
  EXPECT_TRUE(fs::exists(dir.path() / "elsewhere" / "report.csv"));
  EXPECT_FALSE(fs::exists(dir.path() / "out" / "report.csv"));
}

TEST(CmdRunTest, InvalidConfigExitsTwoWithJsonError) {
  const testing::TempDir dir("invalid");
  json j = MinimalJson();
  j["rate"] = {{"kind", "power"}, {"c", 1}, {"d", 1}, {"eta", 0.6}};
  const Result r = Call(cmd_run, WriteConfig(dir, j));
  EXPECT_EQ(r.code, kExitInvalidConfig);
  const json err = json::parse(r.err);
  EXPECT_EQ(err["error"]["code"], 2);
  EXPECT_EQ(err["error"]["kind"], "invalid_config");
  EXPECT_EQ(Call(cmd_run, (dir.path() / "missing.json").string()).code, kExitInvalidConfig);
}

TEST(CmdRunTest, DisconnectedGraphIsInvalidConfig) {
  const testing::TempDir dir("disconnected");
  json j = MinimalJson();
  j["graph"]["edges"] = {{0, 1}, {2, 3}, {3, 4}};
  EXPECT_EQ(Call(cmd_run, WriteConfig(dir, j)).code, kExitInvalidConfig);
}

TEST(CmdRunTest, OracleFailureExitsFour) {
  const testing::TempDir dir("oraclefail");
  json j = MinimalJson();
  j["oracle"] = {{"mode", "compute"}, {"tol", 1e-15}, {"max_iter", 1}};
  const Result r = Call(cmd_run, WriteConfig(dir, j));
  EXPECT_EQ(r.code, kExitOracleFailure);
  EXPECT_EQ(json::parse(r.err)["error"]["kind"], "oracle");
}

TEST(CmdRunTest, CheapModeWithoutOracle) {
  const testing::TempDir dir("cheap");
  json j = MinimalJson();
  j["T"] = 20;
  j["oracle"] = {{"mode", "none"}};
  ASSERT_EQ(Call(cmd_run, WriteConfig(dir, j)).code, 0);
  const json summary = json::parse(testing::Slurp(dir.path() / "out" / "summary.json"));
  EXPECT_TRUE(summary["cheap_mode"].get<bool>());
  EXPECT_FALSE(fs::exists(dir.path() / "out" / "vgne_trace.csv"));
}

TEST(CmdOracleTest, StaticGameRowsIdentical) {
  const testing::TempDir dir("oracle_static");
  json j = MinimalJson();
  j["game"]["name"] = "cournot-static";
  j["T"] = 15;
  ASSERT_EQ(Call(cmd_oracle, WriteConfig(dir, j)).code, 0);
  const CsvTable t = ReadCsv((dir.path() / "out" / "vgne_trace.csv").string());
  ASSERT_EQ(t.rows.size(), 15u);
  for (const auto& row : t.rows)
    for (std::size_t c = 1; c < row.size(); ++c) EXPECT_EQ(row[c], t.rows[0][c]);
}

TEST(CmdOracleTest, ReloadedTraceReproducesInlineRun) {
  const testing::TempDir dir("oracle_reload");
  json j = MinimalJson();
  j["T"] = 300;
  j["outputs"] = (dir.path() / "trace").string();
  ASSERT_EQ(Call(cmd_oracle, WriteConfig(dir, j, "oracle.json")).code, 0);
  const CsvTable trace = ReadCsv((dir.path() / "trace" / "vgne_trace.csv").string());
  ASSERT_EQ(trace.rows.size(), 300u);
  for (const auto& row : trace.rows) EXPECT_LE(ParseDouble(row.back()), 1e-8);

  j["outputs"] = (dir.path() / "inline").string();
  ASSERT_EQ(Call(cmd_run, WriteConfig(dir, j, "inline.json")).code, 0);
  j["outputs"] = (dir.path() / "loaded").string();
  j["oracle"] = {{"mode", "load"}, {"path", (dir.path() / "trace" / "vgne_trace.csv").string()}};
  ASSERT_EQ(Call(cmd_run, WriteConfig(dir, j, "loaded.json")).code, 0);
  const CsvTable a = ReadCsv((dir.path() / "inline" / "report.csv").string());
  const CsvTable b = ReadCsv((dir.path() / "loaded" / "report.csv").string());
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
      const double x = ParseDouble(a.rows[r][c]), y = ParseDouble(b.rows[r][c]);
      if (std::isnan(x)) {
        EXPECT_TRUE(std::isnan(y));
      } else {
        EXPECT_NEAR(x, y, 1e-12 * (1 + std::abs(x)));
      }
    }
  }
}

TEST(CmdValidateTest, SectionIvConfigPasses) {
  const Result r = Call(cmd_validate, (kSource / "configs" / "section-iv.json").string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("graph connected"), std::string::npos);
  EXPECT_NE(r.out.find("strong monotonicity"), std::string::npos);
}

TEST(CmdValidateTest, DisconnectedGraphFails) {
  const testing::TempDir dir("validate_graph");
  json j = MinimalJson();
  j["graph"]["edges"] = {{0, 1}, {2, 3}, {3, 4}};
  const Result r = Call(cmd_validate, WriteConfig(dir, j));
  EXPECT_NE(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  bool found = false;
  while (std::getline(lines, line))
    if (line.rfind("graph connected", 0) == 0) found = line.find("FAIL") != std::string::npos;
  EXPECT_TRUE(found) << r.out;
}

TEST(CmdValidateTest, PowerScheduleEtaRange) {
  const testing::TempDir dir("validate_eta");
  json j = MinimalJson();
  j["rate"] = {{"kind", "power"}, {"c", 1}, {"d", 1}, {"eta", 0.6}};
  const Result r = Call(cmd_validate, WriteConfig(dir, j));
  EXPECT_EQ(r.code, kExitValidateFailed);
  EXPECT_NE(r.out.find("eta"), std::string::npos);
}

TEST(CmdPlotTest, WritesThreeCharts) {
  const testing::TempDir dir("plot");
  json j = MinimalJson();
  j["T"] = 30;
  ASSERT_EQ(Call(cmd_run, WriteConfig(dir, j)).code, 0);
  ASSERT_EQ(Call(cmd_plot, (dir.path() / "out" / "report.csv").string()).code, 0);
  for (const char* f : {"regret.svg", "violation.svg", "actions.svg"}) {
    const std::string svg = testing::Slurp(dir.path() / "out" / f);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u) << f;
    EXPECT_NE(svg.find("<path"), std::string::npos) << f;
  }
}

TEST(ToolTest, ExitCodesFromBinary) {
  const testing::TempDir dir("tool");
  const std::string tool = OGNE_TOOL;
  const std::string ok = WriteConfig(dir, MinimalJson());
  EXPECT_EQ(std::system((tool + " --quiet --out " + (dir.path() / "flag").string() + " run " +
                         ok + " > /dev/null 2>&1").c_str()),
            0);
  EXPECT_TRUE(fs::exists(dir.path() / "flag" / "report.csv"));
  json bad = MinimalJson();
  bad["T"] = 0;
  const std::string bad_path = WriteConfig(dir, bad, "bad.json");
  const int status = std::system((tool + " --quiet run " + bad_path + " > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

}  // namespace
}  // namespace ogne::cli
