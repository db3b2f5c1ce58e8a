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

// Command-line front end: run, oracle, validate, plot.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ogne/cli/commands.h"

int main(int argc, char** argv) {
  CLI::App app{"Online distributed GNE seeking simulator"};
  app.require_subcommand(1);

  std::string out_dir;
  std::uint64_t seed = 0;
  bool quiet = false;
  app.add_option("--out", out_dir, "Output directory (overrides config and OGNE_OUT)");
  app.add_option("--seed", seed, "Seed override");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  std::string path;
  auto* run = app.add_subcommand("run", "Simulate and write report.csv, summary.json");
  run->add_option("config", path, "JSON run config")->required();
  auto* oracle = app.add_subcommand("oracle", "Compute vgne_trace.csv only");
  oracle->add_option("config", path, "JSON run config")->required();
  auto* validate = app.add_subcommand("validate", "Check assumptions and print a table");
  validate->add_option("config", path, "JSON run config")->required();
  auto* plot = app.add_subcommand("plot", "Render SVG charts from a report.csv");
  plot->add_option("report", path, "report.csv path")->required();
  for (auto* sub : {run, oracle, validate, plot}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ogne::cli::kExitInvalidConfig;
  }

  ogne::cli::CommandOptions options;
  if (app.count("--out")) options.out = out_dir;
  if (app.count("--seed")) options.seed = seed;
  options.quiet = quiet;

  if (*run) return ogne::cli::cmd_run(path, options, std::cout, std::cerr);
  if (*oracle) return ogne::cli::cmd_oracle(path, options, std::cout, std::cerr);
  if (*validate) return ogne::cli::cmd_validate(path, options, std::cout, std::cerr);
  return ogne::cli::cmd_plot(path, options, std::cout, std::cerr);
}
