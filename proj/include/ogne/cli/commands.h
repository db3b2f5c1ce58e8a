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

#ifndef OGNE_CLI_COMMANDS_H_
#define OGNE_CLI_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "ogne/cli/config.h"
#include "ogne/report.h"
#include "ogne/vgne.h"

namespace ogne::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidateFailed = 1,
  kExitInvalidConfig = 2,
  kExitMonitorFailure = 3,
  kExitOracleFailure = 4,
  kExitIoError = 5,
  kExitEngineFailure = 6,
};

struct CommandOptions {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

// Raised by the run pipeline with the exit code it maps to.
class CommandError : public std::runtime_error {
 public:
  CommandError(ExitCode code, const std::string& kind, const std::string& what)
      : std::runtime_error(what), code_(code), kind_(kind) {}
  ExitCode code() const { return code_; }
  const std::string& kind() const { return kind_; }

 private:
  ExitCode code_;
  std::string kind_;
};

struct RunArtifacts {
  RunReport report;
  std::shared_ptr<const VgneTrace> trace;  // null when oracle mode is none
  bool trace_computed = false;
};

// Library form of `run`: builds everything from the config and simulates.
// Throws CommandError (invalid config, oracle failure).
RunArtifacts execute_run(const RunConfig& config);
// Oracle trace for the configured game and horizon. Throws CommandError.
VgneTrace execute_oracle(const RunConfig& config);

int cmd_run(const std::string& config_path, const CommandOptions& options,
            std::ostream& out, std::ostream& err);
int cmd_oracle(const std::string& config_path, const CommandOptions& options,
               std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& config_path, const CommandOptions& options,
                 std::ostream& out, std::ostream& err);
int cmd_plot(const std::string& report_path, const CommandOptions& options,
             std::ostream& out, std::ostream& err);

}  // namespace ogne::cli

#endif  // OGNE_CLI_COMMANDS_H_
