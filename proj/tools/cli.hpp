// Copyright 2026 The thermorl Authors.
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

#ifndef THERMORL_TOOLS_CLI_HPP_
#define THERMORL_TOOLS_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thermorl::cli {

enum class Command { gen_scenario, train, eval, oracle, report };

struct CliArgs {
  Command command = Command::gen_scenario;
  std::optional<std::string> config_path;
  std::string out_dir = ".";
  // Config overrides in command-line order, applied after the config file.
  std::vector<std::pair<std::string, std::string>> overrides;
  std::string scenario_path;    // defaults to <out>/scenario.csv
  std::string checkpoint_path;  // defaults to <out>/agent.json
  std::string report_path;      // defaults to <out>/report.json
  double t_out = 0.0;
  double rh_out = 0.0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct ParseOutcome {
  std::optional<CliArgs> args;  // set when a command should run
  int exit_code = kExitOk;      // meaningful when args is empty
  std::string out;              // help text for stdout
  std::string err;              // usage error for stderr
};

ParseOutcome parse_args(int argc, const char* const* argv);

// Executes a parsed command through the C API. Exit codes: 0 success,
// 1 runtime failure, 2 configuration error. Errors go to `err` as one
// line prefixed `error:`.
int run_command(const CliArgs& args, std::ostream& out, std::ostream& err);

}  // namespace thermorl::cli

#endif  // THERMORL_TOOLS_CLI_HPP_
