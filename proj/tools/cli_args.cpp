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

#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"

namespace thermorl::cli {
namespace {

std::string default_in(const std::string& out_dir, const char* name) {
  return (std::filesystem::path(out_dir) / name).string();
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv) {
  CLI::App app{"Thermostat setpoint optimization with a DDPG agent trained on an empirical reward.",
               "thermorl"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string seed;
  std::string out_dir = ".";
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "Plain-text `section.key = value` config file");
  app.add_option("--seed", seed, "Global seed for scenario generation and training");
  app.add_option("--out", out_dir, "Output directory (default: current directory)");
  app.add_option("--set", sets, "Config override `key=value` (repeatable)");

  std::string days;
  auto* gen = app.add_subcommand("gen-scenario", "Generate a seeded weather series -> <out>/scenario.csv");
  gen->add_option("--days", days, "Number of days (scenario.n_days)");

  std::string scenario_path;
  std::string episodes;
  auto* train = app.add_subcommand(
      "train", "Train the agent -> <out>/agent.json and <out>/train_log.csv");
  train->add_option("--scenario", scenario_path, "Scenario CSV (default: <out>/scenario.csv)");
  train->add_option("--episodes", episodes, "Training episodes (agent.episodes)");

  std::string checkpoint_path;
  auto* eval = app.add_subcommand(
      "eval", "Compare fixed vs agent setpoints -> <out>/eval.csv and <out>/report.json");
  eval->add_option("--scenario", scenario_path, "Scenario CSV (default: <out>/scenario.csv)");
  eval->add_option("--checkpoint", checkpoint_path, "Agent checkpoint (default: <out>/agent.json)");

  double t_out = 0.0;
  double rh_out = 0.0;
  auto* oracle = app.add_subcommand("oracle", "Print the reward-optimal setpoint for one day");
  oracle->add_option("--t-out", t_out, "Outdoor temperature, deg C")->required();
  oracle->add_option("--rh-out", rh_out, "Outdoor relative humidity, fraction in [0, 1]")->required();

  std::string report_path;
  auto* report = app.add_subcommand("report", "Recompute the fuel projection from a report JSON");
  report->add_option("--report", report_path, "Report JSON (default: <out>/report.json)");

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (auto* sub : {gen, train, eval, oracle, report}) {
      if (sub->parsed()) target = sub;
    }
    outcome.out = target->help();
    outcome.exit_code = kExitOk;
    return outcome;
  } catch (const CLI::CallForAllHelp&) {
    outcome.out = app.help("", CLI::AppFormatMode::All);
    outcome.exit_code = kExitOk;
    return outcome;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    msg << "error: " << e.what() << '\n' << app.help();
    outcome.err = msg.str();
    outcome.exit_code = kExitUsage;
    return outcome;
  }

  CliArgs args;
  args.out_dir = out_dir;
  if (!config_path.empty()) args.config_path = config_path;
  if (!seed.empty()) args.overrides.emplace_back("seed", seed);
  if (gen->parsed()) {
    args.command = Command::gen_scenario;
    if (!days.empty()) args.overrides.emplace_back("scenario.n_days", days);
  } else if (train->parsed()) {
    args.command = Command::train;
    if (!episodes.empty()) args.overrides.emplace_back("agent.episodes", episodes);
  } else if (eval->parsed()) {
    args.command = Command::eval;
  } else if (oracle->parsed()) {
    args.command = Command::oracle;
  } else {
    args.command = Command::report;
  }
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      outcome.err = "error: --set expects key=value, got '" + s + "'\n" + app.help();
      outcome.exit_code = kExitUsage;
      return outcome;
    }
    args.overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  args.scenario_path = scenario_path.empty() ? default_in(out_dir, "scenario.csv") : scenario_path;
  args.checkpoint_path = checkpoint_path.empty() ? default_in(out_dir, "agent.json") : checkpoint_path;
  args.report_path = report_path.empty() ? default_in(out_dir, "report.json") : report_path;
  args.t_out = t_out;
  args.rh_out = rh_out;
  outcome.args = std::move(args);
  return outcome;
}

}  // namespace thermorl::cli
