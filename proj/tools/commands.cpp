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

#include <cstdio>
#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <system_error>

#include "cli.hpp"
#include "thermorl/thermorl.h"

namespace thermorl::cli {
namespace {

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Config = std::unique_ptr<thermorl_config, Deleter<thermorl_config, thermorl_config_free>>;
using Scenario = std::unique_ptr<thermorl_scenario, Deleter<thermorl_scenario, thermorl_scenario_free>>;
using Agent = std::unique_ptr<thermorl_agent, Deleter<thermorl_agent, thermorl_agent_free>>;
using TrainLog = std::unique_ptr<thermorl_train_log, Deleter<thermorl_train_log, thermorl_train_log_free>>;
using Report = std::unique_ptr<thermorl_report, Deleter<thermorl_report, thermorl_report_free>>;

// Thrown to unwind a command with a prepared exit code.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(thermorl_status s) {
  return s == THERMORL_ERR_CONFIG || s == THERMORL_ERR_INVALID_ARGUMENT ? kExitUsage : kExitRuntime;
}

void check(thermorl_status s) {
  if (s != THERMORL_OK) throw Failure{exit_code_for(s), thermorl_last_error()};
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string path_in(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Failure{kExitRuntime, "cannot create output directory " + dir + ": " + ec.message()};
}

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Failure{kExitRuntime, std::string(what) + " not found: " + path};
  }
}

Config build_config(const CliArgs& args) {
  thermorl_config* raw = nullptr;
  check(thermorl_config_new(&raw));
  Config cfg(raw);
  if (args.config_path) {
    const auto s = thermorl_config_load_file(cfg.get(), args.config_path->c_str());
    // A missing config file is a usage problem, not a runtime one.
    if (s != THERMORL_OK) throw Failure{kExitUsage, thermorl_last_error()};
  }
  for (const auto& [key, value] : args.overrides) {
    check(thermorl_config_set(cfg.get(), key.c_str(), value.c_str()));
  }
  check(thermorl_config_validate(cfg.get()));
  return cfg;
}

Scenario load_scenario(const std::string& path) {
  require_file(path, "scenario");
  thermorl_scenario* raw = nullptr;
  check(thermorl_scenario_load(path.c_str(), &raw));
  return Scenario(raw);
}

void gen_scenario(const CliArgs& args, const thermorl_config* cfg, std::ostream& out) {
  thermorl_scenario* raw = nullptr;
  check(thermorl_scenario_generate(cfg, &raw));
  Scenario scenario(raw);
  ensure_dir(args.out_dir);
  const auto path = path_in(args.out_dir, "scenario.csv");
  check(thermorl_scenario_save(scenario.get(), path.c_str()));
  out << "wrote " << path << " (" << thermorl_scenario_size(scenario.get()) << " days)\n";
}

void train(const CliArgs& args, const thermorl_config* cfg, std::ostream& out) {
  auto scenario = load_scenario(args.scenario_path);
  thermorl_agent* raw_agent = nullptr;
  thermorl_train_log* raw_log = nullptr;
  check(thermorl_train(cfg, scenario.get(), &raw_agent, &raw_log));
  Agent agent(raw_agent);
  TrainLog log(raw_log);
  ensure_dir(args.out_dir);
  const auto agent_path = path_in(args.out_dir, "agent.json");
  const auto log_path = path_in(args.out_dir, "train_log.csv");
  check(thermorl_agent_save(agent.get(), agent_path.c_str()));
  check(thermorl_train_log_save(log.get(), log_path.c_str()));
  out << "wrote " << agent_path << '\n' << "wrote " << log_path << '\n';
  if (const auto n = thermorl_train_log_size(log.get()); n > 0) {
    thermorl_episode_stats last{};
    check(thermorl_train_log_get(log.get(), n - 1, &last));
    out << "episodes: " << n << ", final mean reward: " << fmt("%.4f", last.mean_reward) << '\n';
  }
}

void evaluate(const CliArgs& args, const thermorl_config* cfg, std::ostream& out) {
  require_file(args.checkpoint_path, "checkpoint");
  auto scenario = load_scenario(args.scenario_path);
  thermorl_agent* raw_agent = nullptr;
  check(thermorl_agent_load(args.checkpoint_path.c_str(), &raw_agent));
  Agent agent(raw_agent);
  thermorl_report* raw_report = nullptr;
  check(thermorl_evaluate(cfg, agent.get(), scenario.get(), &raw_report));
  Report report(raw_report);
  ensure_dir(args.out_dir);
  const auto csv_path = path_in(args.out_dir, "eval.csv");
  const auto json_path = path_in(args.out_dir, "report.json");
  check(thermorl_report_save_csv(report.get(), csv_path.c_str()));
  check(thermorl_report_save_json(report.get(), json_path.c_str()));
  thermorl_report_summary s{};
  check(thermorl_report_summary_get(report.get(), &s));
  out << "wrote " << csv_path << '\n'
      << "wrote " << json_path << '\n'
      << "area fixed: " << fmt("%.1f", s.area_fixed) << '\n'
      << "area agent: " << fmt("%.1f", s.area_agent) << '\n'
      << "improvement: " << fmt("%.1f", s.improvement_pct) << "%\n"
      << "policy-oracle MAE: " << fmt("%.3f", s.policy_oracle_mae) << " C\n";
}

void oracle(const CliArgs& args, const thermorl_config* cfg, std::ostream& out) {
  double t = 0.0;
  check(thermorl_oracle_setpoint(cfg, args.t_out, args.rh_out, &t));
  out << fmt("%.2f", t) << '\n';
}

void report(const CliArgs& args, const thermorl_config* cfg, std::ostream& out) {
  require_file(args.report_path, "report");
  thermorl_report_summary s{};
  check(thermorl_report_load_json(args.report_path.c_str(), &s));
  thermorl_fuel_projection fuel{};
  check(thermorl_fuel_projection_get(cfg, s.improvement_pct, &fuel));
  out << "improvement: " << fmt("%.1f", s.improvement_pct) << "%\n"
      << "fuel saved per day: " << fmt("%.0f", fuel.gallons_daily) << " gal\n"
      << "cost saved per day: $" << fmt("%.0f", fuel.daily) << '\n'
      << "cost saved per year: $" << fmt("%.0f", fuel.annual) << '\n';
}

}  // namespace

int run_command(const CliArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = build_config(args);
    switch (args.command) {
      case Command::gen_scenario: gen_scenario(args, cfg.get(), out); break;
      case Command::train: train(args, cfg.get(), out); break;
      case Command::eval: evaluate(args, cfg.get(), out); break;
      case Command::oracle: oracle(args, cfg.get(), out); break;
      case Command::report: report(args, cfg.get(), out); break;
    }
    return kExitOk;
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  }
}

}  // namespace thermorl::cli
