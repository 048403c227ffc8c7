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

#include "thermorl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>

#include "text.hpp"
#include "thermorl/error.hpp"
#include "thermorl/log.hpp"

namespace thermorl::eval {

double oracle_setpoint(const WeatherSample& sample, const RewardWeights& weights,
                       const ComfortConfig& comfort) {
  if (sample.t_out < comfort.t_fixed) return comfort.t_fixed;
  const double a = weights.c_power * (1.0 + weights.c_humidity * sample.rh_out);
  const double t = (a * sample.t_out + weights.c_comfort * comfort.t_fixed) / (a + weights.c_comfort);
  return std::clamp(t, comfort.band_low(), comfort.band_high());
}

Policy constant_policy(double setpoint) {
  return [setpoint](const WeatherSample&) { return setpoint; };
}

Policy oracle_policy(const RewardWeights& weights, const ComfortConfig& comfort) {
  return [weights, comfort](const WeatherSample& s) { return oracle_setpoint(s, weights, comfort); };
}

Policy agent_policy(const ddpg::Agent& agent, const EnvParams& env) {
  auto actor = std::make_shared<const nn::Network>(agent.actor);
  return [actor, env](const WeatherSample& s) {
    const auto x = normalize_state(s, env.norm);
    const double u = nn::predict(*actor, nn::Vector{x[0], x[1]})[0];
    return env.comfort.t_fixed + env.comfort.band_delta * u;
  };
}

std::vector<PolicyStep> run_policy(const Policy& policy, const WeatherSeries& series,
                                   const RewardWeights& weights, const ComfortConfig& comfort) {
  Environment env(series, comfort, weights);
  std::vector<PolicyStep> out;
  out.reserve(series.size());
  WeatherSample current = env.reset();
  while (!env.terminal()) {
    const auto step = env.step(policy(current));
    out.push_back({current.day, step.reward.t_applied, step.reward});
    if (step.next) current = *step.next;
  }
  return out;
}

double area_between(std::span<const WeatherSample> series, std::span<const double> setpoints) {
  if (series.size() != setpoints.size()) {
    throw DomainError("area_between: " + std::to_string(series.size()) + " days but " +
                      std::to_string(setpoints.size()) + " setpoints");
  }
  double area = 0.0;
  for (std::size_t d = 0; d < series.size(); ++d) area += std::max(series[d].t_out - setpoints[d], 0.0);
  return area;
}

double improvement_pct(double area_fixed, double area_agent) {
  if (!(area_fixed > 0.0)) throw DomainError("improvement_pct: fixed-setpoint area must be > 0");
  return 100.0 * (area_fixed - area_agent) / area_fixed;
}

void FuelConfig::validate() const {
  if (!(std::isfinite(gallons_per_day) && gallons_per_day >= 0.0) ||
      !(std::isfinite(cost_per_day) && cost_per_day >= 0.0)) {
    throw ConfigError("fuel.gallons_per_day and fuel.cost_per_day must be >= 0");
  }
  if (days_per_year == 0) throw ConfigError("fuel.days_per_year must be positive");
}

FuelReport fuel_report(double improvement_pct, const FuelConfig& fuel) {
  FuelReport r;
  r.gallons_daily = fuel.gallons_per_day * improvement_pct / 100.0;
  r.daily = fuel.cost_per_day * improvement_pct / 100.0;
  r.annual = r.daily * static_cast<double>(fuel.days_per_year);
  return r;
}

double policy_oracle_mae(const Policy& policy, std::span<const WeatherSample> samples,
                         const RewardWeights& weights, const ComfortConfig& comfort) {
  if (samples.empty()) throw DomainError("policy_oracle_mae: no samples");
  double total = 0.0;
  for (const auto& s : samples) total += std::abs(policy(s) - oracle_setpoint(s, weights, comfort));
  return total / static_cast<double>(samples.size());
}

EvalReport compare(const Policy& agent, const WeatherSeries& series, const EnvParams& env,
                   const FuelConfig& fuel) {
  env.validate();
  fuel.validate();
  const auto fixed_run = run_policy(constant_policy(env.comfort.t_fixed), series, env.weights, env.comfort);
  const auto agent_run = run_policy(agent, series, env.weights, env.comfort);

  EvalReport report;
  std::vector<double> fixed_set;
  std::vector<double> agent_set;
  for (std::size_t d = 0; d < series.size(); ++d) {
    const auto& s = series[d];
    report.days.push_back({s.day, s.t_out, s.rh_out, fixed_run[d].setpoint, agent_run[d].setpoint,
                           oracle_setpoint(s, env.weights, env.comfort),
                           fixed_run[d].reward.total, agent_run[d].reward.total});
    fixed_set.push_back(fixed_run[d].setpoint);
    agent_set.push_back(agent_run[d].setpoint);
  }
  report.area_fixed = area_between(series, fixed_set);
  report.area_agent = area_between(series, agent_set);
  if (report.area_fixed > 0.0) {
    report.improvement_pct = improvement_pct(report.area_fixed, report.area_agent);
  } else {
    log::warning("no cooling demand at the fixed setpoint; improvement reported as 0");
  }
  report.policy_oracle_mae = policy_oracle_mae(agent, series, env.weights, env.comfort);
  report.fuel = fuel_report(report.improvement_pct, fuel);
  return report;
}

EvalReport compare(const ddpg::Agent& agent, const WeatherSeries& series, const EnvParams& env,
                   const FuelConfig& fuel) {
  return compare(agent_policy(agent, env), series, env, fuel);
}

std::string format_eval_csv(const EvalReport& report) {
  std::string out = "day,t_out_c,rh_out,t_fixed_c,t_agent_c,t_oracle_c,reward_fixed,reward_agent\n";
  for (const auto& d : report.days) {
    out += std::to_string(d.day);
    for (double v : {d.t_out, d.rh_out, d.t_fixed_set, d.t_agent_set, d.t_oracle_set,
                     d.reward_fixed, d.reward_agent}) {
      out += ',';
      out += text::fixed(v, 6);
    }
    out += '\n';
  }
  return out;
}

void save_eval_csv(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_eval_csv(report);
  if (!out) throw IoError("failed writing " + path.string());
}

ReportSummary summarize(const EvalReport& report) {
  return {report.area_fixed, report.area_agent, report.improvement_pct,
          report.policy_oracle_mae, report.fuel.daily, report.fuel.annual};
}

nlohmann::ordered_json to_json(const ReportSummary& s) {
  nlohmann::ordered_json j;
  j["area_fixed"] = s.area_fixed;
  j["area_agent"] = s.area_agent;
  j["improvement_pct"] = s.improvement_pct;
  j["policy_oracle_mae"] = s.policy_oracle_mae;
  j["fuel_daily"] = s.fuel_daily;
  j["fuel_annual"] = s.fuel_annual;
  return j;
}

void save_report_json(const ReportSummary& summary, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(summary).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

ReportSummary load_report_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open report " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    ReportSummary s;
    s.area_fixed = j.at("area_fixed").get<double>();
    s.area_agent = j.at("area_agent").get<double>();
    s.improvement_pct = j.at("improvement_pct").get<double>();
    s.policy_oracle_mae = j.at("policy_oracle_mae").get<double>();
    s.fuel_daily = j.at("fuel_daily").get<double>();
    s.fuel_annual = j.at("fuel_annual").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string display_pct(double pct) { return text::fixed(pct, 1); }

}  // namespace thermorl::eval
