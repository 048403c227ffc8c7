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

#ifndef THERMORL_EVAL_HPP_
#define THERMORL_EVAL_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "thermorl/ddpg.hpp"
#include "thermorl/env.hpp"
#include "thermorl/scenario.hpp"

namespace thermorl::eval {

// Maps one day's weather to a requested setpoint in deg C.
using Policy = std::function<double(const WeatherSample&)>;

// Reward-maximizing setpoint in the band. With a = c_power * (1 + c_humidity * rh)
// the unconstrained optimum is (a * t_out + c_comfort * t_fixed) / (a + c_comfort)
// when t_out >= t_fixed; below t_fixed the effort term vanishes and t_fixed wins.
double oracle_setpoint(const WeatherSample& sample, const RewardWeights& weights,
                       const ComfortConfig& comfort);

Policy constant_policy(double setpoint);
Policy oracle_policy(const RewardWeights& weights, const ComfortConfig& comfort);
// Greedy (noise-free) actor; copies the actor network.
Policy agent_policy(const ddpg::Agent& agent, const EnvParams& env);

struct PolicyStep {
  std::size_t day = 0;
  double setpoint = 0.0;  // applied, in band
  RewardBreakdown reward;
};

std::vector<PolicyStep> run_policy(const Policy& policy, const WeatherSeries& series,
                                   const RewardWeights& weights, const ComfortConfig& comfort);

// Sum over days of max(t_out - setpoint, 0), one-day rectangles.
// Throws DomainError on length mismatch.
double area_between(std::span<const WeatherSample> series, std::span<const double> setpoints);

// 100 * (fixed - agent) / fixed. Throws DomainError unless area_fixed > 0.
double improvement_pct(double area_fixed, double area_agent);

struct FuelConfig {
  double gallons_per_day = 60000.0;
  double cost_per_day = 200000.0;
  std::size_t days_per_year = 365;

  void validate() const;
};

struct FuelReport {
  double gallons_daily = 0.0;
  double daily = 0.0;   // currency per day
  double annual = 0.0;  // currency per year
};

FuelReport fuel_report(double improvement_pct, const FuelConfig& fuel);

// Mean |policy(s) - oracle(s)| in deg C. Throws DomainError on empty input.
double policy_oracle_mae(const Policy& policy, std::span<const WeatherSample> samples,
                         const RewardWeights& weights, const ComfortConfig& comfort);

struct DayResult {
  std::size_t day = 0;
  double t_out = 0.0;
  double rh_out = 0.0;
  double t_fixed_set = 0.0;
  double t_agent_set = 0.0;
  double t_oracle_set = 0.0;
  double reward_fixed = 0.0;
  double reward_agent = 0.0;
};

struct EvalReport {
  std::vector<DayResult> days;
  double area_fixed = 0.0;
  double area_agent = 0.0;
  double improvement_pct = 0.0;
  double policy_oracle_mae = 0.0;
  FuelReport fuel;
};

// Fixed baseline vs `agent` on the same series, with the oracle alongside.
EvalReport compare(const Policy& agent, const WeatherSeries& series, const EnvParams& env,
                   const FuelConfig& fuel);
EvalReport compare(const ddpg::Agent& agent, const WeatherSeries& series, const EnvParams& env,
                   const FuelConfig& fuel);

// `day,t_out_c,rh_out,t_fixed_c,t_agent_c,t_oracle_c,reward_fixed,reward_agent`
std::string format_eval_csv(const EvalReport& report);
void save_eval_csv(const EvalReport& report, const std::filesystem::path& path);

struct ReportSummary {
  double area_fixed = 0.0;
  double area_agent = 0.0;
  double improvement_pct = 0.0;
  double policy_oracle_mae = 0.0;
  double fuel_daily = 0.0;
  double fuel_annual = 0.0;
};

ReportSummary summarize(const EvalReport& report);
nlohmann::ordered_json to_json(const ReportSummary& summary);
void save_report_json(const ReportSummary& summary, const std::filesystem::path& path);
ReportSummary load_report_json(const std::filesystem::path& path);

// One decimal, as reported for display ("6.8").
std::string display_pct(double pct);

}  // namespace thermorl::eval

#endif  // THERMORL_EVAL_HPP_
