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

#ifndef THERMORL_ENV_HPP_
#define THERMORL_ENV_HPP_

#include <array>
#include <cstddef>
#include <optional>

#include "thermorl/scenario.hpp"

namespace thermorl {

// Fixed thermostat setpoint and the band the agent may move within.
struct ComfortConfig {
  double t_fixed = 22.0;
  double band_delta = 2.0;
  // Indoor humidity target; held constant, does not enter the reward.
  double rh_in_target = 0.30;

  double band_low() const { return t_fixed - band_delta; }
  double band_high() const { return t_fixed + band_delta; }
  void validate() const;
};

// Coefficients of the empirical reward. Cost terms:
//   effort    = c_power * max(t_out - t_set, 0)^2 * (1 + c_humidity * rh_out)
//   comfort   = c_comfort * (t_set - t_fixed)^2
//   violation = p_fixed + p_per_deg * degrees outside the band (0 when inside)
struct RewardWeights {
  double c_power = 0.05;
  double c_humidity = 1.0;
  double c_comfort = 1.0;
  double p_fixed = 10.0;
  double p_per_deg = 10.0;

  void validate() const;
};

// Outdoor temperature range mapped onto [-1, 1] for network inputs.
struct StateNorm {
  double t_lo = 15.0;
  double t_hi = 45.0;

  void validate() const;
};

struct EnvParams {
  ComfortConfig comfort;
  RewardWeights weights;
  StateNorm norm;

  void validate() const {
    comfort.validate();
    weights.validate();
    norm.validate();
  }
};

struct ClampResult {
  double t_applied = 0.0;
  double violation_deg = 0.0;
};

struct RewardBreakdown {
  double total = 0.0;
  double effort_cost = 0.0;
  double comfort_cost = 0.0;
  double violation_cost = 0.0;
  double t_applied = 0.0;
  double violation_deg = 0.0;
};

ClampResult clamp_setpoint(double t_req, const ComfortConfig& comfort);

RewardBreakdown reward(const WeatherSample& sample, double t_req,
                       const RewardWeights& weights, const ComfortConfig& comfort);

// Out-of-range temperatures are clamped to [t_lo, t_hi] and logged.
std::array<double, 2> normalize_state(const WeatherSample& sample, const StateNorm& norm);

struct StepResult {
  RewardBreakdown reward;
  std::optional<WeatherSample> next;  // nullopt once the series is exhausted

  bool terminal() const { return !next.has_value(); }
};

// Steps day by day through a weather series. Transitions never depend on the
// requested setpoint.
class Environment {
 public:
  // Throws ConfigError on an empty series or invalid parameters.
  Environment(WeatherSeries series, const ComfortConfig& comfort,
              const RewardWeights& weights);

  const WeatherSample& reset();
  // Throws StateError once terminal.
  StepResult step(double t_req);

  const WeatherSample& observe() const;
  bool terminal() const { return cursor_ >= series_.size(); }
  std::size_t cursor() const { return cursor_; }
  std::size_t size() const { return series_.size(); }
  const WeatherSeries& series() const { return series_; }
  const ComfortConfig& comfort() const { return comfort_; }
  const RewardWeights& weights() const { return weights_; }

 private:
  WeatherSeries series_;
  ComfortConfig comfort_;
  RewardWeights weights_;
  std::size_t cursor_ = 0;
};

}  // namespace thermorl

#endif  // THERMORL_ENV_HPP_
