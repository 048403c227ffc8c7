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

#ifndef THERMORL_SCENARIO_HPP_
#define THERMORL_SCENARIO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace thermorl {

// One simulated day of outdoor conditions: the state the agent observes.
struct WeatherSample {
  std::size_t day = 0;
  double t_out = 0.0;   // deg C
  double rh_out = 0.0;  // relative humidity, fraction in [0, 1]

  friend bool operator==(const WeatherSample&, const WeatherSample&) = default;
};

using WeatherSeries = std::vector<WeatherSample>;

inline constexpr double kMinOutdoorTemp = -20.0;
inline constexpr double kMaxOutdoorTemp = 60.0;

// Daily sinusoid plus Gaussian noise for temperature and humidity. Humidity
// shares the temperature period, shifted by h_phase, and is clamped to
// [h_clamp_lo, h_clamp_hi].
struct ScenarioConfig {
  std::size_t n_days = 50;
  double t_base = 32.0;
  double t_amp = 4.0;
  double t_period = 30.0;
  double t_noise_sd = 1.5;
  double h_base = 0.65;
  double h_amp = 0.15;
  double h_phase = 1.0;
  double h_noise_sd = 0.05;
  double h_clamp_lo = 0.2;
  double h_clamp_hi = 0.95;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Deterministic in (cfg, seed). Each day draws the temperature noise first,
// then the humidity noise, from one Rng seeded with `seed`.
WeatherSeries generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

// CSV with header `day,t_out_c,rh_out`, six decimals, LF endings.
std::string format_scenario_csv(std::span<const WeatherSample> series);
void save_scenario(std::span<const WeatherSample> series,
                   const std::filesystem::path& path);

// `source` names the input in error messages.
WeatherSeries parse_scenario_csv(std::istream& in, const std::string& source);
WeatherSeries load_scenario(const std::filesystem::path& path);

}  // namespace thermorl

#endif  // THERMORL_SCENARIO_HPP_
