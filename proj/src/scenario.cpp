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

#include "thermorl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "text.hpp"
#include "thermorl/error.hpp"
#include "thermorl/rng.hpp"

namespace thermorl {
namespace {

constexpr const char* kHeader = "day,t_out_c,rh_out";

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("invalid scenario config: ") + what);
}

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line,
                             const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(n_days >= 1, "n_days must be >= 1");
  require(finite_all({t_base, t_amp, t_period, t_noise_sd, h_base, h_amp, h_phase,
                      h_noise_sd, h_clamp_lo, h_clamp_hi}),
          "all fields must be finite");
  require(t_period > 0.0, "t_period must be > 0");
  require(t_noise_sd >= 0.0, "t_noise_sd must be >= 0");
  require(h_noise_sd >= 0.0, "h_noise_sd must be >= 0");
  require(0.0 <= h_clamp_lo && h_clamp_lo < h_clamp_hi && h_clamp_hi <= 1.0,
          "h_clamp must satisfy 0 <= lo < hi <= 1");
}

WeatherSeries generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  WeatherSeries series;
  series.reserve(cfg.n_days);
  for (std::size_t d = 0; d < cfg.n_days; ++d) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(d) / cfg.t_period;
    const double eps_t = rng.normal(0.0, cfg.t_noise_sd);
    const double eps_h = rng.normal(0.0, cfg.h_noise_sd);
    const double t = cfg.t_base + cfg.t_amp * std::sin(phase) + eps_t;
    const double h = cfg.h_base + cfg.h_amp * std::sin(phase + cfg.h_phase) + eps_h;
    series.push_back({d, t, std::clamp(h, cfg.h_clamp_lo, cfg.h_clamp_hi)});
  }
  return series;
}

std::string format_scenario_csv(std::span<const WeatherSample> series) {
  std::string out = kHeader;
  out += '\n';
  for (const auto& s : series) {
    out += std::to_string(s.day);
    out += ',';
    out += text::fixed(s.t_out, 6);
    out += ',';
    out += text::fixed(s.rh_out, 6);
    out += '\n';
  }
  return out;
}

void save_scenario(std::span<const WeatherSample> series,
                   const std::filesystem::path& path) {
  if (series.empty()) throw DomainError("save_scenario: series is empty");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_scenario_csv(series);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

WeatherSeries parse_scenario_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) parse_fail(source, 1, "empty input, expected header '" +
                                                         std::string(kHeader) + "'");
  if (text::trim(line) != kHeader) {
    parse_fail(source, 1, "bad header, expected '" + std::string(kHeader) + "'");
  }
  WeatherSeries series;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line, ',');
    if (fields.size() != 3) {
      parse_fail(source, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    }
    const auto day = text::to_int(fields[0]);
    const auto t = text::to_double(fields[1]);
    const auto h = text::to_double(fields[2]);
    if (!day || *day < 0) parse_fail(source, line_no, "day must be a nonnegative integer");
    if (!t || !std::isfinite(*t)) parse_fail(source, line_no, "t_out_c is not a number");
    if (!h || !std::isfinite(*h)) parse_fail(source, line_no, "rh_out is not a number");
    if (*t < kMinOutdoorTemp || *t > kMaxOutdoorTemp) {
      parse_fail(source, line_no, "t_out_c out of range [-20, 60]");
    }
    if (*h < 0.0 || *h > 1.0) parse_fail(source, line_no, "rh_out out of range [0, 1]");
    series.push_back({static_cast<std::size_t>(*day), *t, *h});
  }
  return series;
}

WeatherSeries load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario " + path.string());
  return parse_scenario_csv(in, path.string());
}

}  // namespace thermorl
