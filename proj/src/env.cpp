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

#include "thermorl/env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "text.hpp"
#include "thermorl/error.hpp"
#include "thermorl/log.hpp"

namespace thermorl {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void ComfortConfig::validate() const {
  require(std::isfinite(t_fixed), "comfort.t_fixed must be finite");
  require(std::isfinite(band_delta) && band_delta > 0.0, "comfort.band_delta must be > 0");
  require(rh_in_target >= 0.0 && rh_in_target <= 1.0, "comfort.rh_in_target must be in [0, 1]");
}

void RewardWeights::validate() const {
  for (double w : {c_power, c_humidity, c_comfort, p_fixed, p_per_deg}) {
    require(std::isfinite(w) && w >= 0.0, "reward weights must be finite and >= 0");
  }
  require(c_comfort > 0.0, "reward.c_comfort must be > 0");
}

void StateNorm::validate() const {
  require(std::isfinite(t_lo) && std::isfinite(t_hi) && t_lo < t_hi,
          "norm.t_lo must be < norm.t_hi");
}

ClampResult clamp_setpoint(double t_req, const ComfortConfig& comfort) {
  if (!std::isfinite(t_req)) throw DomainError("requested setpoint is not finite");
  const double lo = comfort.band_low();
  const double hi = comfort.band_high();
  return {std::clamp(t_req, lo, hi), std::max({lo - t_req, t_req - hi, 0.0})};
}

RewardBreakdown reward(const WeatherSample& sample, double t_req,
                       const RewardWeights& weights, const ComfortConfig& comfort) {
  const auto [t_applied, violation] = clamp_setpoint(t_req, comfort);
  const double gap = std::max(sample.t_out - t_applied, 0.0);
  const double humidity_factor = 1.0 + weights.c_humidity * sample.rh_out;
  const double offset = t_applied - comfort.t_fixed;

  RewardBreakdown r;
  r.t_applied = t_applied;
  r.violation_deg = violation;
  r.effort_cost = weights.c_power * gap * gap * humidity_factor;
  r.comfort_cost = weights.c_comfort * offset * offset;
  r.violation_cost = violation > 0.0 ? weights.p_fixed + weights.p_per_deg * violation : 0.0;
  r.total = -(r.effort_cost + r.comfort_cost + r.violation_cost);
  return r;
}

std::array<double, 2> normalize_state(const WeatherSample& sample, const StateNorm& norm) {
  double t = sample.t_out;
  if (t < norm.t_lo || t > norm.t_hi) {
    log::warning("outdoor temperature " + text::fixed(t, 3) + " outside normalization range; clamped");
    t = std::clamp(t, norm.t_lo, norm.t_hi);
  }
  return {2.0 * (t - norm.t_lo) / (norm.t_hi - norm.t_lo) - 1.0, 2.0 * sample.rh_out - 1.0};
}

Environment::Environment(WeatherSeries series, const ComfortConfig& comfort,
                         const RewardWeights& weights)
    : series_(std::move(series)), comfort_(comfort), weights_(weights) {
  if (series_.empty()) throw ConfigError("environment needs a non-empty weather series");
  comfort_.validate();
  weights_.validate();
}

const WeatherSample& Environment::reset() {
  cursor_ = 0;
  return series_.front();
}

const WeatherSample& Environment::observe() const {
  if (terminal()) throw StateError("episode is over; no current sample");
  return series_[cursor_];
}

StepResult Environment::step(double t_req) {
  if (terminal()) throw StateError("step called after the episode ended; call reset()");
  StepResult out;
  out.reward = reward(series_[cursor_], t_req, weights_, comfort_);
  ++cursor_;
  if (!terminal()) out.next = series_[cursor_];
  return out;
}

}  // namespace thermorl
