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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "thermorl/env.hpp"
#include "thermorl/error.hpp"
#include "thermorl/log.hpp"
#include "thermorl/rng.hpp"

using namespace thermorl;

namespace {

// Independent evaluation of the reward rules, written branch by branch.
double reference_reward(double t_out, double rh, double t_req, const RewardWeights& w,
                        const ComfortConfig& c) {
  double t = t_req;
  double outside = 0.0;
  if (t_req < c.t_fixed - c.band_delta) {
    t = c.t_fixed - c.band_delta;
    outside = t - t_req;
  } else if (t_req > c.t_fixed + c.band_delta) {
    t = c.t_fixed + c.band_delta;
    outside = t_req - t;
  }
  double cost = 0.0;
  if (t_out > t) cost += w.c_power * (t_out - t) * (t_out - t) * (1.0 + w.c_humidity * rh);
  cost += w.c_comfort * (t - c.t_fixed) * (t - c.t_fixed);
  if (outside > 0.0) cost += w.p_fixed + w.p_per_deg * outside;
  return -cost;
}

WeatherSeries series_of(std::size_t n) {
  WeatherSeries s;
  for (std::size_t d = 0; d < n; ++d) s.push_back({d, 30.0 + static_cast<double>(d), 0.5});
  return s;
}

}  // namespace

TEST_CASE("clamp_setpoint examples") {
  const ComfortConfig c;
  CHECK(c.band_low() == 20.0);
  CHECK(c.band_high() == 24.0);
  auto r = clamp_setpoint(22.0, c);
  CHECK(r.t_applied == 22.0);
  CHECK(r.violation_deg == 0.0);
  r = clamp_setpoint(25.0, c);
  CHECK(r.t_applied == 24.0);
  CHECK(r.violation_deg == 1.0);
  r = clamp_setpoint(19.5, c);
  CHECK(r.t_applied == 20.0);
  CHECK(r.violation_deg == 0.5);
  CHECK_THROWS_AS(clamp_setpoint(std::numeric_limits<double>::quiet_NaN(), c), DomainError);
  CHECK_THROWS_AS(clamp_setpoint(std::numeric_limits<double>::infinity(), c), DomainError);
}

TEST_CASE("reward examples") {
  const RewardWeights w;
  const ComfortConfig c;

  auto r = reward({0, 22.0, 0.0}, 22.0, w, c);
  CHECK(r.total == 0.0);
  CHECK(r.effort_cost == 0.0);

  // 0.05 * 13^2 * 1.8
  r = reward({0, 35.0, 0.8}, 22.0, w, c);
  CHECK(r.effort_cost == doctest::Approx(15.21).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(-15.21).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(reference_reward(35.0, 0.8, 22.0, w, c)).epsilon(1e-14));

  r = reward({0, 35.0, 0.8}, 25.0, w, c);
  CHECK(r.t_applied == 24.0);
  CHECK(r.violation_deg == 1.0);
  CHECK(r.effort_cost == doctest::Approx(10.89).epsilon(1e-12));
  CHECK(r.comfort_cost == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.violation_cost == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(-34.89).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(reference_reward(35.0, 0.8, 25.0, w, c)).epsilon(1e-14));

  r = reward({0, 20.0, 0.5}, 22.0, w, c);
  CHECK(r.effort_cost == 0.0);
  CHECK(r.comfort_cost == 0.0);
  CHECK(r.total == 0.0);
}

TEST_CASE("reward agrees with the reference and is never positive") {
  Rng rng(11);
  const ComfortConfig c;
  for (int i = 0; i < 5000; ++i) {
    RewardWeights w;
    w.c_power = rng.uniform(0.0, 0.5);
    w.c_humidity = rng.uniform(0.0, 3.0);
    w.c_comfort = rng.uniform(0.01, 3.0);
    w.p_fixed = rng.uniform(0.0, 20.0);
    w.p_per_deg = rng.uniform(0.0, 20.0);
    const double t_out = rng.uniform(-20.0, 60.0);
    const double rh = rng.uniform();
    const double t_req = rng.uniform(10.0, 34.0);
    const auto r = reward({0, t_out, rh}, t_req, w, c);
    CHECK(r.total <= 0.0);
    CHECK(r.total == doctest::Approx(reference_reward(t_out, rh, t_req, w, c)).epsilon(1e-12));
    CHECK(r.total == -(r.effort_cost + r.comfort_cost + r.violation_cost));
    CHECK(r.t_applied >= 20.0);
    CHECK(r.t_applied <= 24.0);
  }
}

TEST_CASE("clamp is idempotent") {
  Rng rng(5);
  const ComfortConfig c;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(0.0, 50.0);
    const double once = clamp_setpoint(x, c).t_applied;
    CHECK(clamp_setpoint(once, c).t_applied == once);
    CHECK(clamp_setpoint(once, c).violation_deg == 0.0);
  }
}

TEST_CASE("reward is monotone in humidity and temperature gap") {
  const RewardWeights w;
  const ComfortConfig c;
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const double t_req = rng.uniform(20.0, 24.0);
    const double t_out = rng.uniform(t_req, 50.0);
    double prev = reward({0, t_out, 0.0}, t_req, w, c).total;
    for (double rh = 0.05; rh <= 1.0; rh += 0.05) {
      const double cur = reward({0, t_out, rh}, t_req, w, c).total;
      CHECK(cur <= prev);
      prev = cur;
    }
    const double rh = rng.uniform();
    prev = reward({0, t_req, rh}, t_req, w, c).total;
    for (double t = t_req + 0.25; t <= 55.0; t += 0.25) {
      const double cur = reward({0, t, rh}, t_req, w, c).total;
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("leaving the band costs at least the fixed penalty") {
  const RewardWeights w;
  const ComfortConfig c;
  for (double t_out : {15.0, 22.0, 30.0, 40.0}) {
    for (double rh : {0.0, 0.5, 1.0}) {
      const WeatherSample s{0, t_out, rh};
      CHECK(reward(s, 24.0 + 1e-9, w, c).total <= reward(s, 24.0, w, c).total - w.p_fixed);
      CHECK(reward(s, 20.0 - 1e-9, w, c).total <= reward(s, 20.0, w, c).total - w.p_fixed);
    }
  }
}

TEST_CASE("normalize_state maps the configured range onto [-1, 1]") {
  const StateNorm n;
  auto x = normalize_state({0, 30.0, 0.5}, n);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.0);
  x = normalize_state({0, 45.0, 1.0}, n);
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 1.0);
  x = normalize_state({0, 15.0, 0.0}, n);
  CHECK(x[0] == -1.0);
  CHECK(x[1] == -1.0);
  log::set_level(log::Level::off);
  x = normalize_state({0, 55.0, 0.2}, n);
  log::set_level(log::Level::warning);
  CHECK(x[0] == 1.0);
}

TEST_CASE("environment reset and step") {
  const ComfortConfig c;
  const RewardWeights w;

  SUBCASE("reset exposes day 0 and is idempotent") {
    Environment env(series_of(50), c, w);
    CHECK(env.reset().day == 0);
    env.step(22.0);
    CHECK(env.cursor() == 1);
    CHECK(env.reset().day == 0);
    CHECK(env.cursor() == 0);
    CHECK(env.reset() == env.reset());
  }
  SUBCASE("empty series is rejected") {
    CHECK_THROWS_AS(Environment(WeatherSeries{}, c, w), ConfigError);
  }
  SUBCASE("one-day series terminates after one step") {
    Environment env(series_of(1), c, w);
    env.reset();
    const auto r = env.step(23.0);
    CHECK(r.terminal());
    CHECK(env.terminal());
  }
  SUBCASE("transitions ignore the action and the third step fails") {
    Environment env(series_of(2), c, w);
    env.reset();
    const auto first = env.step(20.0);
    REQUIRE(first.next.has_value());
    CHECK(first.next->day == 1);
    CHECK(env.step(24.0).terminal());
    CHECK_THROWS_AS(env.step(22.0), StateError);
  }
}

TEST_CASE("observed samples do not depend on the action sequence") {
  Rng rng(3);
  WeatherSeries s;
  for (std::size_t d = 0; d < 40; ++d) s.push_back({d, rng.uniform(18.0, 40.0), rng.uniform()});
  for (int trial = 0; trial < 20; ++trial) {
    Environment a(s, ComfortConfig{}, RewardWeights{});
    Environment b(s, ComfortConfig{}, RewardWeights{});
    std::vector<WeatherSample> seen_a{a.reset()};
    std::vector<WeatherSample> seen_b{b.reset()};
    while (!a.terminal()) {
      if (auto n = a.step(rng.uniform(15.0, 30.0)).next) seen_a.push_back(*n);
      if (auto n = b.step(rng.uniform(15.0, 30.0)).next) seen_b.push_back(*n);
    }
    CHECK(b.terminal());
    CHECK(seen_a == seen_b);
  }
}

TEST_CASE("config validation") {
  ComfortConfig c;
  c.band_delta = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  RewardWeights w;
  w.c_comfort = 0.0;
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w = RewardWeights{};
  w.c_power = -1.0;
  CHECK_THROWS_AS(w.validate(), ConfigError);
  StateNorm n;
  n.t_lo = 50.0;
  CHECK_THROWS_AS(n.validate(), ConfigError);
}
