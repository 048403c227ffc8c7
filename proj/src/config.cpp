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

#include "thermorl/config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include "text.hpp"
#include "thermorl/error.hpp"

namespace thermorl {
namespace {

using Setter = std::function<void(RunConfig&, std::string_view)>;

[[noreturn]] void bad_value(std::string_view what, std::string_view value) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(what));
}

double as_double(std::string_view key, std::string_view v) {
  const auto d = text::to_double(v);
  if (!d) bad_value(key, v);
  return *d;
}

std::uint64_t as_uint(std::string_view key, std::string_view v) {
  const auto i = text::to_int(v);
  if (!i || *i < 0) bad_value(key, v);
  return static_cast<std::uint64_t>(*i);
}

bool as_bool(std::string_view key, std::string_view v) {
  v = text::trim(v);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v);
}

std::vector<std::size_t> as_widths(std::string_view key, std::string_view v) {
  std::vector<std::size_t> out;
  for (auto part : text::split(v, ',')) out.push_back(static_cast<std::size_t>(as_uint(key, part)));
  return out;
}

template <typename T>
Setter real(T RunConfig::*section, double T::*field) {
  return [=](RunConfig& c, std::string_view v) { (c.*section).*field = as_double("value", v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["seed"] = [](RunConfig& c, std::string_view v) { c.seed = c.agent.seed = as_uint("seed", v); };

    t["scenario.n_days"] = [](RunConfig& c, std::string_view v) {
      c.scenario.n_days = static_cast<std::size_t>(as_uint("scenario.n_days", v));
    };
    t["scenario.t_base"] = real(&RunConfig::scenario, &ScenarioConfig::t_base);
    t["scenario.t_amp"] = real(&RunConfig::scenario, &ScenarioConfig::t_amp);
    t["scenario.t_period"] = real(&RunConfig::scenario, &ScenarioConfig::t_period);
    t["scenario.t_noise_sd"] = real(&RunConfig::scenario, &ScenarioConfig::t_noise_sd);
    t["scenario.h_base"] = real(&RunConfig::scenario, &ScenarioConfig::h_base);
    t["scenario.h_amp"] = real(&RunConfig::scenario, &ScenarioConfig::h_amp);
    t["scenario.h_phase"] = real(&RunConfig::scenario, &ScenarioConfig::h_phase);
    t["scenario.h_noise_sd"] = real(&RunConfig::scenario, &ScenarioConfig::h_noise_sd);
    t["scenario.h_clamp_lo"] = real(&RunConfig::scenario, &ScenarioConfig::h_clamp_lo);
    t["scenario.h_clamp_hi"] = real(&RunConfig::scenario, &ScenarioConfig::h_clamp_hi);

    t["comfort.t_fixed"] = [](RunConfig& c, std::string_view v) { c.env.comfort.t_fixed = as_double("comfort.t_fixed", v); };
    t["comfort.band_delta"] = [](RunConfig& c, std::string_view v) { c.env.comfort.band_delta = as_double("comfort.band_delta", v); };
    t["comfort.rh_in_target"] = [](RunConfig& c, std::string_view v) { c.env.comfort.rh_in_target = as_double("comfort.rh_in_target", v); };

    t["reward.c_power"] = [](RunConfig& c, std::string_view v) { c.env.weights.c_power = as_double("reward.c_power", v); };
    t["reward.c_humidity"] = [](RunConfig& c, std::string_view v) { c.env.weights.c_humidity = as_double("reward.c_humidity", v); };
    t["reward.c_comfort"] = [](RunConfig& c, std::string_view v) { c.env.weights.c_comfort = as_double("reward.c_comfort", v); };
    t["reward.p_fixed"] = [](RunConfig& c, std::string_view v) { c.env.weights.p_fixed = as_double("reward.p_fixed", v); };
    t["reward.p_per_deg"] = [](RunConfig& c, std::string_view v) { c.env.weights.p_per_deg = as_double("reward.p_per_deg", v); };

    t["norm.t_lo"] = [](RunConfig& c, std::string_view v) { c.env.norm.t_lo = as_double("norm.t_lo", v); };
    t["norm.t_hi"] = [](RunConfig& c, std::string_view v) { c.env.norm.t_hi = as_double("norm.t_hi", v); };

    t["agent.actor_hidden"] = [](RunConfig& c, std::string_view v) { c.agent.actor_hidden = as_widths("agent.actor_hidden", v); };
    t["agent.critic_hidden"] = [](RunConfig& c, std::string_view v) { c.agent.critic_hidden = as_widths("agent.critic_hidden", v); };
    t["agent.lr_actor"] = real(&RunConfig::agent, &ddpg::AgentConfig::lr_actor);
    t["agent.lr_critic"] = real(&RunConfig::agent, &ddpg::AgentConfig::lr_critic);
    t["agent.gamma"] = real(&RunConfig::agent, &ddpg::AgentConfig::gamma);
    t["agent.tau"] = real(&RunConfig::agent, &ddpg::AgentConfig::tau);
    t["agent.buffer_capacity"] = [](RunConfig& c, std::string_view v) { c.agent.buffer_capacity = as_uint("agent.buffer_capacity", v); };
    t["agent.batch_size"] = [](RunConfig& c, std::string_view v) { c.agent.batch_size = as_uint("agent.batch_size", v); };
    t["agent.episodes"] = [](RunConfig& c, std::string_view v) { c.agent.episodes = as_uint("agent.episodes", v); };
    t["agent.warmup_steps"] = [](RunConfig& c, std::string_view v) { c.agent.warmup_steps = as_uint("agent.warmup_steps", v); };
    t["agent.ou_theta"] = real(&RunConfig::agent, &ddpg::AgentConfig::ou_theta);
    t["agent.ou_mu"] = real(&RunConfig::agent, &ddpg::AgentConfig::ou_mu);
    t["agent.ou_sigma"] = real(&RunConfig::agent, &ddpg::AgentConfig::ou_sigma);
    t["agent.ou_sigma_decay"] = real(&RunConfig::agent, &ddpg::AgentConfig::ou_sigma_decay);
    t["agent.fresh_scenario"] = [](RunConfig& c, std::string_view v) { c.agent.fresh_scenario = as_bool("agent.fresh_scenario", v); };
    t["agent.seed"] = [](RunConfig& c, std::string_view v) { c.agent.seed = as_uint("agent.seed", v); };

    t["fuel.gallons_per_day"] = real(&RunConfig::fuel, &eval::FuelConfig::gallons_per_day);
    t["fuel.cost_per_day"] = real(&RunConfig::fuel, &eval::FuelConfig::cost_per_day);
    t["fuel.days_per_year"] = [](RunConfig& c, std::string_view v) { c.fuel.days_per_year = as_uint("fuel.days_per_year", v); };
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  scenario.validate();
  env.validate();
  agent.validate();
  fuel.validate();
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  key = text::trim(key);
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  try {
    it->second(cfg, text::trim(value));
  } catch (const ConfigError&) {
    throw ConfigError("invalid value '" + std::string(text::trim(value)) + "' for " + std::string(key));
  }
}

void apply_config_stream(RunConfig& cfg, std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = text::trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("config file not found: " + path.string());
  apply_config_stream(cfg, in, path.string());
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

}  // namespace thermorl
