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

#include "thermorl/thermorl.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "thermorl/config.hpp"
#include "thermorl/ddpg.hpp"
#include "thermorl/error.hpp"
#include "thermorl/eval.hpp"
#include "thermorl/log.hpp"
#include "thermorl/scenario.hpp"

struct thermorl_config {
  thermorl::RunConfig value;
};
struct thermorl_scenario {
  thermorl::WeatherSeries value;
};
struct thermorl_agent {
  thermorl::ddpg::Agent value;
};
struct thermorl_train_log {
  std::vector<thermorl::ddpg::EpisodeStats> value;
};
struct thermorl_report {
  thermorl::eval::EvalReport value;
};

namespace {

thread_local std::string g_last_error;

thermorl_status fail(thermorl_status status, std::string msg) {
  g_last_error = std::move(msg);
  return status;
}

thermorl_status status_of(thermorl::ErrorKind kind) {
  switch (kind) {
    case thermorl::ErrorKind::config: return THERMORL_ERR_CONFIG;
    case thermorl::ErrorKind::io: return THERMORL_ERR_IO;
    case thermorl::ErrorKind::parse: return THERMORL_ERR_PARSE;
    case thermorl::ErrorKind::domain: return THERMORL_ERR_DOMAIN;
    case thermorl::ErrorKind::state: return THERMORL_ERR_STATE;
  }
  return THERMORL_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
thermorl_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return THERMORL_OK;
  } catch (const thermorl::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(THERMORL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(THERMORL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(THERMORL_ERR_INTERNAL, "unknown error");
  }
}

bool any_null() { return false; }
template <typename P, typename... Rest>
bool any_null(const P* p, const Rest*... rest) {
  return p == nullptr || any_null(rest...);
}

thermorl_status null_argument() {
  return fail(THERMORL_ERR_INVALID_ARGUMENT, "null handle or pointer argument");
}

thermorl::WeatherSample checked_sample(double t_out, double rh_out) {
  if (!std::isfinite(t_out) || !std::isfinite(rh_out) || rh_out < 0.0 || rh_out > 1.0) {
    throw thermorl::DomainError("weather sample needs finite t_out and rh_out in [0, 1]");
  }
  return {0, t_out, rh_out};
}

}  // namespace

extern "C" {

const char* thermorl_version(void) { return "1.0.0"; }

const char* thermorl_last_error(void) { return g_last_error.c_str(); }

const char* thermorl_status_name(thermorl_status status) {
  switch (status) {
    case THERMORL_OK: return "ok";
    case THERMORL_ERR_CONFIG: return "configuration error";
    case THERMORL_ERR_IO: return "I/O error";
    case THERMORL_ERR_PARSE: return "parse error";
    case THERMORL_ERR_DOMAIN: return "domain error";
    case THERMORL_ERR_STATE: return "state error";
    case THERMORL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case THERMORL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void thermorl_set_log_level(int level) {
  if (level < 0) level = 0;
  if (level > 4) level = 4;
  thermorl::log::set_level(static_cast<thermorl::log::Level>(level));
}

thermorl_status thermorl_config_new(thermorl_config** out) {
  if (any_null(out)) return null_argument();
  return guard([&] { *out = new thermorl_config{}; });
}

void thermorl_config_free(thermorl_config* cfg) { delete cfg; }

thermorl_status thermorl_config_load_file(thermorl_config* cfg, const char* path) {
  if (any_null(cfg, path)) return null_argument();
  return guard([&] { thermorl::apply_config_file(cfg->value, path); });
}

thermorl_status thermorl_config_set(thermorl_config* cfg, const char* key, const char* value) {
  if (any_null(cfg, key, value)) return null_argument();
  return guard([&] { thermorl::apply_setting(cfg->value, key, value); });
}

thermorl_status thermorl_config_validate(const thermorl_config* cfg) {
  if (any_null(cfg)) return null_argument();
  return guard([&] { cfg->value.validate(); });
}

thermorl_status thermorl_config_seed(const thermorl_config* cfg, uint64_t* out) {
  if (any_null(cfg, out)) return null_argument();
  *out = cfg->value.seed;
  return THERMORL_OK;
}

thermorl_status thermorl_scenario_generate(const thermorl_config* cfg, thermorl_scenario** out) {
  if (any_null(cfg, out)) return null_argument();
  return guard([&] {
    *out = new thermorl_scenario{thermorl::generate_scenario(cfg->value.scenario, cfg->value.seed)};
  });
}

thermorl_status thermorl_scenario_load(const char* path, thermorl_scenario** out) {
  if (any_null(path, out)) return null_argument();
  return guard([&] { *out = new thermorl_scenario{thermorl::load_scenario(path)}; });
}

thermorl_status thermorl_scenario_save(const thermorl_scenario* scenario, const char* path) {
  if (any_null(scenario, path)) return null_argument();
  return guard([&] { thermorl::save_scenario(scenario->value, path); });
}

size_t thermorl_scenario_size(const thermorl_scenario* scenario) {
  return scenario ? scenario->value.size() : 0;
}

thermorl_status thermorl_scenario_get(const thermorl_scenario* scenario, size_t index,
                                      thermorl_weather_sample* out) {
  if (any_null(scenario, out)) return null_argument();
  if (index >= scenario->value.size()) {
    return fail(THERMORL_ERR_DOMAIN, "scenario index " + std::to_string(index) + " out of range");
  }
  const auto& s = scenario->value[index];
  *out = {static_cast<uint64_t>(s.day), s.t_out, s.rh_out};
  return THERMORL_OK;
}

void thermorl_scenario_free(thermorl_scenario* scenario) { delete scenario; }

thermorl_status thermorl_train(const thermorl_config* cfg, const thermorl_scenario* scenario,
                               thermorl_agent** agent_out, thermorl_train_log** log_out) {
  if (any_null(cfg, scenario, agent_out, log_out)) return null_argument();
  return guard([&] {
    const auto& c = cfg->value;
    c.validate();
    std::optional<thermorl::ScenarioConfig> regenerate;
    if (c.agent.fresh_scenario) regenerate = c.scenario;
    auto result = thermorl::ddpg::train(scenario->value, c.env, c.agent, regenerate);
    auto agent = std::make_unique<thermorl_agent>(thermorl_agent{std::move(result.agent)});
    *log_out = new thermorl_train_log{std::move(result.log)};
    *agent_out = agent.release();
  });
}

size_t thermorl_train_log_size(const thermorl_train_log* log) { return log ? log->value.size() : 0; }

thermorl_status thermorl_train_log_get(const thermorl_train_log* log, size_t index,
                                       thermorl_episode_stats* out) {
  if (any_null(log, out)) return null_argument();
  if (index >= log->value.size()) {
    return fail(THERMORL_ERR_DOMAIN, "train log index " + std::to_string(index) + " out of range");
  }
  const auto& e = log->value[index];
  *out = {static_cast<uint64_t>(e.episode), e.mean_reward, e.sigma};
  return THERMORL_OK;
}

thermorl_status thermorl_train_log_save(const thermorl_train_log* log, const char* path) {
  if (any_null(log, path)) return null_argument();
  return guard([&] { thermorl::ddpg::save_train_log(log->value, path); });
}

void thermorl_train_log_free(thermorl_train_log* log) { delete log; }

thermorl_status thermorl_agent_load(const char* path, thermorl_agent** out) {
  if (any_null(path, out)) return null_argument();
  return guard([&] { *out = new thermorl_agent{thermorl::ddpg::load_agent(path)}; });
}

thermorl_status thermorl_agent_save(const thermorl_agent* agent, const char* path) {
  if (any_null(agent, path)) return null_argument();
  return guard([&] { thermorl::ddpg::save_agent(agent->value, path); });
}

thermorl_status thermorl_agent_setpoint(const thermorl_agent* agent, const thermorl_config* cfg,
                                        double t_out_c, double rh_out, double* out_setpoint_c) {
  if (any_null(agent, cfg, out_setpoint_c)) return null_argument();
  return guard([&] {
    *out_setpoint_c = thermorl::ddpg::greedy_setpoint(agent->value, checked_sample(t_out_c, rh_out),
                                                      cfg->value.env);
  });
}

void thermorl_agent_free(thermorl_agent* agent) { delete agent; }

thermorl_status thermorl_evaluate(const thermorl_config* cfg, const thermorl_agent* agent,
                                  const thermorl_scenario* scenario, thermorl_report** out) {
  if (any_null(cfg, agent, scenario, out)) return null_argument();
  return guard([&] {
    *out = new thermorl_report{
        thermorl::eval::compare(agent->value, scenario->value, cfg->value.env, cfg->value.fuel)};
  });
}

thermorl_status thermorl_report_summary_get(const thermorl_report* report,
                                            thermorl_report_summary* out) {
  if (any_null(report, out)) return null_argument();
  const auto s = thermorl::eval::summarize(report->value);
  *out = {s.area_fixed, s.area_agent, s.improvement_pct, s.policy_oracle_mae, s.fuel_daily,
          s.fuel_annual};
  return THERMORL_OK;
}

thermorl_status thermorl_report_save_csv(const thermorl_report* report, const char* path) {
  if (any_null(report, path)) return null_argument();
  return guard([&] { thermorl::eval::save_eval_csv(report->value, path); });
}

thermorl_status thermorl_report_save_json(const thermorl_report* report, const char* path) {
  if (any_null(report, path)) return null_argument();
  return guard([&] { thermorl::eval::save_report_json(thermorl::eval::summarize(report->value), path); });
}

void thermorl_report_free(thermorl_report* report) { delete report; }

thermorl_status thermorl_report_load_json(const char* path, thermorl_report_summary* out) {
  if (any_null(path, out)) return null_argument();
  return guard([&] {
    const auto s = thermorl::eval::load_report_json(path);
    *out = {s.area_fixed, s.area_agent, s.improvement_pct, s.policy_oracle_mae, s.fuel_daily,
            s.fuel_annual};
  });
}

thermorl_status thermorl_oracle_setpoint(const thermorl_config* cfg, double t_out_c, double rh_out,
                                         double* out_setpoint_c) {
  if (any_null(cfg, out_setpoint_c)) return null_argument();
  return guard([&] {
    cfg->value.env.validate();
    *out_setpoint_c = thermorl::eval::oracle_setpoint(checked_sample(t_out_c, rh_out),
                                                      cfg->value.env.weights, cfg->value.env.comfort);
  });
}

thermorl_status thermorl_improvement_pct(double area_fixed, double area_agent, double* out_pct) {
  if (any_null(out_pct)) return null_argument();
  return guard([&] { *out_pct = thermorl::eval::improvement_pct(area_fixed, area_agent); });
}

thermorl_status thermorl_fuel_projection_get(const thermorl_config* cfg, double improvement_pct,
                                             thermorl_fuel_projection* out) {
  if (any_null(cfg, out)) return null_argument();
  return guard([&] {
    cfg->value.fuel.validate();
    const auto r = thermorl::eval::fuel_report(improvement_pct, cfg->value.fuel);
    *out = {r.gallons_daily, r.daily, r.annual};
  });
}

}  // extern "C"
