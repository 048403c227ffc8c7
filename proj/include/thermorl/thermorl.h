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

/*
 * C interface to the thermorl library: weather scenarios, the empirical
 * setpoint environment, DDPG training and fixed-vs-agent evaluation.
 *
 * All objects are opaque handles created by a *_new/_load/_generate call and
 * released by the matching *_free. Every fallible call returns a
 * thermorl_status; on failure thermorl_last_error() describes the problem
 * (the message is thread-local and valid until the next call on that thread).
 */
#ifndef THERMORL_H_
#define THERMORL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(THERMORL_BUILDING_LIBRARY)
#    define THERMORL_API __declspec(dllexport)
#  else
#    define THERMORL_API __declspec(dllimport)
#  endif
#else
#  define THERMORL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum thermorl_status {
  THERMORL_OK = 0,
  THERMORL_ERR_CONFIG = 1,
  THERMORL_ERR_IO = 2,
  THERMORL_ERR_PARSE = 3,
  THERMORL_ERR_DOMAIN = 4,
  THERMORL_ERR_STATE = 5,
  THERMORL_ERR_INVALID_ARGUMENT = 6, /* null handle or output pointer */
  THERMORL_ERR_INTERNAL = 7
} thermorl_status;

typedef struct thermorl_config thermorl_config;
typedef struct thermorl_scenario thermorl_scenario;
typedef struct thermorl_agent thermorl_agent;
typedef struct thermorl_train_log thermorl_train_log;
typedef struct thermorl_report thermorl_report;

typedef struct thermorl_weather_sample {
  uint64_t day;
  double t_out_c;
  double rh_out;
} thermorl_weather_sample;

typedef struct thermorl_episode_stats {
  uint64_t episode;
  double mean_reward;
  double sigma;
} thermorl_episode_stats;

typedef struct thermorl_report_summary {
  double area_fixed;
  double area_agent;
  double improvement_pct;
  double policy_oracle_mae;
  double fuel_daily;
  double fuel_annual;
} thermorl_report_summary;

typedef struct thermorl_fuel_projection {
  double gallons_daily;
  double daily;
  double annual;
} thermorl_fuel_projection;

THERMORL_API const char* thermorl_version(void);
THERMORL_API const char* thermorl_last_error(void);
THERMORL_API const char* thermorl_status_name(thermorl_status status);
/* 0 debug, 1 info, 2 warning (default), 3 error, 4 off */
THERMORL_API void thermorl_set_log_level(int level);

/* Run configuration: defaults, then a `key = value` file, then overrides. */
THERMORL_API thermorl_status thermorl_config_new(thermorl_config** out);
THERMORL_API void thermorl_config_free(thermorl_config* cfg);
THERMORL_API thermorl_status thermorl_config_load_file(thermorl_config* cfg, const char* path);
THERMORL_API thermorl_status thermorl_config_set(thermorl_config* cfg, const char* key,
                                                 const char* value);
THERMORL_API thermorl_status thermorl_config_validate(const thermorl_config* cfg);
THERMORL_API thermorl_status thermorl_config_seed(const thermorl_config* cfg, uint64_t* out);

/* Weather series. */
THERMORL_API thermorl_status thermorl_scenario_generate(const thermorl_config* cfg,
                                                        thermorl_scenario** out);
THERMORL_API thermorl_status thermorl_scenario_load(const char* path, thermorl_scenario** out);
THERMORL_API thermorl_status thermorl_scenario_save(const thermorl_scenario* scenario,
                                                    const char* path);
THERMORL_API size_t thermorl_scenario_size(const thermorl_scenario* scenario);
THERMORL_API thermorl_status thermorl_scenario_get(const thermorl_scenario* scenario, size_t index,
                                                   thermorl_weather_sample* out);
THERMORL_API void thermorl_scenario_free(thermorl_scenario* scenario);

/* Training. Both outputs are owned by the caller. */
THERMORL_API thermorl_status thermorl_train(const thermorl_config* cfg,
                                            const thermorl_scenario* scenario,
                                            thermorl_agent** agent_out,
                                            thermorl_train_log** log_out);
THERMORL_API size_t thermorl_train_log_size(const thermorl_train_log* log);
THERMORL_API thermorl_status thermorl_train_log_get(const thermorl_train_log* log, size_t index,
                                                    thermorl_episode_stats* out);
THERMORL_API thermorl_status thermorl_train_log_save(const thermorl_train_log* log,
                                                     const char* path);
THERMORL_API void thermorl_train_log_free(thermorl_train_log* log);

/* Agent checkpoints and greedy inference. */
THERMORL_API thermorl_status thermorl_agent_load(const char* path, thermorl_agent** out);
THERMORL_API thermorl_status thermorl_agent_save(const thermorl_agent* agent, const char* path);
THERMORL_API thermorl_status thermorl_agent_setpoint(const thermorl_agent* agent,
                                                     const thermorl_config* cfg, double t_out_c,
                                                     double rh_out, double* out_setpoint_c);
THERMORL_API void thermorl_agent_free(thermorl_agent* agent);

/* Fixed setpoint vs agent on a scenario. */
THERMORL_API thermorl_status thermorl_evaluate(const thermorl_config* cfg,
                                               const thermorl_agent* agent,
                                               const thermorl_scenario* scenario,
                                               thermorl_report** out);
THERMORL_API thermorl_status thermorl_report_summary_get(const thermorl_report* report,
                                                         thermorl_report_summary* out);
THERMORL_API thermorl_status thermorl_report_save_csv(const thermorl_report* report,
                                                      const char* path);
THERMORL_API thermorl_status thermorl_report_save_json(const thermorl_report* report,
                                                       const char* path);
THERMORL_API void thermorl_report_free(thermorl_report* report);
THERMORL_API thermorl_status thermorl_report_load_json(const char* path,
                                                       thermorl_report_summary* out);

/* Closed-form optimum of the reward for one day's weather. */
THERMORL_API thermorl_status thermorl_oracle_setpoint(const thermorl_config* cfg, double t_out_c,
                                                      double rh_out, double* out_setpoint_c);
THERMORL_API thermorl_status thermorl_improvement_pct(double area_fixed, double area_agent,
                                                      double* out_pct);
THERMORL_API thermorl_status thermorl_fuel_projection_get(const thermorl_config* cfg,
                                                          double improvement_pct,
                                                          thermorl_fuel_projection* out);

#ifdef __cplusplus
}
#endif

#endif /* THERMORL_H_ */
