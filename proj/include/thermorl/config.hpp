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

#ifndef THERMORL_CONFIG_HPP_
#define THERMORL_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "thermorl/ddpg.hpp"
#include "thermorl/env.hpp"
#include "thermorl/eval.hpp"
#include "thermorl/scenario.hpp"

namespace thermorl {

// Every tunable of a pipeline run. File format is one `section.key = value`
// per line; `#` starts a comment. `seed` seeds both the scenario generator
// and the agent (agent.seed overrides the latter alone).
struct RunConfig {
  std::uint64_t seed = 42;
  ScenarioConfig scenario;
  EnvParams env;
  ddpg::AgentConfig agent;
  eval::FuelConfig fuel;

  void validate() const;
};

// Throws ConfigError on an unknown key or a malformed value.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// `source` names the input in error messages; line numbers are 1-based.
void apply_config_stream(RunConfig& cfg, std::istream& in, const std::string& source);
// Missing file is an IoError.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

std::vector<std::string> config_keys();

}  // namespace thermorl

#endif  // THERMORL_CONFIG_HPP_
