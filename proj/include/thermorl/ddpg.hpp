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

#ifndef THERMORL_DDPG_HPP_
#define THERMORL_DDPG_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "thermorl/env.hpp"
#include "thermorl/nn.hpp"
#include "thermorl/rng.hpp"
#include "thermorl/scenario.hpp"

namespace thermorl::ddpg {

using State = std::array<double, 2>;  // normalized (t_out, rh_out)

struct Transition {
  State state{};
  double action = 0.0;  // normalized, in [-1, 1]
  double reward = 0.0;
  State next_state{};
  bool done = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Fixed-capacity FIFO ring of transitions.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  // Throws DomainError for a non-finite transition or action outside [-1, 1].
  void push(const Transition& t);
  // Uniform with replacement. Throws StateError if size() < batch_size.
  std::vector<Transition> sample(std::size_t batch_size, Rng& rng) const;

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t inserted() const { return inserted_; }
  // Oldest first.
  std::vector<Transition> contents() const;

 private:
  std::size_t capacity_;
  std::vector<Transition> data_;
  std::size_t head_ = 0;  // slot the next push overwrites once full
  std::uint64_t inserted_ = 0;
};

// Discrete Ornstein-Uhlenbeck process, x <- x + theta * (mu - x) + sigma * z.
struct OUNoise {
  double theta = 0.15;
  double mu = 0.0;
  double sigma = 0.2;
  double sigma_decay = 0.995;  // multiplied into sigma once per episode
  double x = 0.0;

  void reset() { x = mu; }
};

double ou_next(OUNoise& noise, double z);
double ou_next(OUNoise& noise, Rng& rng);

struct AgentConfig {
  std::vector<std::size_t> actor_hidden{64, 64};   // relu layers, tanh output
  std::vector<std::size_t> critic_hidden{64, 64};  // relu layers, identity output
  double lr_actor = 1e-3;
  double lr_critic = 1e-3;
  double gamma = 0.0;
  double tau = 0.01;
  std::size_t buffer_capacity = 10000;
  std::size_t batch_size = 64;
  std::size_t episodes = 200;
  std::size_t warmup_steps = 500;
  double ou_theta = 0.15;
  double ou_mu = 0.0;
  double ou_sigma = 0.2;
  double ou_sigma_decay = 0.995;
  // Train on a freshly generated weather series each episode instead of
  // replaying the given one.
  bool fresh_scenario = false;
  std::uint64_t seed = 42;

  void validate() const;
  std::vector<nn::LayerSpec> actor_specs() const;
  std::vector<nn::LayerSpec> critic_specs() const;

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

nlohmann::ordered_json to_json(const AgentConfig& cfg);
AgentConfig agent_config_from_json(const nlohmann::json& j);

struct Agent {
  AgentConfig config;
  nn::Network actor;
  nn::Network critic;
  nn::Network actor_target;
  nn::Network critic_target;
  nn::AdamState actor_opt;
  nn::AdamState critic_opt;
  OUNoise noise;
};

// Fresh agent; targets are exact copies of the online networks.
Agent make_agent(const AgentConfig& cfg);

struct Action {
  double policy = 0.0;  // actor output before noise
  double applied = 0.0; // after noise and clamping to [-1, 1]
  double t_req = 0.0;   // deg C
};

// Maps the applied action onto the comfort band: t_fixed + band_delta * u.
Action act(Agent& agent, const State& state, bool explore, Rng& rng, const ComfortConfig& comfort);
double greedy_setpoint(const Agent& agent, const WeatherSample& sample, const EnvParams& env);

// y_i = r_i + gamma * (1 - done_i) * Q'(s'_i, mu'(s'_i))
nn::Vector critic_targets(std::span<const Transition> batch, const nn::Network& actor_target,
                          const nn::Network& critic_target, double gamma);

// theta' <- theta' + tau * (theta - theta'). Throws DomainError on shape
// mismatch or tau outside (0, 1].
void soft_update(nn::Network& target, const nn::Network& online, double tau);

struct TrainStats {
  double critic_loss = 0.0;      // mean squared TD error before the update
  double actor_objective = 0.0;  // mean Q(s, mu(s)) before the actor update
};

// One critic regression step, one actor ascent step through dQ/da, then soft
// target updates. Throws DomainError unless batch.size() == config.batch_size.
TrainStats train_step(Agent& agent, std::span<const Transition> batch);

struct EpisodeStats {
  std::size_t episode = 0;
  double mean_reward = 0.0;
  double sigma = 0.0;  // exploration scale used during the episode
};

struct TrainResult {
  Agent agent;
  std::vector<EpisodeStats> log;
};

// Single-threaded and deterministic in config.seed. When cfg.fresh_scenario
// is set, `regenerate` supplies the generator config for each episode.
TrainResult train(const WeatherSeries& scenario, const EnvParams& env, const AgentConfig& cfg,
                  const std::optional<ScenarioConfig>& regenerate = std::nullopt);

// `episode,mean_reward,sigma`
std::string format_train_log_csv(std::span<const EpisodeStats> log);
void save_train_log(std::span<const EpisodeStats> log, const std::filesystem::path& path);

// {"format_version":1,"config":{..},"actor":..,"critic":..,"actor_target":..,
//  "critic_target":..}; optimizer moments are not stored.
nlohmann::ordered_json to_json(const Agent& agent);
Agent agent_from_json(const nlohmann::json& j);
void save_agent(const Agent& agent, const std::filesystem::path& path);
Agent load_agent(const std::filesystem::path& path);

}  // namespace thermorl::ddpg

#endif  // THERMORL_DDPG_HPP_
