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

#include "thermorl/ddpg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "text.hpp"
#include "thermorl/error.hpp"
#include "thermorl/log.hpp"

namespace thermorl::ddpg {
namespace {

// Sub-seed streams derived from AgentConfig::seed.
constexpr std::uint64_t kActorStream = 1;
constexpr std::uint64_t kCriticStream = 2;
constexpr std::uint64_t kTrainStream = 3;
constexpr std::uint64_t kScenarioStreamBase = 1000;

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("invalid agent config: ") + what);
}

bool finite_state(const State& s) { return std::isfinite(s[0]) && std::isfinite(s[1]); }

nn::Batch critic_inputs(std::span<const Transition> batch, const nn::Batch& actions) {
  nn::Batch in;
  in.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    in.push_back({batch[i].state[0], batch[i].state[1], actions[i][0]});
  }
  return in;
}

nn::Batch states_of(std::span<const Transition> batch, bool next) {
  nn::Batch out;
  out.reserve(batch.size());
  for (const auto& t : batch) {
    const State& s = next ? t.next_state : t.state;
    out.push_back({s[0], s[1]});
  }
  return out;
}

nn::Network network_section(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("agent checkpoint: missing ") + key + " section");
  return nn::network_from_json(j.at(key), key);
}

}  // namespace

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw ConfigError("replay buffer capacity must be positive");
  data_.reserve(std::min<std::size_t>(capacity_, 1 << 16));
}

void ReplayBuffer::push(const Transition& t) {
  if (!finite_state(t.state) || !finite_state(t.next_state) || !std::isfinite(t.reward) ||
      !std::isfinite(t.action) || t.action < -1.0 || t.action > 1.0) {
    throw DomainError("invalid transition: non-finite value or action outside [-1, 1]");
  }
  if (data_.size() < capacity_) {
    data_.push_back(t);
  } else {
    data_[head_] = t;
    head_ = (head_ + 1) % capacity_;
  }
  ++inserted_;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t batch_size, Rng& rng) const {
  if (batch_size == 0 || data_.size() < batch_size) {
    throw StateError("replay buffer holds " + std::to_string(data_.size()) +
                     " transitions, cannot sample a batch of " + std::to_string(batch_size));
  }
  std::vector<Transition> out;
  out.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) out.push_back(data_[rng.index(data_.size())]);
  return out;
}

std::vector<Transition> ReplayBuffer::contents() const {
  std::vector<Transition> out;
  out.reserve(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) out.push_back(data_[(head_ + i) % data_.size()]);
  return out;
}

double ou_next(OUNoise& noise, double z) {
  noise.x = noise.x + noise.theta * (noise.mu - noise.x) + noise.sigma * z;
  return noise.x;
}

double ou_next(OUNoise& noise, Rng& rng) { return ou_next(noise, rng.normal()); }

void AgentConfig::validate() const {
  require(!actor_hidden.empty() && !critic_hidden.empty(), "hidden layer lists must be non-empty");
  auto positive = [](std::size_t n) { return n > 0; };
  require(std::all_of(actor_hidden.begin(), actor_hidden.end(), positive) &&
              std::all_of(critic_hidden.begin(), critic_hidden.end(), positive),
          "hidden layer widths must be positive");
  require(std::isfinite(lr_actor) && lr_actor > 0.0, "lr_actor must be > 0");
  require(std::isfinite(lr_critic) && lr_critic > 0.0, "lr_critic must be > 0");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must be in [0, 1]");
  require(tau > 0.0 && tau <= 1.0, "tau must be in (0, 1]");
  require(buffer_capacity > 0, "buffer_capacity must be positive");
  require(batch_size > 0 && batch_size <= buffer_capacity, "batch_size must be in [1, buffer_capacity]");
  require(std::isfinite(ou_theta) && ou_theta >= 0.0, "ou_theta must be >= 0");
  require(std::isfinite(ou_sigma) && ou_sigma >= 0.0, "ou_sigma must be >= 0");
  require(std::isfinite(ou_mu), "ou_mu must be finite");
  require(std::isfinite(ou_sigma_decay) && ou_sigma_decay >= 0.0, "ou_sigma_decay must be >= 0");
}

std::vector<nn::LayerSpec> AgentConfig::actor_specs() const {
  std::vector<nn::LayerSpec> specs;
  std::size_t in = 2;
  for (std::size_t h : actor_hidden) {
    specs.push_back({in, h, nn::Activation::relu});
    in = h;
  }
  specs.push_back({in, 1, nn::Activation::tanh});
  return specs;
}

std::vector<nn::LayerSpec> AgentConfig::critic_specs() const {
  std::vector<nn::LayerSpec> specs;
  std::size_t in = 3;
  for (std::size_t h : critic_hidden) {
    specs.push_back({in, h, nn::Activation::relu});
    in = h;
  }
  specs.push_back({in, 1, nn::Activation::identity});
  return specs;
}

nlohmann::ordered_json to_json(const AgentConfig& cfg) {
  nlohmann::ordered_json j;
  j["actor_hidden"] = cfg.actor_hidden;
  j["critic_hidden"] = cfg.critic_hidden;
  j["lr_actor"] = cfg.lr_actor;
  j["lr_critic"] = cfg.lr_critic;
  j["gamma"] = cfg.gamma;
  j["tau"] = cfg.tau;
  j["buffer_capacity"] = cfg.buffer_capacity;
  j["batch_size"] = cfg.batch_size;
  j["episodes"] = cfg.episodes;
  j["warmup_steps"] = cfg.warmup_steps;
  j["ou_theta"] = cfg.ou_theta;
  j["ou_mu"] = cfg.ou_mu;
  j["ou_sigma"] = cfg.ou_sigma;
  j["ou_sigma_decay"] = cfg.ou_sigma_decay;
  j["fresh_scenario"] = cfg.fresh_scenario;
  j["seed"] = cfg.seed;
  return j;
}

AgentConfig agent_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("agent checkpoint: config must be an object");
  AgentConfig cfg;
  try {
    cfg.actor_hidden = j.at("actor_hidden").get<std::vector<std::size_t>>();
    cfg.critic_hidden = j.at("critic_hidden").get<std::vector<std::size_t>>();
    cfg.lr_actor = j.at("lr_actor").get<double>();
    cfg.lr_critic = j.at("lr_critic").get<double>();
    cfg.gamma = j.at("gamma").get<double>();
    cfg.tau = j.at("tau").get<double>();
    cfg.buffer_capacity = j.at("buffer_capacity").get<std::size_t>();
    cfg.batch_size = j.at("batch_size").get<std::size_t>();
    cfg.episodes = j.at("episodes").get<std::size_t>();
    cfg.warmup_steps = j.at("warmup_steps").get<std::size_t>();
    cfg.ou_theta = j.at("ou_theta").get<double>();
    cfg.ou_mu = j.at("ou_mu").get<double>();
    cfg.ou_sigma = j.at("ou_sigma").get<double>();
    cfg.ou_sigma_decay = j.at("ou_sigma_decay").get<double>();
    cfg.fresh_scenario = j.at("fresh_scenario").get<bool>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("agent checkpoint: bad config: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ParseError(std::string("agent checkpoint: ") + e.what());
  }
  return cfg;
}

Agent make_agent(const AgentConfig& cfg) {
  cfg.validate();
  Agent a;
  a.config = cfg;
  const auto actor_specs = cfg.actor_specs();
  const auto critic_specs = cfg.critic_specs();
  a.actor = nn::init_network(actor_specs, derive_seed(cfg.seed, kActorStream));
  a.critic = nn::init_network(critic_specs, derive_seed(cfg.seed, kCriticStream));
  a.actor_target = a.actor;
  a.critic_target = a.critic;
  a.actor_opt = nn::AdamState(a.actor, cfg.lr_actor);
  a.critic_opt = nn::AdamState(a.critic, cfg.lr_critic);
  a.noise = OUNoise{cfg.ou_theta, cfg.ou_mu, cfg.ou_sigma, cfg.ou_sigma_decay, cfg.ou_mu};
  return a;
}

Action act(Agent& agent, const State& state, bool explore, Rng& rng, const ComfortConfig& comfort) {
  Action a;
  a.policy = nn::predict(agent.actor, nn::Vector{state[0], state[1]})[0];
  a.applied = explore ? std::clamp(a.policy + ou_next(agent.noise, rng), -1.0, 1.0) : a.policy;
  a.t_req = comfort.t_fixed + comfort.band_delta * a.applied;
  return a;
}

double greedy_setpoint(const Agent& agent, const WeatherSample& sample, const EnvParams& env) {
  const auto s = normalize_state(sample, env.norm);
  const double u = nn::predict(agent.actor, nn::Vector{s[0], s[1]})[0];
  return env.comfort.t_fixed + env.comfort.band_delta * u;
}

nn::Vector critic_targets(std::span<const Transition> batch, const nn::Network& actor_target,
                          const nn::Network& critic_target, double gamma) {
  if (batch.empty()) throw DomainError("critic_targets: empty batch");
  nn::Vector y(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) y[i] = batch[i].reward;
  if (gamma == 0.0) return y;
  const auto next = states_of(batch, true);
  const auto q_next = nn::predict(critic_target, critic_inputs(batch, nn::predict(actor_target, next)));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!batch[i].done) y[i] += gamma * q_next[i][0];
  }
  return y;
}

void soft_update(nn::Network& target, const nn::Network& online, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("soft_update: tau must be in (0, 1]");
  if (!target.same_shape(online)) throw DomainError("soft_update: network shapes differ");
  // old + 1 * (new - old) can miss new by an ulp.
  if (tau == 1.0) {
    target = online;
    return;
  }
  auto blend = [tau](nn::Vector& dst, const nn::Vector& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = dst[i] + tau * (src[i] - dst[i]);
  };
  for (std::size_t k = 0; k < target.layers.size(); ++k) {
    blend(target.layers[k].weights, online.layers[k].weights);
    blend(target.layers[k].biases, online.layers[k].biases);
  }
}

TrainStats train_step(Agent& agent, std::span<const Transition> batch) {
  if (batch.size() != agent.config.batch_size) {
    throw DomainError("train_step: batch has " + std::to_string(batch.size()) +
                      " transitions, config expects " + std::to_string(agent.config.batch_size));
  }
  const double n = static_cast<double>(batch.size());
  TrainStats stats;

  // Critic: minimize mean (Q(s, a) - y)^2.
  const auto y = critic_targets(batch, agent.actor_target, agent.critic_target, agent.config.gamma);
  nn::Batch taken(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) taken[i] = {batch[i].action};
  const auto q = nn::forward(agent.critic, critic_inputs(batch, taken));
  nn::Batch d_q(batch.size(), nn::Vector(1));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double err = q.output[i][0] - y[i];
    stats.critic_loss += err * err / n;
    d_q[i][0] = 2.0 * err / n;
  }
  nn::adam_step(agent.critic, nn::backward(agent.critic, q.cache, d_q).params, agent.critic_opt);

  // Actor: ascend mean Q(s, mu(s)); descend its negation.
  const auto states = states_of(batch, false);
  const auto mu = nn::forward(agent.actor, states);
  const auto q_pi = nn::forward(agent.critic, critic_inputs(batch, mu.output));
  nn::Batch d_objective(batch.size(), nn::Vector{-1.0 / n});
  for (const auto& row : q_pi.output) stats.actor_objective += row[0] / n;
  const auto through_critic = nn::backward(agent.critic, q_pi.cache, d_objective);
  nn::Batch d_action(batch.size(), nn::Vector(1));
  for (std::size_t i = 0; i < batch.size(); ++i) d_action[i][0] = through_critic.inputs[i][2];
  nn::adam_step(agent.actor, nn::backward(agent.actor, mu.cache, d_action).params, agent.actor_opt);

  soft_update(agent.critic_target, agent.critic, agent.config.tau);
  soft_update(agent.actor_target, agent.actor, agent.config.tau);
  return stats;
}

TrainResult train(const WeatherSeries& scenario, const EnvParams& env, const AgentConfig& cfg,
                  const std::optional<ScenarioConfig>& regenerate) {
  if (scenario.empty()) throw ConfigError("training scenario is empty");
  env.validate();
  cfg.validate();
  if (cfg.fresh_scenario && !regenerate) {
    throw ConfigError("fresh_scenario requires a scenario generator config");
  }

  TrainResult result{make_agent(cfg), {}};
  Agent& agent = result.agent;
  Rng rng(derive_seed(cfg.seed, kTrainStream));
  ReplayBuffer buffer(cfg.buffer_capacity);
  std::size_t total_steps = 0;

  for (std::size_t episode = 0; episode < cfg.episodes; ++episode) {
    WeatherSeries series = cfg.fresh_scenario
        ? generate_scenario(*regenerate, derive_seed(cfg.seed, kScenarioStreamBase + episode))
        : scenario;
    Environment environment(std::move(series), env.comfort, env.weights);
    agent.noise.reset();

    double reward_sum = 0.0;
    WeatherSample current = environment.reset();
    while (!environment.terminal()) {
      const State s = normalize_state(current, env.norm);
      double u = 0.0;
      if (total_steps < cfg.warmup_steps) {
        u = rng.uniform(-1.0, 1.0);
      } else {
        u = act(agent, s, true, rng, env.comfort).applied;
      }
      const auto step = environment.step(env.comfort.t_fixed + env.comfort.band_delta * u);
      reward_sum += step.reward.total;
      const State next = step.next ? normalize_state(*step.next, env.norm) : s;
      buffer.push({s, u, step.reward.total, next, step.terminal()});
      ++total_steps;
      if (total_steps > cfg.warmup_steps && buffer.size() >= cfg.batch_size) {
        const auto batch = buffer.sample(cfg.batch_size, rng);
        train_step(agent, batch);
      }
      if (step.next) current = *step.next;
    }

    EpisodeStats stats{episode, reward_sum / static_cast<double>(environment.size()), agent.noise.sigma};
    result.log.push_back(stats);
    log::debug("episode " + std::to_string(episode) + " mean_reward " + text::fixed(stats.mean_reward, 4));
    agent.noise.sigma *= agent.noise.sigma_decay;
  }
  return result;
}

std::string format_train_log_csv(std::span<const EpisodeStats> log) {
  std::string out = "episode,mean_reward,sigma\n";
  for (const auto& e : log) {
    out += std::to_string(e.episode) + ',' + text::fixed(e.mean_reward, 6) + ',' +
           text::fixed(e.sigma, 6) + '\n';
  }
  return out;
}

void save_train_log(std::span<const EpisodeStats> log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_train_log_csv(log);
  if (!out) throw IoError("failed writing " + path.string());
}

nlohmann::ordered_json to_json(const Agent& agent) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["config"] = to_json(agent.config);
  j["actor"] = nn::to_json(agent.actor);
  j["critic"] = nn::to_json(agent.critic);
  j["actor_target"] = nn::to_json(agent.actor_target);
  j["critic_target"] = nn::to_json(agent.critic_target);
  return j;
}

Agent agent_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("agent checkpoint: expected a JSON object");
  if (!j.contains("format_version")) throw ParseError("agent checkpoint: missing format_version");
  const auto& ver = j.at("format_version");
  if (!ver.is_number_integer() || ver.get<std::int64_t>() != 1) {
    throw ParseError("agent checkpoint: unsupported format_version " + ver.dump() + " (expected 1)");
  }
  if (!j.contains("config")) throw ParseError("agent checkpoint: missing config section");
  Agent a = make_agent(agent_config_from_json(j.at("config")));
  a.actor = network_section(j, "actor");
  a.critic = network_section(j, "critic");
  a.actor_target = network_section(j, "actor_target");
  a.critic_target = network_section(j, "critic_target");

  auto check = [](const nn::Network& net, const std::vector<nn::LayerSpec>& specs, const char* name) {
    bool ok = net.layers.size() == specs.size();
    for (std::size_t k = 0; ok && k < specs.size(); ++k) {
      ok = net.layers[k].in_dim == specs[k].in_dim && net.layers[k].out_dim == specs[k].out_dim &&
           net.layers[k].activation == specs[k].activation;
    }
    if (!ok) throw ParseError(std::string("agent checkpoint: ") + name + " does not match config dims");
  };
  check(a.actor, a.config.actor_specs(), "actor");
  check(a.actor_target, a.config.actor_specs(), "actor_target");
  check(a.critic, a.config.critic_specs(), "critic");
  check(a.critic_target, a.config.critic_specs(), "critic_target");
  a.actor_opt = nn::AdamState(a.actor, a.config.lr_actor);
  a.critic_opt = nn::AdamState(a.critic, a.config.lr_critic);
  return a;
}

void save_agent(const Agent& agent, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(agent).dump() << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

Agent load_agent(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("checkpoint not found: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return agent_from_json(j);
}

}  // namespace thermorl::ddpg
