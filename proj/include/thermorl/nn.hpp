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

#ifndef THERMORL_NN_HPP_
#define THERMORL_NN_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace thermorl::nn {

using Vector = std::vector<double>;
// One vector per sample.
using Batch = std::vector<Vector>;

enum class Activation { relu, tanh, identity };

std::string_view to_string(Activation a);
// Throws ParseError on an unknown tag.
Activation activation_from_string(std::string_view tag);

struct LayerSpec {
  std::size_t in_dim = 1;
  std::size_t out_dim = 1;
  Activation activation = Activation::identity;
};

// Dense layer; weights are row-major out_dim x in_dim.
struct Layer {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  Activation activation = Activation::identity;
  Vector weights;
  Vector biases;

  double& w(std::size_t row, std::size_t col) { return weights[row * in_dim + col]; }
  double w(std::size_t row, std::size_t col) const { return weights[row * in_dim + col]; }

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct Network {
  std::vector<Layer> layers;

  std::size_t in_dim() const { return layers.front().in_dim; }
  std::size_t out_dim() const { return layers.back().out_dim; }
  std::size_t parameter_count() const;
  std::vector<LayerSpec> specs() const;
  bool same_shape(const Network& other) const;
  // Throws DomainError on empty layers, broken dim chain, bad array sizes or
  // non-finite parameters.
  void validate() const;

  friend bool operator==(const Network&, const Network&) = default;
};

// Same shape as the network's parameters.
struct LayerGrad {
  Vector weights;
  Vector biases;
};
struct Gradients {
  std::vector<LayerGrad> layers;

  static Gradients zeros_like(const Network& net);
};

struct ForwardCache {
  Batch input;
  std::vector<Batch> pre;   // per layer, before activation
  std::vector<Batch> post;  // per layer, after activation
};

struct ForwardResult {
  Batch output;
  ForwardCache cache;
};

struct BackwardResult {
  Gradients params;
  Batch inputs;  // dL/d(input), one vector per sample
};

// Glorot-uniform weights in +-sqrt(6 / (in + out)), zero biases.
// Throws ConfigError if the specs do not chain.
Network init_network(std::span<const LayerSpec> specs, std::uint64_t seed);

ForwardResult forward(const Network& net, const Batch& input);
Vector predict(const Network& net, const Vector& input);
Batch predict(const Network& net, const Batch& input);

// d_out holds dL/d(output) per sample. Gradients are summed over the batch.
BackwardResult backward(const Network& net, const ForwardCache& cache, const Batch& d_out);

// Bias-corrected adaptive-moment descent. Negate gradients for ascent.
struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::uint64_t t = 0;
  Gradients m;
  Gradients v;

  AdamState() = default;
  AdamState(const Network& net, double learning_rate);
};

void adam_step(Network& net, const Gradients& grads, AdamState& state);

// Scalar probe losses used by the gradient check.
enum class ProbeLoss {
  sum,          // L = sum of all outputs
  half_square,  // L = 0.5 * sum of squared outputs
};

double probe_loss(const Batch& output, ProbeLoss loss);

// Largest relative error |a - b| / max(|a|, |b|, 1e-12) between backward()
// and central differences, over every parameter and every input coordinate.
// Throws DomainError unless eps > 0.
double finite_diff_check(const Network& net, const Batch& input, ProbeLoss loss, double eps);

// Checkpoint schema:
//   {"layers":[{"in":..,"out":..,"activation":"relu|tanh|identity",
//               "w":[row-major],"b":[..]}], "format_version":1}
nlohmann::ordered_json to_json(const Network& net);
// `context` prefixes error messages (e.g. "actor").
Network network_from_json(const nlohmann::json& j, const std::string& context = "network");

void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace thermorl::nn

#endif  // THERMORL_NN_HPP_
