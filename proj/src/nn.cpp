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

#include "thermorl/nn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "thermorl/error.hpp"
#include "thermorl/rng.hpp"

namespace thermorl::nn {
namespace {

double activate(Activation a, double x) {
  switch (a) {
    case Activation::relu: return x > 0.0 ? x : 0.0;
    case Activation::tanh: return std::tanh(x);
    case Activation::identity: return x;
  }
  return x;
}

// Derivative expressed through the pre- and post-activation values.
double activate_grad(Activation a, double pre, double post) {
  switch (a) {
    case Activation::relu: return pre > 0.0 ? 1.0 : 0.0;
    case Activation::tanh: return 1.0 - post * post;
    case Activation::identity: return 1.0;
  }
  return 1.0;
}

void check_batch(const Batch& batch, std::size_t dim, const char* what) {
  if (batch.empty()) throw DomainError(std::string(what) + ": empty batch");
  for (const auto& row : batch) {
    if (row.size() != dim) {
      throw DomainError(std::string(what) + ": expected dimension " + std::to_string(dim) +
                        ", got " + std::to_string(row.size()));
    }
  }
}

void check_grad_shape(const Network& net, const Gradients& g) {
  if (g.layers.size() != net.layers.size()) throw DomainError("gradient layer count mismatch");
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    if (g.layers[k].weights.size() != net.layers[k].weights.size() ||
        g.layers[k].biases.size() != net.layers[k].biases.size()) {
      throw DomainError("gradient shape mismatch at layer " + std::to_string(k));
    }
  }
}

[[noreturn]] void bad(const std::string& context, const std::string& what) {
  throw ParseError(context + ": " + what);
}

}  // namespace

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::relu: return "relu";
    case Activation::tanh: return "tanh";
    case Activation::identity: return "identity";
  }
  return "identity";
}

Activation activation_from_string(std::string_view tag) {
  if (tag == "relu") return Activation::relu;
  if (tag == "tanh") return Activation::tanh;
  if (tag == "identity") return Activation::identity;
  throw ParseError("unknown activation '" + std::string(tag) + "'");
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weights.size() + l.biases.size();
  return n;
}

std::vector<LayerSpec> Network::specs() const {
  std::vector<LayerSpec> out;
  for (const auto& l : layers) out.push_back({l.in_dim, l.out_dim, l.activation});
  return out;
}

bool Network::same_shape(const Network& other) const {
  if (layers.size() != other.layers.size()) return false;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& a = layers[k];
    const auto& b = other.layers[k];
    if (a.in_dim != b.in_dim || a.out_dim != b.out_dim || a.activation != b.activation) {
      return false;
    }
  }
  return true;
}

void Network::validate() const {
  if (layers.empty()) throw DomainError("network has no layers");
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& l = layers[k];
    const std::string where = "layer " + std::to_string(k);
    if (l.in_dim == 0 || l.out_dim == 0) throw DomainError(where + ": zero dimension");
    if (k > 0 && layers[k - 1].out_dim != l.in_dim) throw DomainError(where + ": dims do not chain");
    if (l.weights.size() != l.in_dim * l.out_dim || l.biases.size() != l.out_dim) {
      throw DomainError(where + ": parameter array sizes do not match dims");
    }
    auto finite = [](double x) { return std::isfinite(x); };
    if (!std::all_of(l.weights.begin(), l.weights.end(), finite) ||
        !std::all_of(l.biases.begin(), l.biases.end(), finite)) {
      throw DomainError(where + ": non-finite parameter");
    }
  }
}

Gradients Gradients::zeros_like(const Network& net) {
  Gradients g;
  g.layers.reserve(net.layers.size());
  for (const auto& l : net.layers) {
    g.layers.push_back({Vector(l.weights.size(), 0.0), Vector(l.biases.size(), 0.0)});
  }
  return g;
}

Network init_network(std::span<const LayerSpec> specs, std::uint64_t seed) {
  if (specs.empty()) throw ConfigError("network needs at least one layer");
  for (std::size_t k = 0; k < specs.size(); ++k) {
    if (specs[k].in_dim == 0 || specs[k].out_dim == 0) {
      throw ConfigError("layer " + std::to_string(k) + " has a zero dimension");
    }
    if (k > 0 && specs[k - 1].out_dim != specs[k].in_dim) {
      throw ConfigError("layer " + std::to_string(k) + " input dim " +
                        std::to_string(specs[k].in_dim) + " does not match previous output dim " +
                        std::to_string(specs[k - 1].out_dim));
    }
  }
  Rng rng(seed);
  Network net;
  for (const auto& s : specs) {
    Layer l{s.in_dim, s.out_dim, s.activation, Vector(s.in_dim * s.out_dim), Vector(s.out_dim, 0.0)};
    const double limit = std::sqrt(6.0 / static_cast<double>(s.in_dim + s.out_dim));
    for (auto& w : l.weights) w = rng.uniform(-limit, limit);
    net.layers.push_back(std::move(l));
  }
  return net;
}

ForwardResult forward(const Network& net, const Batch& input) {
  check_batch(input, net.in_dim(), "forward");
  ForwardResult r;
  r.cache.input = input;
  r.cache.pre.reserve(net.layers.size());
  r.cache.post.reserve(net.layers.size());
  const Batch* x = &r.cache.input;
  for (const auto& l : net.layers) {
    Batch pre(x->size(), Vector(l.out_dim));
    Batch post(x->size(), Vector(l.out_dim));
    for (std::size_t n = 0; n < x->size(); ++n) {
      const Vector& xn = (*x)[n];
      for (std::size_t o = 0; o < l.out_dim; ++o) {
        const double* row = &l.weights[o * l.in_dim];
        double z = l.biases[o];
        for (std::size_t i = 0; i < l.in_dim; ++i) z += row[i] * xn[i];
        pre[n][o] = z;
        post[n][o] = activate(l.activation, z);
      }
    }
    r.cache.pre.push_back(std::move(pre));
    r.cache.post.push_back(std::move(post));
    x = &r.cache.post.back();
  }
  r.output = r.cache.post.back();
  return r;
}

Vector predict(const Network& net, const Vector& input) {
  return forward(net, Batch{input}).output.front();
}

Batch predict(const Network& net, const Batch& input) { return forward(net, input).output; }

BackwardResult backward(const Network& net, const ForwardCache& cache, const Batch& d_out) {
  if (cache.pre.size() != net.layers.size() || cache.post.size() != net.layers.size()) {
    throw DomainError("backward: cache does not match network depth");
  }
  check_batch(d_out, net.out_dim(), "backward");
  if (d_out.size() != cache.input.size()) throw DomainError("backward: batch size mismatch");

  BackwardResult r;
  r.params = Gradients::zeros_like(net);
  Batch delta = d_out;
  for (std::size_t k = net.layers.size(); k-- > 0;) {
    const Layer& l = net.layers[k];
    const Batch& x = k == 0 ? cache.input : cache.post[k - 1];
    auto& g = r.params.layers[k];
    Batch d_prev(delta.size(), Vector(l.in_dim, 0.0));
    for (std::size_t n = 0; n < delta.size(); ++n) {
      for (std::size_t o = 0; o < l.out_dim; ++o) {
        const double d = delta[n][o] * activate_grad(l.activation, cache.pre[k][n][o],
                                                     cache.post[k][n][o]);
        if (d == 0.0) continue;
        g.biases[o] += d;
        const double* row = &l.weights[o * l.in_dim];
        double* grow = &g.weights[o * l.in_dim];
        for (std::size_t i = 0; i < l.in_dim; ++i) {
          grow[i] += d * x[n][i];
          d_prev[n][i] += row[i] * d;
        }
      }
    }
    delta = std::move(d_prev);
  }
  r.inputs = std::move(delta);
  return r;
}

AdamState::AdamState(const Network& net, double learning_rate)
    : lr(learning_rate), m(Gradients::zeros_like(net)), v(Gradients::zeros_like(net)) {}

void adam_step(Network& net, const Gradients& grads, AdamState& state) {
  check_grad_shape(net, grads);
  check_grad_shape(net, state.m);
  check_grad_shape(net, state.v);
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  auto update = [&](Vector& p, const Vector& g, Vector& m, Vector& v) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      p[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
  };
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    auto& l = net.layers[k];
    update(l.weights, grads.layers[k].weights, state.m.layers[k].weights, state.v.layers[k].weights);
    update(l.biases, grads.layers[k].biases, state.m.layers[k].biases, state.v.layers[k].biases);
  }
}

double probe_loss(const Batch& output, ProbeLoss loss) {
  double total = 0.0;
  for (const auto& row : output) {
    for (double y : row) total += loss == ProbeLoss::sum ? y : 0.5 * y * y;
  }
  return total;
}

double finite_diff_check(const Network& net, const Batch& input, ProbeLoss loss, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("finite_diff_check: eps must be > 0");
  const auto fwd = forward(net, input);
  Batch d_out = fwd.output;
  for (auto& row : d_out) {
    for (double& y : row) y = loss == ProbeLoss::sum ? 1.0 : y;
  }
  const auto analytic = backward(net, fwd.cache, d_out);

  double worst = 0.0;
  auto compare = [&](double a, double b) {
    const double denom = std::max({std::abs(a), std::abs(b), 1e-12});
    worst = std::max(worst, std::abs(a - b) / denom);
  };

  Network probe = net;
  auto central = [&](double& slot) {
    const double saved = slot;
    slot = saved + eps;
    const double up = probe_loss(predict(probe, input), loss);
    slot = saved - eps;
    const double down = probe_loss(predict(probe, input), loss);
    slot = saved;
    return (up - down) / (2.0 * eps);
  };
  for (std::size_t k = 0; k < probe.layers.size(); ++k) {
    auto& l = probe.layers[k];
    for (std::size_t i = 0; i < l.weights.size(); ++i) {
      compare(analytic.params.layers[k].weights[i], central(l.weights[i]));
    }
    for (std::size_t i = 0; i < l.biases.size(); ++i) {
      compare(analytic.params.layers[k].biases[i], central(l.biases[i]));
    }
  }

  Batch x = input;
  for (std::size_t n = 0; n < x.size(); ++n) {
    for (std::size_t i = 0; i < x[n].size(); ++i) {
      const double saved = x[n][i];
      x[n][i] = saved + eps;
      const double up = probe_loss(predict(net, x), loss);
      x[n][i] = saved - eps;
      const double down = probe_loss(predict(net, x), loss);
      x[n][i] = saved;
      compare(analytic.inputs[n][i], (up - down) / (2.0 * eps));
    }
  }
  return worst;
}

nlohmann::ordered_json to_json(const Network& net) {
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (const auto& l : net.layers) {
    nlohmann::ordered_json jl;
    jl["in"] = l.in_dim;
    jl["out"] = l.out_dim;
    jl["activation"] = std::string(to_string(l.activation));
    jl["w"] = l.weights;
    jl["b"] = l.biases;
    layers.push_back(std::move(jl));
  }
  nlohmann::ordered_json j;
  j["layers"] = std::move(layers);
  j["format_version"] = 1;
  return j;
}

Network network_from_json(const nlohmann::json& j, const std::string& context) {
  if (!j.is_object()) bad(context, "expected an object");
  if (!j.contains("format_version")) bad(context, "missing format_version");
  const auto& ver = j.at("format_version");
  if (!ver.is_number_integer() || ver.get<std::int64_t>() != 1) {
    bad(context, "unsupported format_version " + ver.dump() + " (expected 1)");
  }
  if (!j.contains("layers") || !j.at("layers").is_array() || j.at("layers").empty()) {
    bad(context, "missing or empty layers array");
  }
  Network net;
  const auto& jl = j.at("layers");
  for (std::size_t k = 0; k < jl.size(); ++k) {
    const auto& e = jl[k];
    const std::string where = "layer " + std::to_string(k);
    auto dim = [&](const char* key) -> std::size_t {
      if (!e.contains(key) || !e.at(key).is_number_unsigned() || e.at(key).get<std::size_t>() == 0) {
        bad(context, where + ": '" + key + "' must be a positive integer");
      }
      return e.at(key).get<std::size_t>();
    };
    auto numbers = [&](const char* key) -> Vector {
      if (!e.contains(key) || !e.at(key).is_array()) bad(context, where + ": missing '" + key + "' array");
      Vector out;
      for (const auto& x : e.at(key)) {
        if (!x.is_number()) bad(context, where + ": '" + key + "' holds a non-number");
        out.push_back(x.get<double>());
      }
      return out;
    };
    Layer l;
    l.in_dim = dim("in");
    l.out_dim = dim("out");
    if (!e.contains("activation") || !e.at("activation").is_string()) {
      bad(context, where + ": missing activation");
    }
    try {
      l.activation = activation_from_string(e.at("activation").get<std::string>());
    } catch (const ParseError& err) {
      bad(context, where + ": " + err.what());
    }
    l.weights = numbers("w");
    l.biases = numbers("b");
    if (l.weights.size() != l.in_dim * l.out_dim) {
      bad(context, where + ": 'w' has " + std::to_string(l.weights.size()) + " values, declared " +
                       std::to_string(l.out_dim) + "x" + std::to_string(l.in_dim));
    }
    if (l.biases.size() != l.out_dim) {
      bad(context, where + ": 'b' has " + std::to_string(l.biases.size()) + " values, declared " +
                       std::to_string(l.out_dim));
    }
    if (k > 0 && net.layers.back().out_dim != l.in_dim) bad(context, where + ": dims do not chain");
    net.layers.push_back(std::move(l));
  }
  return net;
}

void save_network(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(net).dump() << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return network_from_json(j, path.string());
}

}  // namespace thermorl::nn
