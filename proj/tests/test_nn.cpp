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
#include <fstream>

#include "test_util.hpp"
#include "thermorl/error.hpp"
#include "thermorl/nn.hpp"
#include "thermorl/rng.hpp"

using namespace thermorl;
using namespace thermorl::nn;

namespace {

Network identity_net(Activation act) {
  Network net;
  net.layers.push_back({2, 2, act, {1.0, 0.0, 0.0, 1.0}, {0.0, 0.0}});
  return net;
}

Activation random_activation(Rng& rng) {
  switch (rng.index(3)) {
    case 0: return Activation::relu;
    case 1: return Activation::tanh;
    default: return Activation::identity;
  }
}

Batch random_batch(Rng& rng, std::size_t n, std::size_t dim) {
  Batch b(n, Vector(dim));
  for (auto& row : b) {
    for (auto& x : row) x = rng.uniform(-1.5, 1.5);
  }
  return b;
}

void randomize_biases(Network& net, Rng& rng) {
  for (auto& l : net.layers) {
    for (auto& b : l.biases) b = rng.uniform(-0.5, 0.5);
  }
}

}  // namespace

TEST_CASE("init_network: Glorot bounds, zero biases, determinism") {
  const std::vector<LayerSpec> specs{{2, 1, Activation::identity}};
  const auto net = init_network(specs, 7);
  REQUIRE(net.layers.size() == 1);
  REQUIRE(net.layers[0].weights.size() == 2);
  for (double w : net.layers[0].weights) CHECK(std::abs(w) <= std::sqrt(2.0));
  CHECK(net.layers[0].biases == Vector{0.0});
  CHECK(init_network(specs, 7) == net);
  CHECK_FALSE(init_network(specs, 8) == net);

  const std::vector<LayerSpec> bad{{2, 4, Activation::relu}, {3, 1, Activation::identity}};
  CHECK_THROWS_AS(init_network(bad, 1), ConfigError);
}

TEST_CASE("forward examples") {
  CHECK(predict(identity_net(Activation::identity), Vector{3.0, -1.0}) == Vector{3.0, -1.0});
  CHECK(predict(identity_net(Activation::relu), Vector{-5.0, 2.0}) == Vector{0.0, 2.0});
  Network zero;
  zero.layers.push_back({3, 2, Activation::tanh, Vector(6, 0.0), Vector(2, 0.0)});
  CHECK(predict(zero, Vector{4.0, -2.0, 9.0}) == Vector{0.0, 0.0});
  CHECK_THROWS_AS(predict(zero, Vector{1.0}), DomainError);
}

TEST_CASE("forward is pure") {
  const std::vector<LayerSpec> specs{{2, 8, Activation::tanh}, {8, 1, Activation::identity}};
  const auto net = init_network(specs, 3);
  const auto copy = net;
  Rng rng(1);
  const auto x = random_batch(rng, 5, 2);
  CHECK(predict(net, x) == predict(net, x));
  CHECK(net == copy);
}

TEST_CASE("backward of a linear layer") {
  Network net;
  net.layers.push_back({2, 2, Activation::identity, {1.0, 2.0, 3.0, 4.0}, {0.5, -0.5}});
  const auto fwd = forward(net, Batch{{3.0, -1.0}});
  const auto g = backward(net, fwd.cache, Batch{{1.0, 1.0}});
  // dL/dw_ij = x_j, dL/db_i = 1, dL/dx_j = sum_i w_ij
  CHECK(g.params.layers[0].weights == Vector{3.0, -1.0, 3.0, -1.0});
  CHECK(g.params.layers[0].biases == Vector{1.0, 1.0});
  CHECK(g.inputs[0] == Vector{4.0, 6.0});

  const auto z = backward(net, fwd.cache, Batch{{0.0, 0.0}});
  CHECK(z.params.layers[0].weights == Vector(4, 0.0));
  CHECK(z.inputs[0] == Vector{0.0, 0.0});

  CHECK_THROWS_AS(backward(net, fwd.cache, Batch{{1.0}}), DomainError);
  CHECK_THROWS_AS(backward(net, fwd.cache, Batch{{1.0, 1.0}, {1.0, 1.0}}), DomainError);
}

TEST_CASE("gradient check on a random 2-8-1 network") {
  Rng rng(21);
  const std::vector<LayerSpec> specs{{2, 8, Activation::tanh}, {8, 1, Activation::identity}};
  auto net = init_network(specs, 21);
  randomize_biases(net, rng);
  const auto x = random_batch(rng, 4, 2);
  CHECK(finite_diff_check(net, x, ProbeLoss::sum, 1e-5) < 1e-5);
  CHECK(finite_diff_check(net, x, ProbeLoss::half_square, 1e-5) < 1e-5);
}

TEST_CASE("gradient check: linear network under a quadratic loss") {
  Rng rng(4);
  const std::vector<LayerSpec> specs{{3, 2, Activation::identity}};
  auto net = init_network(specs, 4);
  randomize_biases(net, rng);
  // Central differences are exact for quadratics up to rounding.
  CHECK(finite_diff_check(net, random_batch(rng, 3, 3), ProbeLoss::half_square, 1e-3) < 1e-9);
}

TEST_CASE("gradient check: 2-8-8-1 tanh network") {
  Rng rng(8);
  const std::vector<LayerSpec> specs{
      {2, 8, Activation::tanh}, {8, 8, Activation::tanh}, {8, 1, Activation::tanh}};
  auto net = init_network(specs, 8);
  randomize_biases(net, rng);
  CHECK(finite_diff_check(net, random_batch(rng, 3, 2), ProbeLoss::half_square, 1e-5) < 1e-5);
  CHECK_THROWS_AS(finite_diff_check(net, random_batch(rng, 1, 2), ProbeLoss::sum, 0.0), DomainError);
}

TEST_CASE("gradient check over 100 random small networks") {
  Rng rng(1234);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LayerSpec> specs;
    std::size_t in = 1 + rng.index(16);
    const std::size_t depth = 1 + rng.index(3);
    for (std::size_t k = 0; k < depth; ++k) {
      const std::size_t out = 1 + rng.index(16);
      specs.push_back({in, out, random_activation(rng)});
      in = out;
    }
    auto net = init_network(specs, rng.next_u64());
    randomize_biases(net, rng);
    const auto x = random_batch(rng, 1 + rng.index(3), specs.front().in_dim);
    const auto loss = rng.index(2) == 0 ? ProbeLoss::sum : ProbeLoss::half_square;
    const double err = finite_diff_check(net, x, loss, 1e-5);
    worst = std::max(worst, err);
    CHECK_MESSAGE(err < 1e-5, "trial " << trial);
  }
  MESSAGE("worst relative error " << worst);
}

TEST_CASE("adam: first step moves each parameter by lr against the gradient sign") {
  Network net;
  net.layers.push_back({2, 1, Activation::identity, {0.5, -0.25}, {1.0}});
  AdamState st(net, 1e-3);
  Gradients g = Gradients::zeros_like(net);
  g.layers[0].weights = {0.3, -2.0};
  g.layers[0].biases = {0.0};
  const auto before = net;
  adam_step(net, g, st);
  CHECK(st.t == 1);
  CHECK(std::abs((net.layers[0].w(0, 0) - before.layers[0].w(0, 0)) - (-1e-3)) < 1e-6);
  CHECK(std::abs((net.layers[0].w(0, 1) - before.layers[0].w(0, 1)) - 1e-3) < 1e-6);
  CHECK(net.layers[0].biases[0] == 1.0);
}

TEST_CASE("adam: zero gradients leave parameters unchanged") {
  const std::vector<LayerSpec> specs{{2, 4, Activation::relu}, {4, 1, Activation::identity}};
  auto net = init_network(specs, 2);
  const auto before = net;
  AdamState st(net, 1e-2);
  const auto zero = Gradients::zeros_like(net);
  for (int i = 0; i < 100; ++i) adam_step(net, zero, st);
  CHECK(net == before);
}

TEST_CASE("adam: identical runs are bit-identical and shapes are preserved") {
  const std::vector<LayerSpec> specs{{2, 6, Activation::tanh}, {6, 1, Activation::identity}};
  auto run = [&] {
    auto net = init_network(specs, 9);
    AdamState st(net, 1e-2);
    Rng rng(10);
    for (int i = 0; i < 50; ++i) {
      const auto x = random_batch(rng, 8, 2);
      const auto fwd = forward(net, x);
      const auto g = backward(net, fwd.cache, fwd.output);
      adam_step(net, g.params, st);
      CHECK(net.specs().size() == specs.size());
      CHECK(net.same_shape(init_network(specs, 0)));
    }
    return net;
  };
  CHECK(run() == run());

  auto net = init_network(specs, 1);
  AdamState st(net, 1e-3);
  Gradients wrong = Gradients::zeros_like(init_network(std::vector<LayerSpec>{{2, 1, Activation::identity}}, 1));
  CHECK_THROWS_AS(adam_step(net, wrong, st), DomainError);
}

TEST_CASE("checkpoint round trip is bit-exact") {
  testing::TempDir dir("nn");
  const std::vector<LayerSpec> specs{
      {2, 64, Activation::relu}, {64, 64, Activation::relu}, {64, 1, Activation::tanh}};
  auto net = init_network(specs, 77);
  Rng rng(77);
  randomize_biases(net, rng);
  save_network(net, dir / "net.json");
  const auto back = load_network(dir / "net.json");
  CHECK(back == net);
  const auto j = nlohmann::json::parse(testing::read_file(dir / "net.json"));
  CHECK(j.at("format_version") == 1);
  CHECK(j.at("layers").at(0).at("activation") == "relu");
  CHECK(j.at("layers").at(0).at("w").size() == 128);
}

TEST_CASE("corrupt checkpoints are parse errors") {
  testing::TempDir dir("nn_bad");
  const std::vector<LayerSpec> specs{{2, 3, Activation::relu}, {3, 1, Activation::identity}};
  const auto text = to_json(init_network(specs, 1)).dump();

  testing::write_file(dir / "trunc.json", text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(load_network(dir / "trunc.json"), ParseError);

  auto j = nlohmann::json::parse(text);
  j["layers"][1]["in"] = 4;
  j["layers"][1]["w"] = {1.0, 2.0, 3.0};
  testing::write_file(dir / "dims.json", j.dump());
  try {
    load_network(dir / "dims.json");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("layer 1") != std::string::npos);
  }

  j = nlohmann::json::parse(text);
  j["format_version"] = 2;
  testing::write_file(dir / "ver.json", j.dump());
  CHECK_THROWS_AS(load_network(dir / "ver.json"), ParseError);

  j = nlohmann::json::parse(text);
  j["layers"][0]["activation"] = "sigmoid";
  testing::write_file(dir / "act.json", j.dump());
  CHECK_THROWS_AS(load_network(dir / "act.json"), ParseError);

  CHECK_THROWS_AS(load_network(dir / "missing.json"), IoError);
}
