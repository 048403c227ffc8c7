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

#ifndef THERMORL_RNG_HPP_
#define THERMORL_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace thermorl {

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distribution transforms below are
// implemented here rather than taken from <random>, whose distributions are
// implementation-defined. Together they give identical draws on every
// platform, which is what keeps golden files portable.
//
//   uniform():  top 53 bits of one engine output, scaled to [0, 1)
//   normal():   Box-Muller on two uniforms, both variates used in turn
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  // Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// SplitMix64 finalizer; derives independent sub-seeds from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace thermorl

#endif  // THERMORL_RNG_HPP_
