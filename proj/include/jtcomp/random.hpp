// Copyright 2026 The Authors.
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

#pragma once

#include <cmath>
#include <cstdint>

namespace jtcomp {

// SplitMix64: a counter-based generator. Each (master seed, trial, purpose)
// triple derives an independent substream, so every trial's randomness is
// self-contained and results do not depend on execution order or threading.
class RandomStream {
 public:
  enum class Purpose : std::uint64_t {
    kPlacement = 0x706c6163,  // node positions and counts
    kFading = 0x66616465,     // per-node fading magnitudes
  };

  static RandomStream substream(std::uint64_t master_seed, std::uint64_t trial_id,
                                Purpose purpose) {
    std::uint64_t s = mix(master_seed);
    s = mix(s ^ mix(trial_id + 0x9e3779b97f4a7c15ull));
    s = mix(s ^ mix(static_cast<std::uint64_t>(purpose)));
    return RandomStream(s);
  }

  explicit RandomStream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Knuth's product method; fine for the lambdas used here (~tens).
  int poisson(double lambda) {
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  // Rayleigh magnitude with E[mag^2] = 1 (sigma = 1/sqrt(2)), via inverse CDF.
  double rayleigh_unit_power() {
    double u = uniform01();
    return std::sqrt(-std::log1p(-u));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace jtcomp
