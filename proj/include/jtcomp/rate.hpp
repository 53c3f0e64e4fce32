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
#include <numbers>
#include <span>
#include <stdexcept>

#include "jtcomp/channel.hpp"
#include "jtcomp/power.hpp"
#include "jtcomp/units.hpp"

namespace jtcomp {

struct RateContext {
  double bandwidth_hz = 10.0e6;
  double interference_plus_noise_w = 0.0;  // I_out + P_N
};

inline RateContext make_rate_context(const ScenarioConfig& cfg) {
  return RateContext{cfg.bandwidth_w,
                     cfg.i_out + noise_power(cfg.noise_psd, cfg.bandwidth_w).value};
}

// Relative slack on SNR comparisons so rate-at-capacity boundaries are
// deterministic rather than dependent on rounding direction.
inline constexpr double kSnrRelTolerance = 1e-12;

/// Coherent joint-transmission rate: amplitudes add before squaring,
/// W * log2(1 + (sum_m sqrt(P_m)|h_m|)^2 / (I + P_N)).
inline double coherent_rate(std::span<const double> powers_w, std::span<const double> amps,
                            const RateContext& ctx) {
  if (powers_w.size() != amps.size()) {
    throw std::invalid_argument("coherent_rate: powers and amps must have equal length");
  }
  double amplitude = 0.0;
  for (std::size_t i = 0; i < powers_w.size(); ++i) {
    if (powers_w[i] < 0.0 || amps[i] < 0.0) {
      throw std::invalid_argument("coherent_rate: negative power or amplitude");
    }
    amplitude += std::sqrt(powers_w[i]) * amps[i];
  }
  const double snr = amplitude * amplitude / ctx.interference_plus_noise_w;
  return ctx.bandwidth_hz * std::log1p(snr) / std::numbers::ln2;
}

/// Rate with every node of the prefix transmitting at its cap (the largest
/// transmit power whose consumed power stays within p_max).
inline double max_rate(std::span<const NodeChannel> cluster_prefix, const PaModel& pa,
                       const RateContext& ctx) {
  if (cluster_prefix.empty()) {
    throw std::invalid_argument("max_rate: empty prefix");
  }
  const double cap = transmit_power_cap(pa);
  double amplitude = 0.0;
  for (const NodeChannel& n : cluster_prefix) amplitude += std::sqrt(cap) * n.amp;
  const double snr = amplitude * amplitude / ctx.interference_plus_noise_w;
  return ctx.bandwidth_hz * std::log1p(snr) / std::numbers::ln2;
}

/// True iff the demand is reachable with all prefix nodes at their caps.
inline bool is_feasible(double r_dl, std::span<const NodeChannel> cluster_prefix,
                        const PaModel& pa, const RateContext& ctx) {
  if (r_dl < 0.0) {
    throw std::invalid_argument("is_feasible: negative rate demand");
  }
  if (r_dl == 0.0) return true;
  const double required_snr = std::expm1(r_dl / ctx.bandwidth_hz * std::numbers::ln2);
  const double cap = transmit_power_cap(pa);
  double amplitude = 0.0;
  for (const NodeChannel& n : cluster_prefix) amplitude += std::sqrt(cap) * n.amp;
  const double snr = amplitude * amplitude / ctx.interference_plus_noise_w;
  return required_snr <= snr * (1.0 + kSnrRelTolerance);
}

}  // namespace jtcomp
