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

#include <span>
#include <stdexcept>

#include "jtcomp/scenario.hpp"

namespace jtcomp {

// Envelope-tracking PA: consumed power (P + a*p_max) / ((1+a)*eta_max).
// a = 0 degenerates to the ideal PA, consumed = P / eta_max.
struct PaModel {
  double a = 0.0082;
  double eta_max = 0.35;
  double p_max = 39.810717055349734;
};

struct CircuitModel {
  double p_base_tx = 0.050;
  double p_base_rx = 0.050;
  double p_idle = 0.010;
  double eps = 2.0e-9;  // W per bit/s
};

inline PaModel pa_from(const ScenarioConfig& cfg) {
  return PaModel{cfg.pa_dependent_a, cfg.eta_max, cfg.p_max};
}

inline CircuitModel circuit_from(const ScenarioConfig& cfg) {
  return CircuitModel{cfg.p_base_tx, cfg.p_base_rx, cfg.p_idle, cfg.dynamic_circuit_eps};
}

/// Consumed power for transmit power p_tx in [0, p_max]. Affine and strictly
/// increasing in p_tx, with a load-independent floor at p_tx = 0.
inline double etpa_consumed(double p_tx_w, const PaModel& pa) {
  if (!(p_tx_w >= 0.0) || p_tx_w > pa.p_max) {
    throw std::domain_error("etpa_consumed: transmit power outside [0, p_max]");
  }
  return (p_tx_w + pa.a * pa.p_max) / ((1.0 + pa.a) * pa.eta_max);
}

/// Inverse of etpa_consumed. Input must be at or above the zero-output floor.
inline double etpa_inverse(double p_consumed_w, const PaModel& pa) {
  const double floor = pa.a * pa.p_max / ((1.0 + pa.a) * pa.eta_max);
  if (p_consumed_w < floor * (1.0 - 1e-12)) {
    throw std::domain_error("etpa_inverse: consumed power below the zero-output floor");
  }
  return p_consumed_w * (1.0 + pa.a) * pa.eta_max - pa.a * pa.p_max;
}

/// Largest transmit power whose consumed power stays within p_max.
inline double transmit_power_cap(const PaModel& pa) { return etpa_inverse(pa.p_max, pa); }

/// Total network power for m_bar active nodes at the given transmit powers:
/// PA consumption per active node, transmit/receive static circuit power,
/// idle power for the remaining nodes, and rate-dependent processing power
/// on both ends.
inline double total_power(std::span<const double> powers_w, int m_bar, const ScenarioConfig& cfg,
                          double r_dl) {
  if (static_cast<int>(powers_w.size()) != m_bar) {
    throw std::invalid_argument("total_power: powers length must equal m_bar");
  }
  if (m_bar < 0 || m_bar > cfg.num_nodes_m) {
    throw std::invalid_argument("total_power: m_bar outside [0, M]");
  }
  if (r_dl < 0.0) {
    throw std::invalid_argument("total_power: negative rate");
  }
  const PaModel pa = pa_from(cfg);
  const CircuitModel circuit = circuit_from(cfg);
  double pa_sum = 0.0;
  for (double p : powers_w) pa_sum += etpa_consumed(p, pa);
  const double p_rx = circuit.eps * r_dl + circuit.p_base_rx;
  return pa_sum + m_bar * circuit.p_base_tx + (cfg.num_nodes_m - m_bar) * circuit.p_idle +
         circuit.eps * r_dl + p_rx;
}

}  // namespace jtcomp
