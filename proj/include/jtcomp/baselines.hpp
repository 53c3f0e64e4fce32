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
#include <span>
#include <stdexcept>
#include <vector>

#include "jtcomp/optimizer.hpp"

namespace jtcomp {

// Comparison schemes. Each meets the rate demand with equality when
// feasible; a scheme whose allocation would push any node past its transmit
// cap reports infeasible instead of clamping.

namespace detail {

// Equal power over the first m_bar sorted nodes meeting the demand exactly:
// P = (2^(R/W)-1)(I+P_N) / (sum of amps)^2.
inline double uniform_power(const Cluster& sorted, int m_bar, double r_dl,
                            const RateContext& ctx) {
  const double g = rate_exponent_term(r_dl, ctx.bandwidth_hz);
  double amp_sum = 0.0;
  for (int i = 0; i < m_bar; ++i) amp_sum += sorted.nodes[i].amp;
  return g * ctx.interference_plus_noise_w / (amp_sum * amp_sum);
}

inline CooperationSolution uniform_prefix_solution(const Cluster& sorted, int m_bar, double r_dl,
                                                   const ScenarioConfig& cfg,
                                                   const RateContext& ctx, Scheme scheme) {
  const double cap = transmit_power_cap(pa_from(cfg));
  const double p = uniform_power(sorted, m_bar, r_dl, ctx);
  CooperationSolution sol;
  sol.scheme = scheme;
  if (p > cap) {
    sol.status = SolutionStatus::kInfeasible;
    return sol;
  }
  sol.status = SolutionStatus::kOptimal;
  sol.active_count = m_bar;
  sol.powers_w.assign(m_bar, p);
  sol.total_power_w = total_power(sol.powers_w, m_bar, cfg, r_dl);
  sol.rate_achieved = coherent_rate(sol.powers_w, prefix_amps(sorted, m_bar), ctx);
  sol.energy_efficiency = r_dl / sol.total_power_w;
  return sol;
}

}  // namespace detail

/// All M nodes active with one common transmit power.
inline CooperationSolution all_nodes_uniform(const Cluster& cluster, double r_dl,
                                             const ScenarioConfig& cfg) {
  if (r_dl < 0.0) throw std::invalid_argument("all_nodes_uniform: negative rate demand");
  const Cluster sorted = sort_by_priority(cluster);
  const RateContext ctx = make_rate_context(cfg);
  return detail::uniform_prefix_solution(sorted, sorted.size(), r_dl, cfg, ctx,
                                         Scheme::kAllUniform);
}

/// All M nodes active with the rate-tight closed-form power split.
inline CooperationSolution all_nodes_pa(const Cluster& cluster, double r_dl,
                                        const ScenarioConfig& cfg) {
  if (r_dl < 0.0) throw std::invalid_argument("all_nodes_pa: negative rate demand");
  const Cluster sorted = sort_by_priority(cluster);
  const PaModel pa = pa_from(cfg);
  const RateContext ctx = make_rate_context(cfg);
  const int m = sorted.size();

  CooperationSolution sol;
  sol.scheme = Scheme::kAllPa;
  std::vector<double> powers;
  if (r_dl == 0.0) {
    powers.assign(m, 0.0);
  } else {
    std::vector<PaModel> pas(m, pa);
    powers = allocate_power(sorted.nodes, r_dl, pas, ctx);
    if (detail::any_cap_violation(powers, transmit_power_cap(pa))) {
      sol.status = SolutionStatus::kInfeasible;
      return sol;
    }
  }
  sol.status = SolutionStatus::kOptimal;
  sol.active_count = m;
  sol.powers_w = std::move(powers);
  sol.total_power_w = total_power(sol.powers_w, m, cfg, r_dl);
  sol.rate_achieved = coherent_rate(sol.powers_w, detail::prefix_amps(sorted, m), ctx);
  sol.energy_efficiency = r_dl > 0.0 ? r_dl / sol.total_power_w : 0.0;
  return sol;
}

/// Only the node with the best channel transmits.
inline CooperationSolution single_node(const Cluster& cluster, double r_dl,
                                       const ScenarioConfig& cfg) {
  if (r_dl < 0.0) throw std::invalid_argument("single_node: negative rate demand");
  const Cluster sorted = sort_by_priority(cluster);
  const RateContext ctx = make_rate_context(cfg);
  return detail::uniform_prefix_solution(sorted, 1, r_dl, cfg, ctx, Scheme::kSingle);
}

/// Selected active set (best prefix) but with uniform power: scans every
/// prefix length, keeps the one with the smallest total power.
inline CooperationSolution cns_uniform(const Cluster& cluster, double r_dl,
                                       const ScenarioConfig& cfg) {
  if (r_dl < 0.0) throw std::invalid_argument("cns_uniform: negative rate demand");
  const Cluster sorted = sort_by_priority(cluster);
  const RateContext ctx = make_rate_context(cfg);
  CooperationSolution best;
  best.scheme = Scheme::kCnsUniform;
  best.status = SolutionStatus::kInfeasible;
  for (int m_bar = 1; m_bar <= sorted.size(); ++m_bar) {
    CooperationSolution sol =
        detail::uniform_prefix_solution(sorted, m_bar, r_dl, cfg, ctx, Scheme::kCnsUniform);
    if (!sol.feasible()) continue;
    if (!best.feasible() || sol.total_power_w < best.total_power_w) best = std::move(sol);
  }
  return best;
}

}  // namespace jtcomp
