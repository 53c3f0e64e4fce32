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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jtcomp/channel.hpp"
#include "jtcomp/power.hpp"
#include "jtcomp/rate.hpp"

namespace jtcomp {

enum class SolutionStatus { kOptimal, kInfeasible, kCapAdjusted };

enum class Scheme { kCnsPa, kAllUniform, kAllPa, kSingle, kCnsUniform };

inline constexpr Scheme kAllSchemes[] = {Scheme::kCnsPa, Scheme::kAllUniform, Scheme::kAllPa,
                                         Scheme::kSingle, Scheme::kCnsUniform};

inline const char* scheme_label(Scheme s) {
  switch (s) {
    case Scheme::kCnsPa: return "cns_pa";
    case Scheme::kAllUniform: return "all_uniform";
    case Scheme::kAllPa: return "all_pa";
    case Scheme::kSingle: return "single";
    case Scheme::kCnsUniform: return "cns_uniform";
  }
  return "?";
}

inline const char* status_label(SolutionStatus s) {
  switch (s) {
    case SolutionStatus::kOptimal: return "optimal";
    case SolutionStatus::kInfeasible: return "infeasible";
    case SolutionStatus::kCapAdjusted: return "cap-adjusted";
  }
  return "?";
}

// Result of one scheme on one drop. powers_w is index-aligned with the
// sorted cluster and has length active_count. For infeasible results the
// power list is empty and the numeric fields are zero.
struct CooperationSolution {
  int active_count = 0;
  std::vector<double> powers_w;
  double total_power_w = 0.0;
  double energy_efficiency = 0.0;  // bit/J
  double rate_achieved = 0.0;      // bit/s
  SolutionStatus status = SolutionStatus::kInfeasible;
  Scheme scheme = Scheme::kCnsPa;

  bool feasible() const { return status != SolutionStatus::kInfeasible; }
};

inline double rate_exponent_term(double r_dl, double bandwidth_hz) {
  // 2^(R/W) - 1, computed through expm1 so small demands stay accurate.
  return std::expm1(r_dl / bandwidth_hz * std::numbers::ln2);
}

// Per-node effective channel-to-noise coefficients Gamma(m) over the sorted
// cluster, with prefix sums and the matching per-node PA parameters. Built
// once per drop; every activation decision and closed-form power reads it.
struct GammaTable {
  std::vector<double> gamma;         // eta_max_m |h_m|^2 / (I + P_N)
  std::vector<double> prefix_sum;    // prefix_sum[k] = sum of gamma[0..k]
  std::vector<double> prefix_floor;  // sum of a p_max_m / ((1+a) eta_max_m)
  std::vector<double> eta_max;
  std::vector<double> p_max;
  double a = 0.0;

  static GammaTable build(const Cluster& cluster, std::span<const PaModel> pas,
                          const RateContext& ctx) {
    if (pas.size() != cluster.nodes.size()) {
      throw std::invalid_argument("GammaTable: one PaModel per node required");
    }
    GammaTable t;
    const std::size_t m = cluster.nodes.size();
    t.gamma.resize(m);
    t.prefix_sum.resize(m);
    t.prefix_floor.resize(m);
    t.eta_max.resize(m);
    t.p_max.resize(m);
    t.a = pas.empty() ? 0.0 : pas[0].a;
    double sum = 0.0;
    double floors = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const NodeChannel& n = cluster.nodes[i];
      t.gamma[i] = pas[i].eta_max * n.amp * n.amp / ctx.interference_plus_noise_w;
      sum += t.gamma[i];
      floors += pas[i].a * pas[i].p_max / ((1.0 + pas[i].a) * pas[i].eta_max);
      t.prefix_sum[i] = sum;
      t.prefix_floor[i] = floors;
      t.eta_max[i] = pas[i].eta_max;
      t.p_max[i] = pas[i].p_max;
    }
    return t;
  }

  static GammaTable build(const Cluster& cluster, const PaModel& pa, const RateContext& ctx) {
    std::vector<PaModel> pas(cluster.nodes.size(), pa);
    return build(cluster, pas, ctx);
  }

  int size() const { return static_cast<int>(gamma.size()); }
  double sum_first(int m_bar) const { return prefix_sum[m_bar - 1]; }
  double floor_first(int m_bar) const { return prefix_floor[m_bar - 1]; }
};

/// Re-sorts a cluster into the selection-priority order: amp descending,
/// ties by node_id. Idempotent on already-sorted clusters.
inline Cluster sort_by_priority(Cluster cluster) {
  std::stable_sort(cluster.nodes.begin(), cluster.nodes.end(),
                   [](const NodeChannel& a, const NodeChannel& b) {
                     if (a.amp != b.amp) return a.amp > b.amp;
                     return a.node_id < b.node_id;
                   });
  return cluster;
}

/// Closed-form rate-tight power split for the given active prefix:
/// P_m = (2^(R/W)-1) * eta_m^2 |h_m|^2/(I+P_N) / (sum_k eta_k |h_k|^2/(I+P_N))^2.
/// Ignores per-node caps; callers check them against transmit_power_cap.
inline std::vector<double> allocate_power(std::span<const NodeChannel> prefix, double r_dl,
                                          std::span<const PaModel> pas, const RateContext& ctx) {
  if (prefix.empty()) {
    throw std::invalid_argument("allocate_power: empty prefix");
  }
  if (!(r_dl > 0.0)) {
    throw std::invalid_argument("allocate_power: rate demand must be positive");
  }
  if (pas.size() != prefix.size()) {
    throw std::invalid_argument("allocate_power: one PaModel per node required");
  }
  const double g = rate_exponent_term(r_dl, ctx.bandwidth_hz);
  double denom = 0.0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    denom += pas[i].eta_max * prefix[i].amp * prefix[i].amp / ctx.interference_plus_noise_w;
  }
  std::vector<double> powers(prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const double eta = pas[i].eta_max;
    const double num = eta * eta * prefix[i].amp * prefix[i].amp / ctx.interference_plus_noise_w;
    powers[i] = g * num / (denom * denom);
  }
  return powers;
}

/// Total power at the rate-tight closed-form allocation over the first m_bar
/// nodes, evaluated without materializing the powers:
/// alpha_Mbar (2^(R/W)-1) + ETPA floors + static/idle/processing terms.
inline double p2_objective(int m_bar, const GammaTable& gamma, double r_dl,
                           const ScenarioConfig& cfg) {
  if (m_bar < 1 || m_bar > gamma.size()) {
    throw std::invalid_argument("p2_objective: m_bar outside [1, M]");
  }
  const int m_total = gamma.size();
  const CircuitModel circuit = circuit_from(cfg);
  const double g = rate_exponent_term(r_dl, cfg.bandwidth_w);
  const double alpha = 1.0 / ((1.0 + gamma.a) * gamma.sum_first(m_bar));
  const double p_rx = circuit.eps * r_dl + circuit.p_base_rx;
  const double beta = m_bar * circuit.p_base_tx + (m_total - m_bar) * circuit.p_idle +
                      circuit.eps * r_dl + p_rx;
  return alpha * g + gamma.floor_first(m_bar) + beta;
}

/// Activation test for node m_bar+1 (1-based) given m_bar active nodes:
///   Gamma(m_bar+1) / (sum_{<=m_bar} Gamma * sum_{<=m_bar+1} Gamma)
///     > theta_{m_bar+1} (1+a) / (2^(R/W)-1),
/// where theta is the marginal static cost of waking that node (ETPA floor
/// plus base transmit circuit power minus the saved idle power). Strict
/// inequality: an exact tie does not activate.
inline bool join_criterion(int m_bar, const GammaTable& gamma, double r_dl,
                           const ScenarioConfig& cfg) {
  if (m_bar < 1 || m_bar + 1 > gamma.size()) {
    throw std::invalid_argument("join_criterion: m_bar outside [1, M-1]");
  }
  const CircuitModel circuit = circuit_from(cfg);
  const double g = rate_exponent_term(r_dl, cfg.bandwidth_w);
  const int next = m_bar;  // 0-based index of node m_bar+1
  const double theta = gamma.a * gamma.p_max[next] / ((1.0 + gamma.a) * gamma.eta_max[next]) +
                       circuit.p_base_tx - circuit.p_idle;
  const double lhs = gamma.gamma[next] / (gamma.sum_first(m_bar) * gamma.sum_first(m_bar + 1));
  const double rhs = theta * (1.0 + gamma.a) / g;
  return lhs > rhs;
}

struct CnsPaStats {
  int criterion_evaluations = 0;
  int cap_adjust_steps = 0;
};

namespace detail {

inline std::vector<double> prefix_amps(const Cluster& sorted, int m_bar) {
  std::vector<double> amps(m_bar);
  for (int i = 0; i < m_bar; ++i) amps[i] = sorted.nodes[i].amp;
  return amps;
}

inline bool any_cap_violation(std::span<const double> powers, double cap) {
  for (double p : powers) {
    if (p > cap) return true;
  }
  return false;
}

// Shared tail of cns_pa and exhaustive_prefix_scan: allocate at m_bar,
// grow m_bar while any per-node cap is exceeded, then assemble the solution.
inline CooperationSolution finalize_prefix_solution(const Cluster& sorted, int m_bar, double r_dl,
                                                    const ScenarioConfig& cfg,
                                                    const RateContext& ctx, Scheme scheme,
                                                    CnsPaStats* stats) {
  const PaModel pa = pa_from(cfg);
  const double cap = transmit_power_cap(pa);
  const int m_total = sorted.size();
  std::vector<PaModel> pas(m_total, pa);

  std::vector<double> powers = allocate_power(
      std::span<const NodeChannel>(sorted.nodes.data(), m_bar), r_dl,
      std::span<const PaModel>(pas.data(), m_bar), ctx);
  bool adjusted = false;
  while (any_cap_violation(powers, cap) && m_bar < m_total) {
    ++m_bar;
    adjusted = true;
    if (stats != nullptr) ++stats->cap_adjust_steps;
    powers = allocate_power(std::span<const NodeChannel>(sorted.nodes.data(), m_bar), r_dl,
                            std::span<const PaModel>(pas.data(), m_bar), ctx);
  }

  CooperationSolution sol;
  sol.scheme = scheme;
  if (any_cap_violation(powers, cap)) {
    sol.status = SolutionStatus::kInfeasible;
    return sol;
  }
  sol.status = adjusted ? SolutionStatus::kCapAdjusted : SolutionStatus::kOptimal;
  sol.active_count = m_bar;
  sol.powers_w = std::move(powers);
  sol.total_power_w = total_power(sol.powers_w, m_bar, cfg, r_dl);
  const std::vector<double> amps = prefix_amps(sorted, m_bar);
  sol.rate_achieved = coherent_rate(sol.powers_w, amps, ctx);
  sol.energy_efficiency = r_dl / sol.total_power_w;
  return sol;
}

inline CooperationSolution all_idle_solution(const ScenarioConfig& cfg, Scheme scheme) {
  CooperationSolution sol;
  sol.scheme = scheme;
  sol.status = SolutionStatus::kOptimal;
  sol.active_count = 0;
  sol.total_power_w = cfg.num_nodes_m * cfg.p_idle + cfg.p_base_rx;
  sol.energy_efficiency = 0.0;
  sol.rate_achieved = 0.0;
  return sol;
}

inline CooperationSolution infeasible_solution(Scheme scheme) {
  CooperationSolution sol;
  sol.scheme = scheme;
  sol.status = SolutionStatus::kInfeasible;
  return sol;
}

}  // namespace detail

/// Joint node selection and power allocation: sort by priority, grow the
/// active prefix while the activation criterion holds, then apply the
/// closed-form powers. Demands beyond the full cluster's capped rate are
/// infeasible; a zero demand puts every node in idle mode.
inline CooperationSolution cns_pa(const Cluster& cluster, double r_dl, const ScenarioConfig& cfg,
                                  CnsPaStats* stats = nullptr) {
  if (r_dl < 0.0) {
    throw std::invalid_argument("cns_pa: negative rate demand");
  }
  const Cluster sorted = sort_by_priority(cluster);
  const PaModel pa = pa_from(cfg);
  const RateContext ctx = make_rate_context(cfg);
  if (r_dl == 0.0) return detail::all_idle_solution(cfg, Scheme::kCnsPa);
  if (!is_feasible(r_dl, sorted.nodes, pa, ctx)) {
    return detail::infeasible_solution(Scheme::kCnsPa);
  }
  const GammaTable gamma = GammaTable::build(sorted, pa, ctx);
  const int m_total = sorted.size();
  int m_bar = 1;
  while (m_bar < m_total) {
    if (stats != nullptr) ++stats->criterion_evaluations;
    if (!join_criterion(m_bar, gamma, r_dl, cfg)) break;
    ++m_bar;
  }
  return detail::finalize_prefix_solution(sorted, m_bar, r_dl, cfg, ctx, Scheme::kCnsPa, stats);
}

/// Non-greedy reference: evaluates the closed-form total power for every
/// prefix length and takes the minimizer (ties toward fewer active nodes).
inline CooperationSolution exhaustive_prefix_scan(const Cluster& cluster, double r_dl,
                                                  const ScenarioConfig& cfg) {
  if (r_dl < 0.0) {
    throw std::invalid_argument("exhaustive_prefix_scan: negative rate demand");
  }
  const Cluster sorted = sort_by_priority(cluster);
  const PaModel pa = pa_from(cfg);
  const RateContext ctx = make_rate_context(cfg);
  if (r_dl == 0.0) return detail::all_idle_solution(cfg, Scheme::kCnsPa);
  if (!is_feasible(r_dl, sorted.nodes, pa, ctx)) {
    return detail::infeasible_solution(Scheme::kCnsPa);
  }
  const GammaTable gamma = GammaTable::build(sorted, pa, ctx);
  int best_m = 1;
  double best_value = p2_objective(1, gamma, r_dl, cfg);
  for (int m_bar = 2; m_bar <= sorted.size(); ++m_bar) {
    const double value = p2_objective(m_bar, gamma, r_dl, cfg);
    if (value < best_value) {
      best_value = value;
      best_m = m_bar;
    }
  }
  return detail::finalize_prefix_solution(sorted, best_m, r_dl, cfg, ctx, Scheme::kCnsPa, nullptr);
}

}  // namespace jtcomp
