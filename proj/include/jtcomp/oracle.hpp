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
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jtcomp/baselines.hpp"
#include "jtcomp/channel.hpp"
#include "jtcomp/optimizer.hpp"

// Independent references used by tests and the verify command. These
// deliberately re-derive every formula instead of calling the optimizer:
// an oracle sharing code with the system under test verifies nothing.

namespace jtcomp::oracle {

/// Minimizes sum_m P_m/((1+a) eta_m) subject to the coherent amplitude
/// constraint by bisecting the KKT multiplier against the constraint
/// residual: given mu, each power is sqrt(P_m) = mu * eta_m |h_m|.
inline std::vector<double> numeric_allocate(std::span<const NodeChannel> subset, double r_dl,
                                            std::span<const PaModel> pas,
                                            const RateContext& ctx) {
  if (subset.empty()) {
    throw std::invalid_argument("numeric_allocate: empty subset");
  }
  if (!(r_dl > 0.0)) {
    throw std::invalid_argument("numeric_allocate: rate demand must be positive");
  }
  const double g = std::pow(2.0, r_dl / ctx.bandwidth_hz) - 1.0;
  const double target_amplitude = std::sqrt(g * ctx.interference_plus_noise_w);

  auto amplitude_at = [&](double mu) {
    double total = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const double sqrt_p = mu * pas[i].eta_max * subset[i].amp;
      total += sqrt_p * subset[i].amp;
    }
    return total;
  };

  double lo = 0.0;
  double hi = 1.0;
  int expansions = 0;
  while (amplitude_at(hi) < target_amplitude) {
    hi *= 2.0;
    if (++expansions > 200) {
      throw std::runtime_error("numeric_allocate: oracle failure, bracket not found");
    }
  }
  for (int step = 0; step < 200; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (amplitude_at(mid) < target_amplitude) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double mu = 0.5 * (lo + hi);
  std::vector<double> powers(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const double sqrt_p = mu * pas[i].eta_max * subset[i].amp;
    powers[i] = sqrt_p * sqrt_p;
  }
  return powers;
}

struct BruteForceSolution {
  bool feasible = false;
  std::vector<int> node_ids;      // winning subset, ascending node_id
  std::vector<double> powers_w;   // aligned with node_ids
  double total_power_w = 0.0;
};

/// Exhaustive search over all non-empty node subsets with rate-tight
/// closed-form powers per subset. Subsets that would push a node past its
/// transmit cap are skipped. Ties go to smaller cardinality, then to the
/// lexicographically smaller id list.
inline BruteForceSolution brute_force_best_subset(const Cluster& cluster, double r_dl,
                                                  const ScenarioConfig& cfg, int max_m = 12) {
  const int m = cluster.size();
  if (m > max_m) {
    throw std::invalid_argument("brute_force_best_subset: cluster larger than max_m");
  }
  if (!(r_dl > 0.0)) {
    throw std::invalid_argument("brute_force_best_subset: rate demand must be positive");
  }
  const double w = cfg.bandwidth_w;
  const double noise = std::pow(10.0, (cfg.noise_psd + 10.0 * std::log10(w) - 30.0) / 10.0);
  const double inpn = cfg.i_out + noise;
  const double g = std::pow(2.0, r_dl / w) - 1.0;
  const double a = cfg.pa_dependent_a;
  const double eta = cfg.eta_max;
  const double cap = (1.0 + a) * eta * cfg.p_max - a * cfg.p_max;
  const double floor_per_node = a * cfg.p_max / ((1.0 + a) * eta);

  BruteForceSolution best;
  std::vector<int> idx;
  std::vector<double> powers;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    idx.clear();
    double denom = 0.0;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        idx.push_back(i);
        const double amp = cluster.nodes[i].amp;
        denom += eta * amp * amp / inpn;
      }
    }
    powers.clear();
    bool capped = false;
    double pa_input_sum = 0.0;
    for (int i : idx) {
      const double amp = cluster.nodes[i].amp;
      const double p = g * (eta * eta * amp * amp / inpn) / (denom * denom);
      if (p > cap) {
        capped = true;
        break;
      }
      powers.push_back(p);
      pa_input_sum += p;
    }
    if (capped) continue;
    const int k = static_cast<int>(idx.size());
    const double total = pa_input_sum / ((1.0 + a) * eta) + k * floor_per_node +
                         k * cfg.p_base_tx + (cfg.num_nodes_m - k) * cfg.p_idle +
                         2.0 * cfg.dynamic_circuit_eps * r_dl + cfg.p_base_rx;

    bool better = false;
    if (!best.feasible) {
      better = true;
    } else if (total < best.total_power_w) {
      better = true;
    } else if (total == best.total_power_w) {
      if (k < static_cast<int>(best.node_ids.size())) {
        better = true;
      } else if (k == static_cast<int>(best.node_ids.size())) {
        std::vector<int> ids;
        for (int i : idx) ids.push_back(cluster.nodes[i].node_id);
        better = ids < best.node_ids;
      }
    }
    if (better) {
      best.feasible = true;
      best.total_power_w = total;
      best.node_ids.clear();
      for (int i : idx) best.node_ids.push_back(cluster.nodes[i].node_id);
      best.powers_w = powers;
    }
  }
  return best;
}

/// Lemma-style prefix check: every selected node is at least as strong as
/// every unselected one.
inline bool is_priority_prefix(const Cluster& cluster, std::span<const int> selected_ids) {
  double min_selected = std::numeric_limits<double>::infinity();
  double max_unselected = 0.0;
  for (const NodeChannel& n : cluster.nodes) {
    bool in = false;
    for (int id : selected_ids) {
      if (id == n.node_id) {
        in = true;
        break;
      }
    }
    if (in) {
      min_selected = std::min(min_selected, n.amp);
    } else {
      max_unselected = std::max(max_unselected, n.amp);
    }
  }
  return min_selected >= max_unselected;
}

struct PropertyResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string counterexample;  // drop CSV plus a rate_demand comment

  bool passed() const { return failures == 0; }
};

namespace detail {

inline std::string describe_instance(const Cluster& cluster, double r_dl) {
  std::string out = "# rate_demand = " + jtcomp::detail::format_double(r_dl) + "\n";
  out += cluster_to_csv(cluster);
  return out;
}

inline bool rel_close(double x, double y, double tol) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) <= tol * std::max(scale, 1e-300);
}

}  // namespace detail

/// The verify-command property suite: re-derives the closed-form results on
/// random drops and reports one pass/fail entry per property.
inline std::vector<PropertyResult> run_property_suite(const ScenarioConfig& base_cfg,
                                                      int instances, int max_m) {
  ScenarioConfig cfg = base_cfg;
  cfg.num_nodes_m = max_m;
  const RateContext ctx = make_rate_context(cfg);
  const PaModel pa = pa_from(cfg);

  PropertyResult closed_form{"closed_form_vs_numeric_oracle"};
  PropertyResult brute{"cns_pa_matches_subset_brute_force"};
  PropertyResult prefix{"brute_force_winner_is_priority_prefix"};
  PropertyResult criterion{"join_criterion_matches_energy_comparison"};
  PropertyResult greedy{"greedy_stop_matches_exhaustive_scan"};
  PropertyResult dominance{"cns_pa_dominates_baselines"};
  PropertyResult perturbation{"rate_preserving_perturbations_never_improve"};

  auto record_failure = [](PropertyResult& p, const Cluster& cluster, double r_dl) {
    if (p.failures == 0) p.counterexample = detail::describe_instance(cluster, r_dl);
    ++p.failures;
  };

  for (int i = 0; i < instances; ++i) {
    const Cluster cluster = realize_drop(cfg, static_cast<std::uint64_t>(i));
    const double se = static_cast<double>(i % 10 + 1);
    const double r_dl = se * cfg.bandwidth_w;
    std::vector<PaModel> pas(cluster.nodes.size(), pa);

    // Theorem-style allocation vs the bisection oracle, on a random prefix.
    {
      ++closed_form.instances;
      const int k = i % cfg.num_nodes_m + 1;
      std::span<const NodeChannel> prefix_nodes(cluster.nodes.data(), k);
      std::span<const PaModel> prefix_pas(pas.data(), k);
      const std::vector<double> closed = allocate_power(prefix_nodes, r_dl, prefix_pas, ctx);
      const std::vector<double> numeric = numeric_allocate(prefix_nodes, r_dl, prefix_pas, ctx);
      bool ok = true;
      double closed_total = 0.0;
      double numeric_total = 0.0;
      for (int j = 0; j < k; ++j) {
        if (!detail::rel_close(closed[j], numeric[j], 1e-6)) ok = false;
        closed_total += closed[j];
        numeric_total += numeric[j];
      }
      if (!detail::rel_close(closed_total, numeric_total, 1e-9)) ok = false;
      if (!ok) record_failure(closed_form, cluster, r_dl);
    }

    CnsPaStats stats;
    const CooperationSolution greedy_sol = cns_pa(cluster, r_dl, cfg, &stats);

    // Discrete search vs brute force, plus the selection-priority shape.
    {
      ++brute.instances;
      ++prefix.instances;
      const BruteForceSolution bf = brute_force_best_subset(cluster, r_dl, cfg, max_m);
      if (bf.feasible != greedy_sol.feasible()) {
        record_failure(brute, cluster, r_dl);
      } else if (bf.feasible &&
                 !detail::rel_close(bf.total_power_w, greedy_sol.total_power_w, 1e-9)) {
        record_failure(brute, cluster, r_dl);
      }
      if (bf.feasible && !is_priority_prefix(cluster, bf.node_ids)) {
        record_failure(prefix, cluster, r_dl);
      }
    }

    // Activation criterion vs a direct energy comparison at every size.
    {
      ++criterion.instances;
      const Cluster sorted = sort_by_priority(cluster);
      const GammaTable gamma = GammaTable::build(sorted, pa, ctx);
      bool ok = true;
      for (int m_bar = 1; m_bar < sorted.size(); ++m_bar) {
        const double e_now = p2_objective(m_bar, gamma, r_dl, cfg);
        const double e_next = p2_objective(m_bar + 1, gamma, r_dl, cfg);
        const bool tie = detail::rel_close(e_now, e_next, 1e-12);
        const bool expected = !tie && e_next < e_now;
        if (join_criterion(m_bar, gamma, r_dl, cfg) != expected) ok = false;
      }
      if (!ok) record_failure(criterion, cluster, r_dl);
    }

    // Greedy stopping point vs the full prefix scan.
    {
      ++greedy.instances;
      const CooperationSolution scan = exhaustive_prefix_scan(cluster, r_dl, cfg);
      if (scan.feasible() != greedy_sol.feasible() ||
          (scan.feasible() && scan.active_count != greedy_sol.active_count)) {
        record_failure(greedy, cluster, r_dl);
      }
    }

    // Optimality against every feasible baseline.
    if (greedy_sol.feasible()) {
      ++dominance.instances;
      const CooperationSolution candidates[] = {
          all_nodes_uniform(cluster, r_dl, cfg), all_nodes_pa(cluster, r_dl, cfg),
          single_node(cluster, r_dl, cfg), cns_uniform(cluster, r_dl, cfg)};
      for (const CooperationSolution& c : candidates) {
        if (c.feasible() && greedy_sol.total_power_w > c.total_power_w + 1e-12) {
          record_failure(dominance, cluster, r_dl);
          break;
        }
      }
    }

    // Move amplitude between node pairs along the rate constraint; total
    // power must not drop.
    if (greedy_sol.feasible() && greedy_sol.active_count >= 2) {
      ++perturbation.instances;
      const Cluster sorted = sort_by_priority(cluster);
      const int k = greedy_sol.active_count;
      bool ok = true;
      for (int src = 0; src < k && ok; ++src) {
        for (int dst = 0; dst < k && ok; ++dst) {
          if (src == dst) continue;
          for (double scale : {-1.0, -0.5, 0.5, 1.0}) {
            const double amp_src = sorted.nodes[src].amp;
            const double amp_dst = sorted.nodes[dst].amp;
            const double c_src = std::sqrt(greedy_sol.powers_w[src]) * amp_src;
            const double c_dst = std::sqrt(greedy_sol.powers_w[dst]) * amp_dst;
            const double delta = scale * 1e-3 * std::min(c_src, c_dst);
            if (c_src - delta < 0.0 || c_dst + delta < 0.0) continue;
            std::vector<double> perturbed = greedy_sol.powers_w;
            const double s_src = (c_src - delta) / amp_src;
            const double s_dst = (c_dst + delta) / amp_dst;
            perturbed[src] = s_src * s_src;
            perturbed[dst] = s_dst * s_dst;
            const double total = total_power(perturbed, k, cfg, r_dl);
            if (total < greedy_sol.total_power_w - 1e-12) {
              ok = false;
              break;
            }
          }
        }
      }
      if (!ok) record_failure(perturbation, cluster, r_dl);
    }
  }

  return {closed_form, brute, prefix, criterion, greedy, dominance, perturbation};
}

}  // namespace jtcomp::oracle
