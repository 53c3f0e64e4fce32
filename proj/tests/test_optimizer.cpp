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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "jtcomp/optimizer.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace jtcomp;

namespace {

Cluster synthetic_cluster(std::vector<double> amps) {
  Cluster c;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    NodeChannel n;
    n.node_id = static_cast<int>(i);
    n.amp = amps[i];
    n.fading_mag = 1.0;
    n.pathgain_linear = amps[i] * amps[i];
    n.distance_km = 0.1;
    c.nodes.push_back(n);
  }
  return c;
}

std::vector<PaModel> same_pa(const ScenarioConfig& cfg, std::size_t n) {
  return std::vector<PaModel>(n, pa_from(cfg));
}

}  // namespace

TEST_CASE("priority sort is idempotent and order-insensitive") {
  const ScenarioConfig cfg = table1_defaults();
  Cluster cluster = realize_drop(cfg, 1);
  const Cluster sorted_once = sort_by_priority(cluster);
  const Cluster sorted_twice = sort_by_priority(sorted_once);
  for (int i = 0; i < cluster.size(); ++i) {
    CHECK(sorted_once.nodes[i].amp == cluster.nodes[i].amp);  // drops come pre-sorted
    CHECK(sorted_twice.nodes[i].node_id == sorted_once.nodes[i].node_id);
  }

  Cluster reversed = cluster;
  std::reverse(reversed.nodes.begin(), reversed.nodes.end());
  const Cluster restored = sort_by_priority(reversed);
  for (int i = 0; i < cluster.size(); ++i) {
    CHECK(restored.nodes[i].node_id == cluster.nodes[i].node_id);
  }

  Cluster shuffled = cluster;
  std::mt19937 rng(99);
  std::shuffle(shuffled.nodes.begin(), shuffled.nodes.end(), rng);
  const Cluster resorted = sort_by_priority(shuffled);
  for (int i = 1; i < resorted.size(); ++i) {
    CHECK(resorted.nodes[i].amp <= resorted.nodes[i - 1].amp);
  }
}

TEST_CASE("priority sort breaks amplitude ties by node id") {
  Cluster c = synthetic_cluster({2e-6, 2e-6, 3e-6});
  std::swap(c.nodes[0], c.nodes[1]);  // ids now 1,0,2
  const Cluster sorted = sort_by_priority(c);
  CHECK(sorted.nodes[0].node_id == 2);
  CHECK(sorted.nodes[1].node_id == 0);
  CHECK(sorted.nodes[2].node_id == 1);
}

TEST_CASE("single node allocation closes the rate constraint directly") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  const Cluster c = synthetic_cluster({4.0e-6});
  const double r_dl = 3.0e7;
  const auto p = allocate_power(c.nodes, r_dl, same_pa(cfg, 1), ctx);
  const double g = rate_exponent_term(r_dl, cfg.bandwidth_w);
  CHECK_THAT(p[0], WithinRel(g * ctx.interference_plus_noise_w / (4.0e-6 * 4.0e-6), 1e-12));
}

TEST_CASE("two identical nodes split the power symmetrically") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  const double h = 2.5e-6;
  const Cluster c = synthetic_cluster({h, h});
  const double r_dl = 4.0e7;
  const auto p = allocate_power(c.nodes, r_dl, same_pa(cfg, 2), ctx);
  const double g = rate_exponent_term(r_dl, cfg.bandwidth_w);
  CHECK_THAT(p[0], WithinRel(g * ctx.interference_plus_noise_w / (4.0 * h * h), 1e-12));
  CHECK(p[0] == p[1]);
}

TEST_CASE("allocated powers are rate-tight and positive on random drops") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Cluster cluster = realize_drop(cfg, t);
    const double r_dl = static_cast<double>(t % 10 + 1) * cfg.bandwidth_w;
    for (int m_bar : {1, 4, 16}) {
      std::span<const NodeChannel> prefix(cluster.nodes.data(), m_bar);
      const auto p = allocate_power(prefix, r_dl, same_pa(cfg, m_bar), ctx);
      std::vector<double> amps(m_bar);
      for (int i = 0; i < m_bar; ++i) amps[i] = prefix[i].amp;
      CHECK_THAT(coherent_rate(p, amps, ctx), WithinRel(r_dl, 1e-9));
      for (double pw : p) CHECK(pw > 0.0);
    }
  }
}

TEST_CASE("allocation scales as 1/c^2 when amplitudes scale by c") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  const Cluster base = synthetic_cluster({5e-6, 3e-6, 2e-6, 1e-6});
  Cluster scaled = base;
  const double c = 3.7;
  for (auto& n : scaled.nodes) n.amp *= c;
  const double r_dl = 5.0e7;
  const auto p0 = allocate_power(base.nodes, r_dl, same_pa(cfg, 4), ctx);
  const auto p1 = allocate_power(scaled.nodes, r_dl, same_pa(cfg, 4), ctx);
  for (int i = 0; i < 4; ++i) {
    CHECK_THAT(p1[i], WithinRel(p0[i] / (c * c), 1e-12));
  }
}

TEST_CASE("allocation rejects bad arguments") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  const Cluster c = synthetic_cluster({1e-6});
  CHECK_THROWS_AS(allocate_power(c.nodes, 0.0, same_pa(cfg, 1), ctx), std::invalid_argument);
  CHECK_THROWS_AS(allocate_power(c.nodes, -1.0, same_pa(cfg, 1), ctx), std::invalid_argument);
  CHECK_THROWS_AS(allocate_power(std::span<const NodeChannel>{}, 1e6,
                                 std::span<const PaModel>{}, ctx),
                  std::invalid_argument);
}

TEST_CASE("closed-form objective equals the assembled total power") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  for (std::uint64_t t = 0; t < 25; ++t) {
    const Cluster cluster = realize_drop(cfg, t);
    const GammaTable gamma = GammaTable::build(cluster, pa_from(cfg), ctx);
    const double r_dl = static_cast<double>(t % 10 + 1) * cfg.bandwidth_w;
    for (int m_bar : {1, 3, 8, 16}) {
      std::span<const NodeChannel> prefix(cluster.nodes.data(), m_bar);
      const auto p = allocate_power(prefix, r_dl, same_pa(cfg, m_bar), ctx);
      CHECK_THAT(p2_objective(m_bar, gamma, r_dl, cfg),
                 WithinRel(total_power(p, m_bar, cfg, r_dl), 1e-12));
    }
  }
}

TEST_CASE("objective special cases") {
  ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  const Cluster cluster = realize_drop(cfg, 2);
  const double r_dl = 4.0e7;

  // ideal PA removes the floor sum
  ScenarioConfig ipa = cfg;
  ipa.pa_dependent_a = 0.0;
  const GammaTable gamma_ipa = GammaTable::build(cluster, pa_from(ipa), make_rate_context(ipa));
  const double g = rate_exponent_term(r_dl, ipa.bandwidth_w);
  const double alpha = 1.0 / gamma_ipa.sum_first(4);
  const double beta = 4 * ipa.p_base_tx + 12 * ipa.p_idle + 2.0 * ipa.dynamic_circuit_eps * r_dl +
                      ipa.p_base_rx;
  CHECK_THAT(p2_objective(4, gamma_ipa, r_dl, ipa), WithinRel(alpha * g + beta, 1e-13));

  // full activation leaves no idle term
  const GammaTable gamma = GammaTable::build(cluster, pa_from(cfg), ctx);
  const double full = p2_objective(16, gamma, r_dl, cfg);
  ScenarioConfig no_idle = cfg;
  no_idle.p_idle = 123.0;  // must not matter at m_bar = M
  const GammaTable gamma2 = GammaTable::build(cluster, pa_from(no_idle), ctx);
  CHECK(p2_objective(16, gamma2, r_dl, no_idle) == full);
}

TEST_CASE("activation criterion matches the direct energy comparison") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Cluster cluster = realize_drop(cfg, t);
    const GammaTable gamma = GammaTable::build(cluster, pa_from(cfg), ctx);
    const double r_dl = static_cast<double>(t % 10 + 1) * cfg.bandwidth_w;
    for (int m_bar = 1; m_bar < cluster.size(); ++m_bar) {
      const bool joins = join_criterion(m_bar, gamma, r_dl, cfg);
      const bool saves = p2_objective(m_bar + 1, gamma, r_dl, cfg) <
                         p2_objective(m_bar, gamma, r_dl, cfg);
      CHECK(joins == saves);
    }
  }
}

TEST_CASE("non-positive marginal cost always activates") {
  ScenarioConfig cfg = table1_defaults();
  cfg.pa_dependent_a = 0.0;
  cfg.p_base_tx = 0.005;
  cfg.p_idle = 0.010;  // theta = -0.005
  const RateContext ctx = make_rate_context(cfg);
  const Cluster cluster = realize_drop(cfg, 3);
  const GammaTable gamma = GammaTable::build(cluster, pa_from(cfg), ctx);
  for (int m_bar = 1; m_bar < cluster.size(); ++m_bar) {
    CHECK(join_criterion(m_bar, gamma, 1.0e6, cfg));
  }
}

TEST_CASE("identical channels reduce the criterion to the algebraic form") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  const double h = 3.0e-6;
  const Cluster cluster = synthetic_cluster(std::vector<double>(6, h));
  const GammaTable gamma = GammaTable::build(cluster, pa_from(cfg), ctx);
  const double gamma_one = gamma.gamma[0];
  const double a = cfg.pa_dependent_a;
  const double theta =
      a * cfg.p_max / ((1.0 + a) * cfg.eta_max) + cfg.p_base_tx - cfg.p_idle;
  for (int m_bar = 1; m_bar < 6; ++m_bar) {
    for (double se : {1.0, 5.0, 15.0, 25.0}) {
      const double r_dl = se * cfg.bandwidth_w;
      const double g = rate_exponent_term(r_dl, cfg.bandwidth_w);
      const bool expected =
          g > static_cast<double>(m_bar) * (m_bar + 1) * gamma_one * theta * (1.0 + a);
      CHECK(join_criterion(m_bar, gamma, r_dl, cfg) == expected);
    }
  }
}

TEST_CASE("criterion left side strictly decreases along the cluster") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  for (std::uint64_t t = 0; t < 25; ++t) {
    const Cluster cluster = realize_drop(cfg, t);
    const GammaTable gamma = GammaTable::build(cluster, pa_from(cfg), ctx);
    double prev = std::numeric_limits<double>::infinity();
    for (int m_bar = 1; m_bar < cluster.size(); ++m_bar) {
      const double lhs =
          gamma.gamma[m_bar] / (gamma.sum_first(m_bar) * gamma.sum_first(m_bar + 1));
      CHECK(lhs < prev);
      prev = lhs;
    }
  }
}

TEST_CASE("tiny demand keeps only the strongest node") {
  const ScenarioConfig cfg = table1_defaults();
  const Cluster cluster = realize_drop(cfg, 4);
  const CooperationSolution sol = cns_pa(cluster, 1.0, cfg);  // 1 bit/s
  REQUIRE(sol.status == SolutionStatus::kOptimal);
  CHECK(sol.active_count == 1);
  CHECK(sol.powers_w.size() == 1);
  CHECK(sol.powers_w[0] > 0.0);
}

TEST_CASE("zero demand idles the whole cluster") {
  const ScenarioConfig cfg = table1_defaults();
  const Cluster cluster = realize_drop(cfg, 4);
  const CooperationSolution sol = cns_pa(cluster, 0.0, cfg);
  CHECK(sol.status == SolutionStatus::kOptimal);
  CHECK(sol.active_count == 0);
  CHECK(sol.powers_w.empty());
  CHECK_THAT(sol.total_power_w,
             WithinRel(cfg.num_nodes_m * cfg.p_idle + cfg.p_base_rx, 1e-15));
  CHECK(sol.energy_efficiency == 0.0);
  CHECK_THROWS_AS(cns_pa(cluster, -1.0, cfg), std::invalid_argument);
}

TEST_CASE("unreachable demand reports infeasible") {
  ScenarioConfig cfg = table1_defaults();
  cfg.num_nodes_m = 2;
  const Cluster cluster = synthetic_cluster({1e-8, 5e-9});
  const CooperationSolution sol = cns_pa(cluster, 20.0 * cfg.bandwidth_w, cfg);
  CHECK(sol.status == SolutionStatus::kInfeasible);
  CHECK(sol.powers_w.empty());
}

TEST_CASE("solutions are rate-tight with positive powers and exact EE") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  for (std::uint64_t t = 0; t < 40; ++t) {
    const Cluster cluster = realize_drop(cfg, t);
    const double r_dl = static_cast<double>(t % 10 + 1) * cfg.bandwidth_w;
    const CooperationSolution sol = cns_pa(cluster, r_dl, cfg);
    REQUIRE(sol.feasible());
    CHECK_THAT(sol.rate_achieved, WithinRel(r_dl, 1e-9));
    CHECK(sol.energy_efficiency == r_dl / sol.total_power_w);
    for (double p : sol.powers_w) CHECK(p > 0.0);
  }
}

TEST_CASE("exchanging an active node for a stronger idle one saves power") {
  const ScenarioConfig cfg = table1_defaults();
  const RateContext ctx = make_rate_context(cfg);
  const Cluster cluster = realize_drop(cfg, 6);
  const double r_dl = 4.0e7;

  // activate nodes {0,1,3}, leaving the stronger node 2 idle
  std::vector<NodeChannel> chosen{cluster.nodes[0], cluster.nodes[1], cluster.nodes[3]};
  REQUIRE(cluster.nodes[2].amp > cluster.nodes[3].amp);
  auto powers = allocate_power(chosen, r_dl, same_pa(cfg, 3), ctx);
  const double before = total_power(powers, 3, cfg, r_dl);

  // swap node 3 for node 2 at rate-preserving power
  const double contribution = std::sqrt(powers[2]) * cluster.nodes[3].amp;
  const double swapped_sqrt = contribution / cluster.nodes[2].amp;
  powers[2] = swapped_sqrt * swapped_sqrt;
  std::vector<NodeChannel> swapped{cluster.nodes[0], cluster.nodes[1], cluster.nodes[2]};
  const double after = total_power(powers, 3, cfg, r_dl);
  CHECK(after < before);

  std::vector<double> amps;
  for (const auto& n : swapped) amps.push_back(n.amp);
  CHECK_THAT(coherent_rate(powers, amps, ctx), WithinRel(r_dl, 1e-9));
}

TEST_CASE("greedy stop equals the exhaustive prefix scan") {
  const ScenarioConfig cfg = table1_defaults();
  for (std::uint64_t t = 0; t < 60; ++t) {
    const Cluster cluster = realize_drop(cfg, t);
    for (double se : {1.0, 4.0, 10.0, 18.0, 24.0}) {
      const double r_dl = se * cfg.bandwidth_w;
      const CooperationSolution greedy = cns_pa(cluster, r_dl, cfg);
      const CooperationSolution scan = exhaustive_prefix_scan(cluster, r_dl, cfg);
      REQUIRE(greedy.feasible() == scan.feasible());
      if (greedy.feasible()) {
        CHECK(greedy.active_count == scan.active_count);
        CHECK(greedy.total_power_w == scan.total_power_w);
      }
    }
  }
}

TEST_CASE("criterion evaluations stay linear in the cluster size") {
  const ScenarioConfig cfg = table1_defaults();
  for (std::uint64_t t = 0; t < 30; ++t) {
    const Cluster cluster = realize_drop(cfg, t);
    CnsPaStats stats;
    cns_pa(cluster, 8.0 * cfg.bandwidth_w, cfg, &stats);
    CHECK(stats.criterion_evaluations <= cfg.num_nodes_m);
  }
}

TEST_CASE("cap violations grow the active set then mark the solution") {
  ScenarioConfig cfg = table1_defaults();
  cfg.num_nodes_m = 2;
  cfg.p_base_tx = 100.0;  // marginal cost large enough that the criterion alone stops at 1
  const RateContext ctx = make_rate_context(cfg);
  const double cap = transmit_power_cap(pa_from(cfg));
  const double h = 1.0e-6;
  const Cluster cluster = synthetic_cluster({h, h});

  // demand sized so one node needs 2.2x its cap but two nodes need 0.55x
  const double g = 2.2 * cap * h * h / ctx.interference_plus_noise_w;
  const double r_dl = cfg.bandwidth_w * std::log2(1.0 + g);
  const CooperationSolution sol = cns_pa(cluster, r_dl, cfg);
  REQUIRE(sol.status == SolutionStatus::kCapAdjusted);
  CHECK(sol.active_count == 2);
  for (double p : sol.powers_w) CHECK(p <= cap);
  CHECK_THAT(sol.rate_achieved, WithinRel(r_dl, 1e-9));

  // two unequal nodes: demand feasible at uniform caps but not under the
  // closed-form split, which overloads the strong node even at full size
  ScenarioConfig cfg2 = table1_defaults();
  cfg2.num_nodes_m = 2;
  const Cluster skewed = synthetic_cluster({h, 0.5 * h});
  const double g2 = 2.0 * cap * h * h / ctx.interference_plus_noise_w;
  const double r2 = cfg2.bandwidth_w * std::log2(1.0 + g2);
  const RateContext ctx2 = make_rate_context(cfg2);
  REQUIRE(is_feasible(r2, skewed.nodes, pa_from(cfg2), ctx2));
  const CooperationSolution sol2 = cns_pa(skewed, r2, cfg2);
  CHECK(sol2.status == SolutionStatus::kInfeasible);
}
