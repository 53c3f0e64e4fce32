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
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "jtcomp/baselines.hpp"
#include "jtcomp/channel.hpp"
#include "jtcomp/optimizer.hpp"

namespace jtcomp {

// One drop evaluated by every scheme at one rate demand. All schemes see the
// identical cluster realization.
struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::vector<CooperationSolution> per_scheme;  // ordered as kAllSchemes
  double min_amp = 0.0;
  double max_amp = 0.0;
};

inline TrialRecord evaluate_trial(const Cluster& cluster, double r_dl, const ScenarioConfig& cfg,
                                  std::uint64_t trial_id) {
  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.per_scheme.reserve(5);
  rec.per_scheme.push_back(cns_pa(cluster, r_dl, cfg));
  rec.per_scheme.push_back(all_nodes_uniform(cluster, r_dl, cfg));
  rec.per_scheme.push_back(all_nodes_pa(cluster, r_dl, cfg));
  rec.per_scheme.push_back(single_node(cluster, r_dl, cfg));
  rec.per_scheme.push_back(cns_uniform(cluster, r_dl, cfg));
  if (!cluster.nodes.empty()) {
    rec.min_amp = cluster.nodes.back().amp;
    rec.max_amp = cluster.nodes.front().amp;
  }
  return rec;
}

/// One full trial at the configured rate demand: realize the drop for this
/// trial id, evaluate every scheme on it.
inline TrialRecord run_trial(const ScenarioConfig& cfg, std::uint64_t trial_id) {
  const Cluster cluster = realize_drop(cfg, trial_id);
  return evaluate_trial(cluster, cfg.rate_demand, cfg, trial_id);
}

// Aggregated statistics for one (spectral-efficiency point, scheme) pair.
// Means cover only feasible trials; an empty group is flagged and carries
// NaN means.
struct SweepCell {
  double se_bps_hz = 0.0;
  Scheme scheme = Scheme::kCnsPa;
  double mean_ee_bit_j = 0.0;
  double stderr_ee_bit_j = 0.0;
  double mean_active_nodes = 0.0;
  double feasible_fraction = 0.0;
  int trials = 0;
  bool empty_group = false;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // grid order, 5 schemes per grid point

  const SweepCell* find(double se_bps_hz, Scheme scheme) const {
    for (const SweepCell& c : cells) {
      if (c.se_bps_hz == se_bps_hz && c.scheme == scheme) return &c;
    }
    return nullptr;
  }
};

/// Per-scheme aggregation of one grid point. Trials where cns_pa is
/// infeasible (demand above the full cluster's capped rate) are excluded
/// from every scheme's mean so the schemes stay comparable.
inline std::vector<SweepCell> aggregate(std::span<const TrialRecord> records, double se_bps_hz) {
  if (records.empty()) {
    throw std::invalid_argument("aggregate: no records");
  }
  std::vector<SweepCell> cells;
  for (std::size_t s = 0; s < std::size(kAllSchemes); ++s) {
    SweepCell cell;
    cell.se_bps_hz = se_bps_hz;
    cell.scheme = kAllSchemes[s];
    cell.trials = static_cast<int>(records.size());
    double sum_ee = 0.0;
    double sum_active = 0.0;
    int n = 0;
    for (const TrialRecord& rec : records) {
      if (!rec.per_scheme[0].feasible()) continue;  // cns_pa gate
      const CooperationSolution& sol = rec.per_scheme[s];
      if (!sol.feasible()) continue;
      sum_ee += sol.energy_efficiency;
      sum_active += sol.active_count;
      ++n;
    }
    cell.feasible_fraction = static_cast<double>(n) / static_cast<double>(records.size());
    if (n == 0) {
      cell.empty_group = true;
      cell.mean_ee_bit_j = std::numeric_limits<double>::quiet_NaN();
      cell.stderr_ee_bit_j = std::numeric_limits<double>::quiet_NaN();
      cell.mean_active_nodes = std::numeric_limits<double>::quiet_NaN();
    } else {
      cell.mean_ee_bit_j = sum_ee / n;
      cell.mean_active_nodes = sum_active / n;
      double ssq = 0.0;
      for (const TrialRecord& rec : records) {
        if (!rec.per_scheme[0].feasible()) continue;
        const CooperationSolution& sol = rec.per_scheme[s];
        if (!sol.feasible()) continue;
        const double d = sol.energy_efficiency - cell.mean_ee_bit_j;
        ssq += d * d;
      }
      cell.stderr_ee_bit_j = n > 1 ? std::sqrt(ssq / (n - 1)) / std::sqrt(n) : 0.0;
    }
    cells.push_back(cell);
  }
  return cells;
}

/// No strict rise after the first strict fall; boundary peaks count.
inline bool is_unimodal(std::span<const double> curve) {
  bool falling = false;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i] < curve[i - 1]) falling = true;
    else if (falling && curve[i] > curve[i - 1]) return false;
  }
  return true;
}

inline bool is_non_increasing(std::span<const double> curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i] > curve[i - 1]) return false;
  }
  return true;
}

inline bool is_non_decreasing(std::span<const double> curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i] < curve[i - 1]) return false;
  }
  return true;
}

/// Rate sweep with common random numbers: trial t uses the same drop at
/// every grid point, so curves are comparable point by point. Trials are
/// independent work units; records are merged in trial order, making the
/// result identical for any thread count.
inline SweepResult sweep(const ScenarioConfig& cfg, std::span<const double> se_grid,
                         int num_threads = 1) {
  if (se_grid.empty()) {
    throw std::invalid_argument("sweep: empty spectral-efficiency grid");
  }
  if (cfg.trials < 1) {
    throw std::invalid_argument("sweep: trials must be >= 1");
  }
  if (num_threads <= 0) {
    num_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (num_threads <= 0) num_threads = 1;
  }

  const int trials = cfg.trials;
  const std::size_t points = se_grid.size();
  std::vector<std::vector<TrialRecord>> records(points);
  for (auto& r : records) r.resize(trials);

  auto worker = [&](int first, int step) {
    for (int t = first; t < trials; t += step) {
      const Cluster cluster = realize_drop(cfg, static_cast<std::uint64_t>(t));
      for (std::size_t p = 0; p < points; ++p) {
        const double r_dl = se_grid[p] * cfg.bandwidth_w;
        records[p][t] = evaluate_trial(cluster, r_dl, cfg, static_cast<std::uint64_t>(t));
      }
    }
  };

  if (num_threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (int i = 0; i < num_threads; ++i) pool.emplace_back(worker, i, num_threads);
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  for (std::size_t p = 0; p < points; ++p) {
    auto cells = aggregate(records[p], se_grid[p]);
    result.cells.insert(result.cells.end(), cells.begin(), cells.end());
  }
  return result;
}

}  // namespace jtcomp
