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

#include <cstdio>
#include <span>
#include <string>

#include "jtcomp/montecarlo.hpp"

namespace jtcomp {

inline constexpr const char* kSweepCsvHeader =
    "se_bps_hz,scheme,mean_ee_mbps_per_w,stderr_ee,mean_active_nodes,feasible_fraction,trials";

// Locale-independent CSV (dot decimals, LF endings, shortest round-trip
// doubles). Empty groups are omitted. EE columns are Mbps/W.
inline std::string sweep_to_csv(const SweepResult& result) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const SweepCell& cell : result.cells) {
    if (cell.empty_group) continue;
    out += detail::format_double(cell.se_bps_hz);
    out += ',';
    out += scheme_label(cell.scheme);
    out += ',';
    out += detail::format_double(cell.mean_ee_bit_j / 1e6);
    out += ',';
    out += detail::format_double(cell.stderr_ee_bit_j / 1e6);
    out += ',';
    out += detail::format_double(cell.mean_active_nodes);
    out += ',';
    out += detail::format_double(cell.feasible_fraction);
    out += ',';
    out += std::to_string(cell.trials);
    out += '\n';
  }
  return out;
}

/// Human-readable single-drop summary, one row per scheme.
inline std::string solution_table(std::span<const CooperationSolution> solutions) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %-12s %8s %14s %16s %14s\n", "scheme", "status",
                "active", "total_power_w", "ee_mbps_per_w", "rate_mbps");
  out += line;
  for (const CooperationSolution& sol : solutions) {
    if (sol.feasible()) {
      std::snprintf(line, sizeof(line), "%-12s %-12s %8d %14.6g %16.6g %14.6g\n",
                    scheme_label(sol.scheme), status_label(sol.status), sol.active_count,
                    sol.total_power_w, sol.energy_efficiency / 1e6, sol.rate_achieved / 1e6);
    } else {
      std::snprintf(line, sizeof(line), "%-12s %-12s %8s %14s %16s %14s\n",
                    scheme_label(sol.scheme), status_label(sol.status), "-", "-", "-", "-");
    }
    out += line;
  }
  return out;
}

}  // namespace jtcomp
