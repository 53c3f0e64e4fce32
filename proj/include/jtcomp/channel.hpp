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
#include <stdexcept>
#include <utility>
#include <vector>

#include "jtcomp/random.hpp"
#include "jtcomp/scenario.hpp"

namespace jtcomp {

// One transmission node as seen by the receiver at the origin. Only the
// channel amplitude |h_m| matters downstream: coherent weighting cancels
// phases, so none are generated.
struct NodeChannel {
  int node_id = 0;
  double x_km = 0.0;
  double y_km = 0.0;
  double distance_km = 0.0;      // floored at min_distance
  double pathgain_linear = 0.0;  // inverse of path loss
  double fading_mag = 0.0;       // Rayleigh, E[mag^2] = 1
  double amp = 0.0;              // |h_m| = sqrt(pathgain) * fading_mag
};

// The M cooperating nodes, sorted by amp, non-increasing (ties by node_id).
struct Cluster {
  std::vector<NodeChannel> nodes;

  int size() const { return static_cast<int>(nodes.size()); }
  std::vector<double> amps() const {
    std::vector<double> a(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) a[i] = nodes[i].amp;
    return a;
  }
};

/// Homogeneous PPP over the rectangle [-D1/2,D1/2] x [-D2/2,D2/2]; count is
/// Poisson(zeta*D1*D2) and positions are uniform given the count.
inline std::vector<std::pair<double, double>> draw_ppp(const ScenarioConfig& cfg,
                                                       RandomStream& stream) {
  const double mean = cfg.node_density * cfg.region_d1_km * cfg.region_d2_km;
  const int count = stream.poisson(mean);
  std::vector<std::pair<double, double>> positions;
  positions.reserve(count);
  for (int i = 0; i < count; ++i) {
    double x = stream.uniform(-cfg.region_d1_km / 2.0, cfg.region_d1_km / 2.0);
    double y = stream.uniform(-cfg.region_d2_km / 2.0, cfg.region_d2_km / 2.0);
    positions.emplace_back(x, y);
  }
  return positions;
}

/// Linear path gain 10^(-(intercept + slope*log10(d))/10), with d floored at
/// the configured minimum distance.
inline double path_loss_linear(double d_km, const ScenarioConfig& cfg) {
  if (!(d_km > 0.0)) {
    throw std::invalid_argument("path_loss_linear: distance must be positive");
  }
  const double floor_km = cfg.min_distance_m / 1000.0;
  const double d = std::max(d_km, floor_km);
  const double loss_db = cfg.pathloss_intercept_db + cfg.pathloss_slope * std::log10(d);
  return std::pow(10.0, -loss_db / 10.0);
}

inline double draw_fading(RandomStream& stream) { return stream.rayleigh_unit_power(); }

/// One Monte Carlo drop: place nodes, compute |h_m|, keep the M strongest,
/// sorted by amp descending (ties by node_id). Redraws the whole drop when
/// fewer than M points land in the region.
inline Cluster realize_drop(const ScenarioConfig& cfg, std::uint64_t trial_id) {
  RandomStream placement =
      RandomStream::substream(cfg.seed, trial_id, RandomStream::Purpose::kPlacement);
  RandomStream fading =
      RandomStream::substream(cfg.seed, trial_id, RandomStream::Purpose::kFading);
  constexpr int kMaxAttempts = 1000;
  std::vector<std::pair<double, double>> positions;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kMaxAttempts) {
      throw std::runtime_error("realize_drop: exceeded drop-attempt cap");
    }
    positions = draw_ppp(cfg, placement);
    if (static_cast<int>(positions.size()) >= cfg.num_nodes_m) break;
  }

  const double floor_km = cfg.min_distance_m / 1000.0;
  std::vector<NodeChannel> all;
  all.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    NodeChannel n;
    n.node_id = static_cast<int>(i);
    n.x_km = positions[i].first;
    n.y_km = positions[i].second;
    n.distance_km = std::max(std::hypot(n.x_km, n.y_km), floor_km);
    n.pathgain_linear = path_loss_linear(n.distance_km, cfg);
    n.fading_mag = draw_fading(fading);
    n.amp = std::sqrt(n.pathgain_linear) * n.fading_mag;
    all.push_back(n);
  }
  std::sort(all.begin(), all.end(), [](const NodeChannel& a, const NodeChannel& b) {
    if (a.amp != b.amp) return a.amp > b.amp;
    return a.node_id < b.node_id;
  });
  all.resize(cfg.num_nodes_m);
  return Cluster{std::move(all)};
}

inline constexpr const char* kDropCsvHeader =
    "node_id,x_km,y_km,distance_km,pathloss_db,fading_mag,amp";

// Drop dump used by the verify command for reproducibility audits. amp is
// emitted with shortest round-trip formatting so a re-parsed cluster feeds
// the optimizer bit-identically.
inline std::string cluster_to_csv(const Cluster& cluster) {
  std::string out = kDropCsvHeader;
  out += '\n';
  for (const NodeChannel& n : cluster.nodes) {
    out += std::to_string(n.node_id);
    out += ',';
    out += detail::format_double(n.x_km);
    out += ',';
    out += detail::format_double(n.y_km);
    out += ',';
    out += detail::format_double(n.distance_km);
    out += ',';
    out += detail::format_double(-10.0 * std::log10(n.pathgain_linear));
    out += ',';
    out += detail::format_double(n.fading_mag);
    out += ',';
    out += detail::format_double(n.amp);
    out += '\n';
  }
  return out;
}

inline Cluster parse_cluster_csv(std::string_view text, std::vector<std::string>& diagnostics) {
  Cluster cluster;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kDropCsvHeader) {
        diagnostics.push_back("line 1: unexpected drop CSV header");
        return cluster;
      }
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 7) {
      diagnostics.push_back("line " + std::to_string(line_no) + ": expected 7 columns");
      continue;
    }
    NodeChannel n;
    double pathloss_db = 0.0;
    bool ok = detail::parse_int(fields[0], n.node_id) && detail::parse_double(fields[1], n.x_km) &&
              detail::parse_double(fields[2], n.y_km) &&
              detail::parse_double(fields[3], n.distance_km) &&
              detail::parse_double(fields[4], pathloss_db) &&
              detail::parse_double(fields[5], n.fading_mag) &&
              detail::parse_double(fields[6], n.amp);
    if (!ok) {
      diagnostics.push_back("line " + std::to_string(line_no) + ": bad numeric field");
      continue;
    }
    n.pathgain_linear = std::pow(10.0, -pathloss_db / 10.0);
    cluster.nodes.push_back(n);
  }
  return cluster;
}

}  // namespace jtcomp
