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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jtcomp/units.hpp"

namespace jtcomp {

// Full experiment configuration. Field names double as config-file keys.
// Units: powers in watts except noise_psd (dBm/Hz) and the path-loss fields
// (dB, dB/decade); geometry in km except min_distance_m; rates in bit/s.
struct ScenarioConfig {
  double bandwidth_w = 10.0e6;           // system bandwidth W, Hz
  double noise_psd = -174.0;             // N0, dBm/Hz
  int num_nodes_m = 16;                  // cluster size M
  double pathloss_intercept_db = 103.8;  // loss at 1 km, dB
  double pathloss_slope = 21.0;          // dB per decade of distance
  double node_density = 50.0;            // zeta, nodes per km^2
  double region_d1_km = 1.0;             // D1
  double region_d2_km = 1.0;             // D2
  double p_idle = 0.010;                 // idle-mode node power, W
  double p_base_tx = 0.050;              // static transmit circuit power, W
  double p_base_rx = 0.050;              // static receive circuit power, W
  double dynamic_circuit_eps = 2.0e-9;   // epsilon, W per bit/s (2 mW/Mbps)
  double p_max = 39.810717055349734;     // max PA output power per node, W (46 dBm)
  double eta_max = 0.35;                 // max PA efficiency
  double pa_dependent_a = 0.0082;        // ETPA dependent parameter (0 = ideal PA)
  double i_out = 0.0;                    // out-of-cluster interference power, W
  double rate_demand = 4.0e7;            // R_dl, bit/s
  int trials = 500;                      // Monte Carlo trials
  std::uint64_t seed = 1;                // master RNG seed
  double min_distance_m = 10.0;          // path-loss distance floor, meters
};

inline ScenarioConfig table1_defaults() { return ScenarioConfig{}; }

struct ConfigError {
  std::string field;
  std::string reason;
};

// Checks every invariant and reports all violations, not just the first.
inline std::vector<ConfigError> validate(const ScenarioConfig& cfg) {
  std::vector<ConfigError> errors;
  auto require = [&](bool ok, const char* field, const char* reason) {
    if (!ok) errors.push_back({field, reason});
  };
  require(std::isfinite(cfg.bandwidth_w) && cfg.bandwidth_w > 0, "bandwidth_w", "must be > 0");
  require(std::isfinite(cfg.noise_psd), "noise_psd", "must be finite");
  require(cfg.num_nodes_m >= 1, "num_nodes_m", "must be >= 1");
  require(std::isfinite(cfg.pathloss_intercept_db), "pathloss_intercept_db", "must be finite");
  require(std::isfinite(cfg.pathloss_slope), "pathloss_slope", "must be finite");
  require(std::isfinite(cfg.node_density) && cfg.node_density > 0, "node_density", "must be > 0");
  require(std::isfinite(cfg.region_d1_km) && cfg.region_d1_km > 0, "region_d1_km", "must be > 0");
  require(std::isfinite(cfg.region_d2_km) && cfg.region_d2_km > 0, "region_d2_km", "must be > 0");
  require(std::isfinite(cfg.p_idle) && cfg.p_idle >= 0, "p_idle", "must be >= 0");
  require(std::isfinite(cfg.p_base_tx) && cfg.p_base_tx >= 0, "p_base_tx", "must be >= 0");
  require(std::isfinite(cfg.p_base_rx) && cfg.p_base_rx >= 0, "p_base_rx", "must be >= 0");
  require(std::isfinite(cfg.dynamic_circuit_eps) && cfg.dynamic_circuit_eps >= 0,
          "dynamic_circuit_eps", "must be >= 0");
  require(std::isfinite(cfg.p_max) && cfg.p_max > 0, "p_max", "must be > 0");
  require(std::isfinite(cfg.eta_max) && cfg.eta_max > 0 && cfg.eta_max <= 1, "eta_max",
          "must be in (0,1]");
  require(std::isfinite(cfg.pa_dependent_a) && cfg.pa_dependent_a >= 0, "pa_dependent_a",
          "must be >= 0");
  require(std::isfinite(cfg.i_out) && cfg.i_out >= 0, "i_out", "must be >= 0");
  require(std::isfinite(cfg.rate_demand) && cfg.rate_demand >= 0, "rate_demand", "must be >= 0");
  require(cfg.trials >= 1, "trials", "must be >= 1");
  require(std::isfinite(cfg.min_distance_m) && cfg.min_distance_m > 0, "min_distance_m",
          "must be > 0");
  return errors;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

template <typename Int>
inline bool parse_int(std::string_view s, Int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace detail

// One `key = value` per line, `#` starts a comment, unknown keys are errors,
// missing keys keep their Table I defaults. Emitted text re-parses to the
// same bits (shortest round-trip formatting).
inline ScenarioConfig parse_config_text(std::string_view text,
                                        std::vector<std::string>& diagnostics) {
  ScenarioConfig cfg = table1_defaults();
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      diagnostics.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    std::string_view key = detail::trim(line.substr(0, eq));
    std::string_view value = detail::trim(line.substr(eq + 1));
    bool ok = true;
    if (key == "bandwidth_w") ok = detail::parse_double(value, cfg.bandwidth_w);
    else if (key == "noise_psd") ok = detail::parse_double(value, cfg.noise_psd);
    else if (key == "num_nodes_m") ok = detail::parse_int(value, cfg.num_nodes_m);
    else if (key == "pathloss_intercept_db") ok = detail::parse_double(value, cfg.pathloss_intercept_db);
    else if (key == "pathloss_slope") ok = detail::parse_double(value, cfg.pathloss_slope);
    else if (key == "node_density") ok = detail::parse_double(value, cfg.node_density);
    else if (key == "region_d1_km") ok = detail::parse_double(value, cfg.region_d1_km);
    else if (key == "region_d2_km") ok = detail::parse_double(value, cfg.region_d2_km);
    else if (key == "p_idle") ok = detail::parse_double(value, cfg.p_idle);
    else if (key == "p_base_tx") ok = detail::parse_double(value, cfg.p_base_tx);
    else if (key == "p_base_rx") ok = detail::parse_double(value, cfg.p_base_rx);
    else if (key == "dynamic_circuit_eps") ok = detail::parse_double(value, cfg.dynamic_circuit_eps);
    else if (key == "p_max") ok = detail::parse_double(value, cfg.p_max);
    else if (key == "eta_max") ok = detail::parse_double(value, cfg.eta_max);
    else if (key == "pa_dependent_a") ok = detail::parse_double(value, cfg.pa_dependent_a);
    else if (key == "i_out") ok = detail::parse_double(value, cfg.i_out);
    else if (key == "rate_demand") ok = detail::parse_double(value, cfg.rate_demand);
    else if (key == "trials") ok = detail::parse_int(value, cfg.trials);
    else if (key == "seed") ok = detail::parse_int(value, cfg.seed);
    else if (key == "min_distance_m") ok = detail::parse_double(value, cfg.min_distance_m);
    else {
      diagnostics.push_back("line " + std::to_string(line_no) + ": unknown key '" +
                            std::string(key) + "'");
      continue;
    }
    if (!ok) {
      diagnostics.push_back("line " + std::to_string(line_no) + ": bad value for '" +
                            std::string(key) + "'");
    }
  }
  return cfg;
}

inline ScenarioConfig load_config_file(const std::string& path,
                                       std::vector<std::string>& diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    diagnostics.push_back("cannot open config file: " + path);
    return table1_defaults();
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), diagnostics);
}

inline std::string emit_config(const ScenarioConfig& cfg) {
  std::string out;
  auto put = [&](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  put("bandwidth_w", detail::format_double(cfg.bandwidth_w));
  put("noise_psd", detail::format_double(cfg.noise_psd));
  put("num_nodes_m", std::to_string(cfg.num_nodes_m));
  put("pathloss_intercept_db", detail::format_double(cfg.pathloss_intercept_db));
  put("pathloss_slope", detail::format_double(cfg.pathloss_slope));
  put("node_density", detail::format_double(cfg.node_density));
  put("region_d1_km", detail::format_double(cfg.region_d1_km));
  put("region_d2_km", detail::format_double(cfg.region_d2_km));
  put("p_idle", detail::format_double(cfg.p_idle));
  put("p_base_tx", detail::format_double(cfg.p_base_tx));
  put("p_base_rx", detail::format_double(cfg.p_base_rx));
  put("dynamic_circuit_eps", detail::format_double(cfg.dynamic_circuit_eps));
  put("p_max", detail::format_double(cfg.p_max));
  put("eta_max", detail::format_double(cfg.eta_max));
  put("pa_dependent_a", detail::format_double(cfg.pa_dependent_a));
  put("i_out", detail::format_double(cfg.i_out));
  put("rate_demand", detail::format_double(cfg.rate_demand));
  put("trials", std::to_string(cfg.trials));
  put("seed", std::to_string(cfg.seed));
  put("min_distance_m", detail::format_double(cfg.min_distance_m));
  return out;
}

}  // namespace jtcomp
