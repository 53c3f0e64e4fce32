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
//
// Command-line front end: `run` evaluates every scheme on one drop, `sweep`
// produces the rate-sweep CSV, `verify` runs the oracle property suite.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jtcomp/jtcomp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitPropertyFailure = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::vector<double> se_grid;
  std::string out_path;
  std::string pa_mode;  // "", "etpa", "ipa"
  int threads = 1;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "Config file (key = value lines)");
  cmd->add_option("--seed", opt.seed, "Master RNG seed (overrides config)");
  cmd->add_option("--trials", opt.trials, "Monte Carlo trials (overrides config)");
  cmd->add_option("--se", opt.se_grid, "Spectral efficiency points, bps/Hz")->delimiter(',');
  cmd->add_option("--out", opt.out_path, "Output file path");
  cmd->add_option("--pa", opt.pa_mode, "PA model: etpa (config a) or ipa (a = 0)")
      ->check(CLI::IsMember({"etpa", "ipa"}));
}

// Flags win over the file, the file wins over Table I defaults.
bool resolve_config(const CommonOptions& opt, jtcomp::ScenarioConfig& cfg) {
  std::vector<std::string> diagnostics;
  cfg = jtcomp::table1_defaults();
  if (!opt.config_path.empty()) {
    cfg = jtcomp::load_config_file(opt.config_path, diagnostics);
  }
  if (!diagnostics.empty()) {
    for (const std::string& d : diagnostics) std::fprintf(stderr, "config error: %s\n", d.c_str());
    return false;
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.pa_mode == "ipa") cfg.pa_dependent_a = 0.0;
  const auto errors = jtcomp::validate(cfg);
  for (const auto& e : errors) {
    std::fprintf(stderr, "config error: %s %s\n", e.field.c_str(), e.reason.c_str());
  }
  return errors.empty();
}

void log_resolved_config(const jtcomp::ScenarioConfig& cfg) {
  std::fprintf(stderr, "# resolved configuration\n");
  std::fputs(jtcomp::emit_config(cfg).c_str(), stderr);
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int cmd_run(const CommonOptions& opt, const std::string& drop_path,
            const std::string& dump_drop_path) {
  jtcomp::ScenarioConfig cfg;
  if (!resolve_config(opt, cfg)) return kExitConfigError;
  if (opt.se_grid.size() > 1) {
    std::fprintf(stderr, "run takes at most one --se value\n");
    return kExitConfigError;
  }
  log_resolved_config(cfg);

  const double r_dl = opt.se_grid.empty() ? cfg.rate_demand : opt.se_grid[0] * cfg.bandwidth_w;
  jtcomp::Cluster cluster;
  if (!drop_path.empty()) {
    std::ifstream in(drop_path, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "cannot open drop file: %s\n", drop_path.c_str());
      return kExitConfigError;
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::string> diagnostics;
    cluster = jtcomp::parse_cluster_csv(text, diagnostics);
    if (!diagnostics.empty() || cluster.nodes.empty()) {
      for (const auto& d : diagnostics) std::fprintf(stderr, "drop error: %s\n", d.c_str());
      if (cluster.nodes.empty()) std::fprintf(stderr, "drop error: no nodes parsed\n");
      return kExitConfigError;
    }
    cfg.num_nodes_m = cluster.size();
  } else {
    cluster = jtcomp::realize_drop(cfg, 0);
  }
  if (!dump_drop_path.empty() &&
      !write_file(dump_drop_path, jtcomp::cluster_to_csv(cluster))) {
    std::fprintf(stderr, "cannot write drop dump: %s\n", dump_drop_path.c_str());
    return kExitConfigError;
  }

  const jtcomp::TrialRecord rec = jtcomp::evaluate_trial(cluster, r_dl, cfg, 0);
  std::fprintf(stdout, "rate demand: %.6g Mbit/s (%.6g bps/Hz)\n", r_dl / 1e6,
               r_dl / cfg.bandwidth_w);
  std::fputs(jtcomp::solution_table(rec.per_scheme).c_str(), stdout);

  if (!opt.out_path.empty()) {
    std::string csv = "scheme,status,active_count,total_power_w,ee_mbps_per_w,rate_bps\n";
    for (const auto& sol : rec.per_scheme) {
      csv += jtcomp::scheme_label(sol.scheme);
      csv += ',';
      csv += jtcomp::status_label(sol.status);
      csv += ',';
      csv += std::to_string(sol.active_count);
      csv += ',';
      csv += jtcomp::detail::format_double(sol.total_power_w);
      csv += ',';
      csv += jtcomp::detail::format_double(sol.energy_efficiency / 1e6);
      csv += ',';
      csv += jtcomp::detail::format_double(sol.rate_achieved);
      csv += '\n';
    }
    if (!write_file(opt.out_path, csv)) {
      std::fprintf(stderr, "cannot write output: %s\n", opt.out_path.c_str());
      return kExitConfigError;
    }
  }
  return rec.per_scheme[0].feasible() ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const CommonOptions& opt) {
  jtcomp::ScenarioConfig cfg;
  if (!resolve_config(opt, cfg)) return kExitConfigError;
  log_resolved_config(cfg);

  std::vector<double> grid = opt.se_grid;
  if (grid.empty()) {
    for (int se = 1; se <= 10; ++se) grid.push_back(se);
  }
  const jtcomp::SweepResult result = jtcomp::sweep(cfg, grid, opt.threads);
  const std::string csv = jtcomp::sweep_to_csv(result);
  if (opt.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
    return kExitOk;
  }
  if (!write_file(opt.out_path, csv)) {
    std::fprintf(stderr, "cannot write output: %s\n", opt.out_path.c_str());
    return kExitConfigError;
  }
  std::fprintf(stdout, "wrote %zu grid points x 5 schemes to %s\n", grid.size(),
               opt.out_path.c_str());
  return kExitOk;
}

int cmd_verify(const CommonOptions& opt, int instances, int max_m) {
  if (max_m > 12 || max_m < 1) {
    std::fprintf(stderr, "verify: --max-m must be in [1, 12]\n");
    return kExitConfigError;
  }
  jtcomp::ScenarioConfig cfg;
  if (!resolve_config(opt, cfg)) return kExitConfigError;
  log_resolved_config(cfg);

  const auto results = jtcomp::oracle::run_property_suite(cfg, instances, max_m);
  bool all_passed = true;
  std::string first_counterexample;
  for (const auto& r : results) {
    if (r.passed()) {
      std::fprintf(stdout, "PASS %-42s (%d instances)\n", r.name.c_str(), r.instances);
    } else {
      all_passed = false;
      std::fprintf(stdout, "FAIL %-42s (%d of %d failed)\n", r.name.c_str(), r.failures,
                   r.instances);
      if (first_counterexample.empty()) first_counterexample = r.counterexample;
    }
  }
  if (!all_passed) {
    const std::string path = opt.out_path.empty() ? "counterexample.csv" : opt.out_path;
    if (write_file(path, first_counterexample)) {
      std::fprintf(stderr, "counterexample written to %s (inspect via: jtcomp run --drop %s)\n",
                   path.c_str(), path.c_str());
    }
    return kExitPropertyFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficiency optimal node selection and power allocation "
               "for coherent joint-transmission downlink"};
  app.require_subcommand(1);

  CommonOptions run_opt, sweep_opt, verify_opt;
  std::string drop_path, dump_drop_path;
  int instances = 500;
  int max_m = 8;

  CLI::App* run = app.add_subcommand("run", "Evaluate all schemes on a single drop");
  add_common_flags(run, run_opt);
  run->add_option("--drop", drop_path, "Evaluate a dumped drop CSV instead of generating one");
  run->add_option("--dump-drop", dump_drop_path, "Write the evaluated drop as CSV");

  CLI::App* sw = app.add_subcommand("sweep", "Monte Carlo sweep over spectral efficiency");
  add_common_flags(sw, sweep_opt);
  sw->add_option("--threads", sweep_opt.threads, "Worker threads (0 = hardware)");

  CLI::App* verify = app.add_subcommand("verify", "Run the oracle property suite");
  add_common_flags(verify, verify_opt);
  verify->add_option("--instances", instances, "Random instances per property");
  verify->add_option("--max-m", max_m, "Cluster size for subset brute force (<= 12)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opt, drop_path, dump_drop_path);
    if (sw->parsed()) return cmd_sweep(sweep_opt);
    if (verify->parsed()) return cmd_verify(verify_opt, instances, max_m);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  }
  return kExitConfigError;
}
