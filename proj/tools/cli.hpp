/*
 * Copyright 2026 The hrsim Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hrsim/hrsim.hpp"

namespace hrsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInvariant = 3;

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> settings;  // key=value
  std::optional<std::string> strategy;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

// Defaults, then the config file, then --set, then the dedicated flags.
inline ExperimentConfig resolve_config(const CommonFlags& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw ConfigError("config: cannot read " + flags.config_path);
    parse_config(in, cfg);
  }
  for (const std::string& kv : flags.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_setting(cfg, detail::trim(std::string_view(kv).substr(0, eq)),
                  detail::trim(std::string_view(kv).substr(eq + 1)));
  }
  if (flags.strategy) apply_setting(cfg, "strategy", *flags.strategy);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.out) cfg.output = *flags.out;
  validate(cfg);
  return cfg;
}

inline std::vector<StrategyKind> parse_strategy_list(const std::string& text) {
  std::vector<StrategyKind> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = detail::trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    auto s = parse_strategy(item);
    if (!s) throw ConfigError("strategies: unknown strategy '" + std::string(item) + "'");
    out.push_back(*s);
  }
  if (out.empty()) throw ConfigError("strategies: empty list");
  return out;
}

inline std::vector<std::uint64_t> parse_uint_list(const char* key, const std::string& text) {
  std::vector<std::uint64_t> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = detail::trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (!item.empty()) out.push_back(detail::parse_uint(key, item));
  }
  if (out.empty()) throw ConfigError(std::string(key) + ": empty list");
  return out;
}

template <typename Fn>
void write_to(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file = open_output(path);
  fn(file);
  if (!file) throw std::runtime_error("write to " + path + " failed");
}

inline void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "key = value configuration file");
  cmd->add_option("--set", flags.settings, "override one setting, key=value (repeatable)");
  cmd->add_option("--strategy", flags.strategy, "replication strategy: hrs, bhr or lru");
  cmd->add_option("--seed", flags.seed, "workload seed");
  cmd->add_option("--out", flags.out, "summary CSV path (default stdout)");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hierarchical data grid replication and scheduling simulator", "hrsim"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string dump_jobs;
  std::string trace_path;
  std::string dump_catalog;
  bool check = false;
  CLI::App* run = app.add_subcommand("run", "simulate one configuration");
  add_common(run, run_flags);
  run->add_option("--dump-jobs", dump_jobs, "write the per-job CSV to this path");
  run->add_option("--trace", trace_path, "write the event trace to this path");
  run->add_option("--dump-catalog", dump_catalog, "write the end-of-run replica catalog CSV");
  run->add_flag("--check", check, "verify internal invariants after every event");

  CommonFlags jobs_flags;
  std::string jobs_list = "100,200,300,400,500,600,700,800,900,1000";
  std::string jobs_strategies = "hrs,bhr,lru";
  std::string jobs_seeds = "0";
  CLI::App* sweep_jobs_cmd = app.add_subcommand("sweep-jobs", "vary the number of jobs");
  add_common(sweep_jobs_cmd, jobs_flags);
  sweep_jobs_cmd->add_option("--jobs", jobs_list, "comma-separated job counts");
  sweep_jobs_cmd->add_option("--strategies", jobs_strategies, "comma-separated strategies");
  sweep_jobs_cmd->add_option("--seeds", jobs_seeds, "seeds, e.g. 0..9 or 1,2,3");

  CommonFlags wan_flags;
  std::string wan_list = "10,50,100,500,1000";
  std::string wan_strategies = "hrs,bhr,lru";
  std::string wan_seeds = "0";
  CLI::App* sweep_wan_cmd = app.add_subcommand("sweep-wan", "vary the inter-region bandwidth");
  add_common(sweep_wan_cmd, wan_flags);
  sweep_wan_cmd->add_option("--wan", wan_list, "comma-separated WAN bandwidths in Mbps");
  sweep_wan_cmd->add_option("--strategies", wan_strategies, "comma-separated strategies");
  sweep_wan_cmd->add_option("--seeds", wan_seeds, "seeds, e.g. 0..9 or 1,2,3");

  CommonFlags print_flags;
  CLI::App* print = app.add_subcommand("print-config", "show the effective configuration");
  add_common(print, print_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      const ExperimentConfig cfg = resolve_config(run_flags);
      RunOptions opts;
      opts.trace = !trace_path.empty();
      opts.check_invariants = check;
      ExperimentRun result = run_experiment(cfg, opts);
      write_to(cfg.output, out, [&](std::ostream& o) { write_csv({result.report}, o); });
      if (!dump_jobs.empty()) {
        write_to(dump_jobs, out, [&](std::ostream& o) { write_jobs_csv(result.result.records, o); });
      }
      if (!trace_path.empty()) {
        write_to(trace_path, out, [&](std::ostream& o) {
          for (const TraceLine& line : result.result.trace) o << line.render() << '\n';
        });
      }
      if (!dump_catalog.empty()) {
        // The catalog only lives inside the simulation; replay to recover it.
        SimOptions sim;
        sim.strategy = cfg.strategy;
        sim.scheduler = cfg.scheduler;
        sim.seed = cfg.seed;
        Simulation replay(build_scenario(cfg), sim);
        replay.run();
        write_to(dump_catalog, out, [&](std::ostream& o) { replay.catalog().write_dump(o); });
      }
    } else if (*sweep_jobs_cmd) {
      const ExperimentConfig cfg = resolve_config(jobs_flags);
      auto reports = sweep_jobs(cfg, parse_uint_list("jobs", jobs_list),
                                parse_strategy_list(jobs_strategies), parse_seed_list(jobs_seeds));
      write_to(cfg.output, out, [&](std::ostream& o) { write_csv(std::move(reports), o); });
    } else if (*sweep_wan_cmd) {
      const ExperimentConfig cfg = resolve_config(wan_flags);
      auto reports = sweep_wan(cfg, parse_uint_list("wan", wan_list),
                               parse_strategy_list(wan_strategies), parse_seed_list(wan_seeds));
      write_to(cfg.output, out, [&](std::ostream& o) { write_csv(std::move(reports), o); });
    } else if (*print) {
      const ExperimentConfig cfg = resolve_config(print_flags);
      out << to_config_text(cfg);
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace hrsim::cli
