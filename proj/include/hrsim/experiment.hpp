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

#include <cstdint>
#include <string>
#include <vector>

#include "hrsim/config.hpp"
#include "hrsim/metrics.hpp"
#include "hrsim/prng.hpp"
#include "hrsim/simulation.hpp"
#include "hrsim/topology.hpp"
#include "hrsim/workload.hpp"

namespace hrsim {

inline Topology build_topology(const TopologyConfig& t) {
  BandwidthModel bw{t.lan_mbps, t.wan_mbps, t.wan_overrides};
  return Topology::uniform(t.n_regions, t.sites_per_region, t.mips, t.storage_bytes,
                           std::move(bw));
}

// The workload is a pure function of (seed, workload and topology settings);
// strategy and scheduler never touch this generator.
inline Scenario build_scenario(const ExperimentConfig& cfg) {
  validate(cfg);
  Topology topology = build_topology(cfg.topology);
  const WorkloadConfig& w = cfg.workload;
  SplitMix64 rng(cfg.seed);
  std::vector<FileRecord> dataset = generate_dataset(w.n_files, w.file_size_bytes);
  std::vector<JobType> types =
      generate_job_types(rng, w.n_job_types, w.files_per_job, dataset, w.job_length_mi);
  std::vector<Job> jobs = generate_workload(rng, w.n_jobs, w.n_job_types, w.inter_arrival);

  std::vector<Bytes> caps;
  for (const Site& s : topology.sites()) caps.push_back(s.storage_bytes);
  ReplicaCatalog scratch(caps);
  std::vector<SiteId> masters = place_masters(rng, dataset, topology, scratch);
  return Scenario{std::move(topology), std::move(dataset), std::move(types), std::move(jobs),
                  std::move(masters)};
}

struct RunOptions {
  bool trace = false;
  bool check_invariants = false;
};

struct ExperimentRun {
  MetricsReport report;
  SimulationResult result;
};

inline ExperimentRun run_experiment(const ExperimentConfig& cfg, RunOptions opts = {}) {
  SimOptions sim;
  sim.strategy = cfg.strategy;
  sim.scheduler = cfg.scheduler;
  sim.seed = cfg.seed;
  sim.trace = opts.trace;
  sim.check_invariants = opts.check_invariants;
  Simulation simulation(build_scenario(cfg), sim);
  ExperimentRun run{{}, simulation.run()};
  run.report = aggregate(run.result.records);
  run.report.strategy = std::string(to_string(cfg.strategy));
  run.report.seed = cfg.seed;
  run.report.wan_mbps = cfg.topology.wan_mbps;
  run.report.lan_mbps = cfg.topology.lan_mbps;
  return run;
}

// Cross product strategy x job count x seed. Each run owns all of its state.
inline std::vector<MetricsReport> sweep_jobs(const ExperimentConfig& base,
                                             const std::vector<std::uint64_t>& job_counts,
                                             const std::vector<StrategyKind>& strategies,
                                             const std::vector<std::uint64_t>& seeds) {
  if (job_counts.empty()) throw ConfigError("sweep-jobs: job count list is empty");
  std::vector<MetricsReport> out;
  for (StrategyKind s : strategies) {
    for (std::uint64_t n : job_counts) {
      for (std::uint64_t seed : seeds) {
        ExperimentConfig cfg = base;
        cfg.strategy = s;
        cfg.workload.n_jobs = n;
        cfg.seed = seed;
        out.push_back(run_experiment(cfg).report);
      }
    }
  }
  return out;
}

// Cross product strategy x WAN bandwidth x seed; nothing else varies.
inline std::vector<MetricsReport> sweep_wan(const ExperimentConfig& base,
                                            const std::vector<std::uint64_t>& wan_values,
                                            const std::vector<StrategyKind>& strategies,
                                            const std::vector<std::uint64_t>& seeds) {
  if (wan_values.empty()) throw ConfigError("sweep-wan: bandwidth list is empty");
  for (std::uint64_t wan : wan_values) {
    if (wan == 0 || wan > base.topology.lan_mbps) {
      throw ConfigError("topology.wan_mbps: sweep value " + std::to_string(wan) +
                        " must satisfy 0 < wan <= lan_mbps");
    }
  }
  std::vector<MetricsReport> out;
  for (StrategyKind s : strategies) {
    for (std::uint64_t wan : wan_values) {
      for (std::uint64_t seed : seeds) {
        ExperimentConfig cfg = base;
        cfg.strategy = s;
        cfg.topology.wan_mbps = wan;
        cfg.seed = seed;
        out.push_back(run_experiment(cfg).report);
      }
    }
  }
  return out;
}

}  // namespace hrsim
