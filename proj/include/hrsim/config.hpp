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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hrsim/replication.hpp"
#include "hrsim/simulation.hpp"
#include "hrsim/types.hpp"

namespace hrsim {

// Defaults reproduce the reference grid: 4 regions of 13 sites with 10 GB
// storage each, LAN 1000 / WAN 10 Mbps, 100 files of 500 MB, 5 job types
// reading 12 files each, 500 jobs.
struct TopologyConfig {
  std::uint32_t n_regions = 4;
  std::uint32_t sites_per_region = 13;
  std::uint64_t mips = 1000;
  Bytes storage_bytes = 10'000'000'000ULL;
  std::uint64_t lan_mbps = 1000;
  std::uint64_t wan_mbps = 10;
  std::map<std::pair<RegionId, RegionId>, std::uint64_t> wan_overrides;
};

struct WorkloadConfig {
  std::uint64_t n_files = 100;
  Bytes file_size_bytes = 500'000'000ULL;
  std::uint64_t n_job_types = 5;
  std::uint64_t files_per_job = 12;
  std::uint64_t n_jobs = 500;
  std::uint64_t job_length_mi = 60'000;
  SimTime inter_arrival{2'500'000};
};

struct ExperimentConfig {
  TopologyConfig topology;
  WorkloadConfig workload;
  StrategyKind strategy = StrategyKind::Hrs;
  SchedulerKind scheduler = SchedulerKind::DataAware;
  std::uint64_t seed = 0;
  std::string output;  // empty: stdout
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::uint64_t parse_uint(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc{} && ptr == text.data() + text.size()) return v;
  // Accept exact integers in scientific notation, e.g. 5e8.
  double d = 0;
  auto [dptr, dec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (dec == std::errc{} && dptr == text.data() + text.size() && d >= 0 && d < 1.8e19 &&
      std::floor(d) == d) {
    return static_cast<std::uint64_t>(d);
  }
  throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" +
                    std::string(text) + "'");
}

inline double parse_double(std::string_view key, std::string_view text) {
  double d = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(d)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return d;
}

inline std::uint32_t parse_u32(std::string_view key, std::string_view text) {
  const std::uint64_t v = parse_uint(key, text);
  if (v > UINT32_MAX) throw ConfigError(std::string(key) + ": value out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

inline constexpr std::string_view kWanOverridePrefix = "topology.wan_override.";

// Applies one `key = value` setting. Unknown keys and bad values raise
// ConfigError naming the key.
inline void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_u32;
  using detail::parse_uint;
  TopologyConfig& t = cfg.topology;
  WorkloadConfig& w = cfg.workload;
  if (key == "topology.n_regions") {
    t.n_regions = parse_u32(key, value);
  } else if (key == "topology.sites_per_region") {
    t.sites_per_region = parse_u32(key, value);
  } else if (key == "topology.mips") {
    t.mips = parse_uint(key, value);
  } else if (key == "topology.storage_bytes") {
    t.storage_bytes = parse_uint(key, value);
  } else if (key == "topology.lan_mbps") {
    t.lan_mbps = parse_uint(key, value);
  } else if (key == "topology.wan_mbps") {
    t.wan_mbps = parse_uint(key, value);
  } else if (key.substr(0, kWanOverridePrefix.size()) == kWanOverridePrefix) {
    // topology.wan_override.<a>-<b> = mbps
    const std::string_view pair = key.substr(kWanOverridePrefix.size());
    const auto dash = pair.find('-');
    if (dash == std::string_view::npos) {
      throw ConfigError(std::string(key) + ": expected topology.wan_override.<a>-<b>");
    }
    const RegionId a = parse_u32(key, pair.substr(0, dash));
    const RegionId b = parse_u32(key, pair.substr(dash + 1));
    if (a == b) throw ConfigError(std::string(key) + ": regions must differ");
    t.wan_overrides[{std::min(a, b), std::max(a, b)}] = parse_uint(key, value);
  } else if (key == "workload.n_files") {
    w.n_files = parse_uint(key, value);
  } else if (key == "workload.file_size_bytes") {
    w.file_size_bytes = parse_uint(key, value);
  } else if (key == "workload.n_job_types") {
    w.n_job_types = parse_uint(key, value);
  } else if (key == "workload.files_per_job") {
    w.files_per_job = parse_uint(key, value);
  } else if (key == "workload.n_jobs") {
    w.n_jobs = parse_uint(key, value);
  } else if (key == "workload.job_length_mi") {
    w.job_length_mi = parse_uint(key, value);
  } else if (key == "workload.inter_arrival_s") {
    const double s = detail::parse_double(key, value);
    if (s < 0) throw ConfigError(std::string(key) + ": must be >= 0");
    w.inter_arrival = from_seconds(s);
  } else if (key == "strategy") {
    auto s = parse_strategy(value);
    if (!s) {
      throw ConfigError("strategy: expected one of hrs, bhr, lru, got '" + std::string(value) +
                        "'");
    }
    cfg.strategy = *s;
  } else if (key == "scheduler") {
    if (value == "data-aware") {
      cfg.scheduler = SchedulerKind::DataAware;
    } else if (value == "random") {
      cfg.scheduler = SchedulerKind::Random;
    } else {
      throw ConfigError("scheduler: expected data-aware or random, got '" + std::string(value) +
                        "'");
    }
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, value);
  } else if (key == "output") {
    cfg.output = std::string(value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

inline void validate(const ExperimentConfig& cfg) {
  const TopologyConfig& t = cfg.topology;
  const WorkloadConfig& w = cfg.workload;
  auto positive = [](std::uint64_t v, const char* key) {
    if (v == 0) throw ConfigError(std::string(key) + ": must be > 0");
  };
  positive(t.n_regions, "topology.n_regions");
  positive(t.sites_per_region, "topology.sites_per_region");
  positive(t.mips, "topology.mips");
  positive(t.storage_bytes, "topology.storage_bytes");
  positive(t.wan_mbps, "topology.wan_mbps");
  positive(w.n_files, "workload.n_files");
  positive(w.file_size_bytes, "workload.file_size_bytes");
  positive(w.n_job_types, "workload.n_job_types");
  positive(w.files_per_job, "workload.files_per_job");
  if (t.lan_mbps < t.wan_mbps) {
    throw ConfigError("topology.wan_mbps: must not exceed topology.lan_mbps");
  }
  for (const auto& [pair, mbps] : t.wan_overrides) {
    const std::string key = std::string(kWanOverridePrefix) + std::to_string(pair.first) + "-" +
                            std::to_string(pair.second);
    if (pair.second >= t.n_regions) throw ConfigError(key + ": region out of range");
    if (mbps == 0 || mbps > t.lan_mbps) {
      throw ConfigError(key + ": must satisfy 0 < value <= topology.lan_mbps");
    }
  }
  if (w.files_per_job > w.n_files) {
    throw ConfigError("workload.files_per_job: exceeds workload.n_files");
  }
}

// Parses `key = value` lines; `#` starts a comment. Settings are applied on
// top of `cfg`, so callers layer defaults, file, then command-line values.
inline void parse_config(std::istream& in, ExperimentConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string_view key = detail::trim(view.substr(0, eq));
    const std::string_view value = detail::trim(view.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": missing key");
    apply_setting(cfg, key, value);
  }
}

inline ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  parse_config(in, cfg);
  validate(cfg);
  return cfg;
}

// Inverse of parse_config: every key with its effective value.
inline std::string to_config_text(const ExperimentConfig& cfg) {
  const TopologyConfig& t = cfg.topology;
  const WorkloadConfig& w = cfg.workload;
  std::ostringstream out;
  out << "topology.n_regions = " << t.n_regions << '\n'
      << "topology.sites_per_region = " << t.sites_per_region << '\n'
      << "topology.mips = " << t.mips << '\n'
      << "topology.storage_bytes = " << t.storage_bytes << '\n'
      << "topology.lan_mbps = " << t.lan_mbps << '\n'
      << "topology.wan_mbps = " << t.wan_mbps << '\n';
  for (const auto& [pair, mbps] : t.wan_overrides) {
    out << kWanOverridePrefix << pair.first << '-' << pair.second << " = " << mbps << '\n';
  }
  out << "workload.n_files = " << w.n_files << '\n'
      << "workload.file_size_bytes = " << w.file_size_bytes << '\n'
      << "workload.n_job_types = " << w.n_job_types << '\n'
      << "workload.files_per_job = " << w.files_per_job << '\n'
      << "workload.n_jobs = " << w.n_jobs << '\n'
      << "workload.job_length_mi = " << w.job_length_mi << '\n'
      << "workload.inter_arrival_s = " << format_seconds(w.inter_arrival) << '\n'
      << "strategy = " << to_string(cfg.strategy) << '\n'
      << "scheduler = " << (cfg.scheduler == SchedulerKind::Random ? "random" : "data-aware")
      << '\n'
      << "seed = " << cfg.seed << '\n';
  if (!cfg.output.empty()) out << "output = " << cfg.output << '\n';
  return out.str();
}

// "0..9", "1,4,7" or a mix such as "0..2,10".
inline std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = detail::trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const std::uint64_t lo = detail::parse_uint("seeds", item.substr(0, dots));
      const std::uint64_t hi = detail::parse_uint("seeds", item.substr(dots + 2));
      if (hi < lo) throw ConfigError("seeds: empty range '" + std::string(item) + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      out.push_back(detail::parse_uint("seeds", item));
    }
  }
  if (out.empty()) throw ConfigError("seeds: empty list");
  return out;
}

}  // namespace hrsim
