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

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "hrsim/types.hpp"

namespace hrsim {

struct JobRecord {
  JobId job_id = 0;
  JobTypeId type_id = 0;
  SiteId exec_site = 0;
  SimTime submit{0};
  SimTime start{0};
  SimTime end{0};
  SimTime staging_duration{0};
  SimTime queue_delay{0};
  SimTime processing_time{0};
  std::uint64_t n_inter_transfers = 0;
  std::uint64_t n_intra_transfers = 0;
  Bytes bytes_inter = 0;
  Bytes bytes_intra = 0;
  std::uint64_t n_evictions_caused = 0;

  SimTime total_time() const { return end - submit; }

  void record_transfer(bool inter_region, Bytes size) {
    if (inter_region) {
      ++n_inter_transfers;
      bytes_inter += size;
    } else {
      ++n_intra_transfers;
      bytes_intra += size;
    }
  }
};

struct MetricsReport {
  std::string strategy;
  std::uint64_t seed = 0;
  std::uint64_t n_jobs = 0;
  std::uint64_t wan_mbps = 0;
  std::uint64_t lan_mbps = 0;
  std::optional<double> mean_job_time_s;
  std::optional<double> mean_inter_transfers_per_job;
  std::optional<double> mean_intra_transfers_per_job;
  Bytes total_bytes_wan = 0;
  Bytes total_bytes_lan = 0;
  double makespan_s = 0;
};

inline MetricsReport aggregate(const std::vector<JobRecord>& records) {
  MetricsReport r;
  r.n_jobs = records.size();
  std::int64_t total_us = 0;
  std::uint64_t inter = 0;
  std::uint64_t intra = 0;
  SimTime makespan{0};
  for (const JobRecord& j : records) {
    total_us += j.total_time().count();
    inter += j.n_inter_transfers;
    intra += j.n_intra_transfers;
    r.total_bytes_wan += j.bytes_inter;
    r.total_bytes_lan += j.bytes_intra;
    makespan = std::max(makespan, j.end);
  }
  r.makespan_s = to_seconds(makespan);
  if (!records.empty()) {
    const double n = static_cast<double>(records.size());
    r.mean_job_time_s = static_cast<double>(total_us) / 1e6 / n;
    r.mean_inter_transfers_per_job = static_cast<double>(inter) / n;
    r.mean_intra_transfers_per_job = static_cast<double>(intra) / n;
  }
  return r;
}

// Six significant digits, the precision of every real-valued CSV column.
inline std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string format_sig6(const std::optional<double>& v) {
  return v ? format_sig6(*v) : std::string{};
}

// Exact microseconds, rendered as seconds.
inline std::string format_seconds(SimTime t) {
  char buf[64];
  const std::int64_t us = t.count();
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", us < 0 ? "-" : "",
                static_cast<long long>((us < 0 ? -us : us) / 1000000),
                static_cast<long long>((us < 0 ? -us : us) % 1000000));
  return buf;
}

inline constexpr const char* kSummaryHeader =
    "strategy,seed,n_jobs,wan_mbps,lan_mbps,mean_job_time_s,mean_inter_per_job,"
    "mean_intra_per_job,total_bytes_wan,total_bytes_lan,makespan_s";

inline constexpr const char* kJobsHeader =
    "job_id,type,site,submit_s,start_s,end_s,staging_s,queue_s,proc_s,n_inter,n_intra";

// Rows are sorted by (strategy, n_jobs, wan_mbps, seed) regardless of input order.
inline void write_csv(std::vector<MetricsReport> reports, std::ostream& out) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.strategy, a.n_jobs, a.wan_mbps, a.seed) <
           std::tie(b.strategy, b.n_jobs, b.wan_mbps, b.seed);
  });
  out << kSummaryHeader << '\n';
  for (const MetricsReport& r : reports) {
    out << r.strategy << ',' << r.seed << ',' << r.n_jobs << ',' << r.wan_mbps << ','
        << r.lan_mbps << ',' << format_sig6(r.mean_job_time_s) << ','
        << format_sig6(r.mean_inter_transfers_per_job) << ','
        << format_sig6(r.mean_intra_transfers_per_job) << ',' << r.total_bytes_wan << ','
        << r.total_bytes_lan << ',' << format_sig6(r.makespan_s) << '\n';
  }
}

inline void write_jobs_csv(const std::vector<JobRecord>& records, std::ostream& out) {
  out << kJobsHeader << '\n';
  for (const JobRecord& j : records) {
    out << j.job_id << ',' << j.type_id << ',' << j.exec_site << ','
        << format_seconds(j.submit) << ',' << format_seconds(j.start) << ','
        << format_seconds(j.end) << ',' << format_seconds(j.staging_duration) << ','
        << format_seconds(j.queue_delay) << ',' << format_seconds(j.processing_time) << ','
        << j.n_inter_transfers << ',' << j.n_intra_transfers << '\n';
  }
}

// Opens `path` for writing or throws std::runtime_error naming it.
inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

}  // namespace hrsim
