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
#include <numeric>
#include <string>
#include <vector>

#include "hrsim/catalog.hpp"
#include "hrsim/prng.hpp"
#include "hrsim/topology.hpp"
#include "hrsim/types.hpp"

namespace hrsim {

struct FileRecord {
  std::string lfn;
  Bytes size_bytes = 0;
};

struct JobType {
  JobTypeId id = 0;
  std::vector<std::string> required_lfns;  // distinct, in access order
  std::uint64_t length_mi = 0;
};

struct Job {
  JobId id = 0;
  JobTypeId type_id = 0;
  SimTime submit_time{0};
};

// "f000".."f099"; the width grows for larger populations.
inline std::string make_lfn(std::size_t index, std::size_t n_files) {
  std::size_t width = 3;
  for (std::size_t top = n_files > 0 ? n_files - 1 : 0; top >= 1000; top /= 10) ++width;
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "f" + digits;
}

inline std::vector<FileRecord> generate_dataset(std::size_t n_files, Bytes file_size_bytes) {
  if (n_files == 0) throw ConfigError("workload.n_files must be > 0");
  std::vector<FileRecord> files;
  files.reserve(n_files);
  for (std::size_t i = 0; i < n_files; ++i) {
    files.push_back(FileRecord{make_lfn(i, n_files), file_size_bytes});
  }
  return files;
}

// Each type samples files_per_job distinct files by a partial Fisher-Yates
// shuffle of the dataset indices; the sample is kept in ascending LFN order.
inline std::vector<JobType> generate_job_types(SplitMix64& rng, std::size_t n_types,
                                               std::size_t files_per_job,
                                               const std::vector<FileRecord>& dataset,
                                               std::uint64_t length_mi) {
  if (files_per_job > dataset.size()) {
    throw ConfigError("workload.files_per_job exceeds workload.n_files");
  }
  std::vector<JobType> types;
  types.reserve(n_types);
  for (std::size_t t = 0; t < n_types; ++t) {
    std::vector<std::size_t> idx(dataset.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < files_per_job; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(files_per_job);
    std::sort(idx.begin(), idx.end());
    JobType type{static_cast<JobTypeId>(t), {}, length_mi};
    for (std::size_t i : idx) type.required_lfns.push_back(dataset[i].lfn);
    types.push_back(std::move(type));
  }
  return types;
}

inline std::vector<Job> generate_workload(SplitMix64& rng, std::size_t n_jobs,
                                          std::size_t n_types, SimTime inter_arrival) {
  if (n_jobs > 0 && n_types == 0) throw ConfigError("workload.n_job_types must be > 0");
  std::vector<Job> jobs;
  jobs.reserve(n_jobs);
  for (std::size_t k = 0; k < n_jobs; ++k) {
    jobs.push_back(Job{static_cast<JobId>(k), static_cast<JobTypeId>(rng.below(n_types)),
                       inter_arrival * static_cast<std::int64_t>(k)});
  }
  return jobs;
}

inline constexpr int kMasterPlacementAttempts = 64;

// Puts one pinned master copy of every file on a uniformly drawn site.
// A draw that overflows some site is discarded and redrawn as a whole.
inline std::vector<SiteId> place_masters(SplitMix64& rng, const std::vector<FileRecord>& dataset,
                                         const Topology& topology, ReplicaCatalog& catalog) {
  const std::size_t n_sites = topology.site_count();
  if (n_sites == 0) throw ConfigError("topology has no sites");
  for (int attempt = 0; attempt < kMasterPlacementAttempts; ++attempt) {
    std::vector<SiteId> owner(dataset.size());
    std::vector<Bytes> load(n_sites, 0);
    bool fits = true;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      owner[i] = static_cast<SiteId>(rng.below(n_sites));
      load[owner[i]] += dataset[i].size_bytes;
      if (load[owner[i]] > topology.site(owner[i]).storage_bytes) fits = false;
    }
    if (!fits) continue;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (!catalog.knows(dataset[i].lfn)) {
        catalog.declare_file(dataset[i].lfn, dataset[i].size_bytes);
      }
      catalog.register_replica(dataset[i].lfn, owner[i], dataset[i].size_bytes, SimTime{0},
                               true);
    }
    return owner;
  }
  throw ConfigError("could not place master copies within site storage after " +
                    std::to_string(kMasterPlacementAttempts) + " attempts");
}

}  // namespace hrsim
