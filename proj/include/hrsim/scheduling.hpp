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
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "hrsim/catalog.hpp"
#include "hrsim/topology.hpp"
#include "hrsim/types.hpp"

namespace hrsim {

// Work assigned to a site's computing element. queued_mi covers every job
// dispatched there and not yet complete, including the one running.
struct SiteLoad {
  std::uint64_t queued_mi = 0;
  std::deque<JobId> fifo;
};

// Relative load queued_mi / mips, kept as an exact fraction so comparisons
// never depend on floating-point rounding.
struct RelativeLoad {
  std::uint64_t queued_mi = 0;
  std::uint64_t mips = 1;

  double seconds() const { return static_cast<double>(queued_mi) / static_cast<double>(mips); }

  friend bool operator<(const RelativeLoad& a, const RelativeLoad& b) {
    return static_cast<unsigned __int128>(a.queued_mi) * b.mips <
           static_cast<unsigned __int128>(b.queued_mi) * a.mips;
  }
  friend bool operator==(const RelativeLoad& a, const RelativeLoad& b) {
    return static_cast<unsigned __int128>(a.queued_mi) * b.mips ==
           static_cast<unsigned __int128>(b.queued_mi) * a.mips;
  }
};

// Bytes of the requested files already committed to the site's store.
inline Bytes data_score(const ReplicaCatalog& catalog, SiteId site,
                        std::span<const std::string> required) {
  const ReplicaStore& store = catalog.store(site);
  Bytes total = 0;
  for (const std::string& lfn : required) {
    if (const Replica* r = store.find(lfn)) total += r->size;
  }
  return total;
}

inline RelativeLoad relative_load(const Topology& topology, const SiteLoad& load, SiteId site) {
  return RelativeLoad{load.queued_mi, topology.site(site).mips};
}

struct DataScore {
  SiteId site = 0;
  Bytes score_bytes = 0;
  RelativeLoad load;
};

// Largest data score wins; equal scores go to the smaller relative load,
// then to the lower site id.
inline SiteId select_site(const Topology& topology, const ReplicaCatalog& catalog,
                          std::span<const SiteLoad> loads, std::span<const std::string> required) {
  if (topology.site_count() == 0) throw ConfigError("no sites to schedule on");
  DataScore best{0, data_score(catalog, 0, required), relative_load(topology, loads[0], 0)};
  for (SiteId s = 1; s < topology.site_count(); ++s) {
    DataScore cand{s, data_score(catalog, s, required), relative_load(topology, loads[s], s)};
    if (cand.score_bytes > best.score_bytes ||
        (cand.score_bytes == best.score_bytes && cand.load < best.load)) {
      best = cand;
    }
  }
  return best.site;
}

}  // namespace hrsim
