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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hrsim/types.hpp"

namespace hrsim {

struct Site {
  SiteId id = 0;
  RegionId region = 0;
  std::uint64_t mips = 0;  // compute capacity, million instructions / s
  Bytes storage_bytes = 0;
};

struct Region {
  RegionId id = 0;
  std::vector<SiteId> site_ids;
};

// Two-level bandwidth hierarchy. Rates are decimal megabits per second.
struct BandwidthModel {
  std::uint64_t lan_mbps = 1000;
  std::uint64_t wan_mbps = 10;
  // Optional per-region-pair WAN rate, keyed by (lower, higher) region id.
  std::map<std::pair<RegionId, RegionId>, std::uint64_t> wan_overrides;
};

class Topology {
 public:
  Topology(std::vector<Site> sites, BandwidthModel bandwidth)
      : sites_(std::move(sites)), bandwidth_(std::move(bandwidth)) {
    if (bandwidth_.wan_mbps == 0 || bandwidth_.lan_mbps < bandwidth_.wan_mbps) {
      throw ConfigError("bandwidth must satisfy lan_mbps >= wan_mbps > 0");
    }
    RegionId max_region = 0;
    for (std::size_t i = 0; i < sites_.size(); ++i) {
      const Site& s = sites_[i];
      if (s.id != i) throw ConfigError("site ids must be dense and ordered");
      if (s.mips == 0) throw ConfigError("site " + std::to_string(i) + ": mips must be > 0");
      if (s.storage_bytes == 0) {
        throw ConfigError("site " + std::to_string(i) + ": storage_bytes must be > 0");
      }
      max_region = std::max(max_region, s.region);
    }
    if (!sites_.empty()) regions_.resize(max_region + 1);
    for (RegionId r = 0; r < regions_.size(); ++r) regions_[r].id = r;
    for (const Site& s : sites_) regions_[s.region].site_ids.push_back(s.id);
    for (const auto& [pair, mbps] : bandwidth_.wan_overrides) {
      if (pair.first >= pair.second || pair.second >= regions_.size()) {
        throw ConfigError("WAN override names an invalid region pair");
      }
      if (mbps == 0 || mbps > bandwidth_.lan_mbps) {
        throw ConfigError("WAN override must satisfy lan_mbps >= value > 0");
      }
    }
  }

  // Sites are numbered region by region: region r owns ids
  // [r * sites_per_region, (r + 1) * sites_per_region).
  static Topology uniform(std::uint32_t n_regions, std::uint32_t sites_per_region,
                          std::uint64_t mips, Bytes storage_bytes, BandwidthModel bandwidth) {
    if (n_regions == 0 || sites_per_region == 0) {
      throw ConfigError("topology needs at least one region and one site per region");
    }
    std::vector<Site> sites;
    sites.reserve(std::size_t{n_regions} * sites_per_region);
    for (RegionId r = 0; r < n_regions; ++r) {
      for (std::uint32_t k = 0; k < sites_per_region; ++k) {
        sites.push_back(Site{static_cast<SiteId>(sites.size()), r, mips, storage_bytes});
      }
    }
    return Topology(std::move(sites), std::move(bandwidth));
  }

  std::size_t site_count() const { return sites_.size(); }
  std::size_t region_count() const { return regions_.size(); }
  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Region>& regions() const { return regions_; }
  const BandwidthModel& bandwidth() const { return bandwidth_; }

  const Site& site(SiteId id) const {
    check(id);
    return sites_[id];
  }

  RegionId region_of(SiteId id) const { return site(id).region; }

  // a == b is reported as LAN; local access never consults it.
  std::uint64_t bandwidth_between(SiteId a, SiteId b) const {
    const RegionId ra = region_of(a);
    const RegionId rb = region_of(b);
    if (ra == rb) return bandwidth_.lan_mbps;
    auto it = bandwidth_.wan_overrides.find({std::min(ra, rb), std::max(ra, rb)});
    return it != bandwidth_.wan_overrides.end() ? it->second : bandwidth_.wan_mbps;
  }

  bool is_inter_region(SiteId a, SiteId b) const { return region_of(a) != region_of(b); }

  // bits / Mbps is exactly microseconds; rounded up.
  SimTime transfer_time(Bytes size, SiteId a, SiteId b) const {
    check(a);
    check(b);
    if (a == b) return SimTime{0};
    const std::uint64_t mbps = bandwidth_between(a, b);
    const std::uint64_t bits = size * 8;
    return SimTime{static_cast<std::int64_t>((bits + mbps - 1) / mbps)};
  }

 private:
  void check(SiteId id) const {
    if (id >= sites_.size()) throw ConfigError("unknown site id " + std::to_string(id));
  }

  std::vector<Site> sites_;
  std::vector<Region> regions_;
  BandwidthModel bandwidth_;
};

}  // namespace hrsim
