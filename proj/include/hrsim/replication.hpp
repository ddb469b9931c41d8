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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hrsim/catalog.hpp"
#include "hrsim/topology.hpp"
#include "hrsim/types.hpp"

namespace hrsim {

enum class StrategyKind { Hrs, Bhr, Lru };

inline std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Hrs:
      return "hrs";
    case StrategyKind::Bhr:
      return "bhr";
    case StrategyKind::Lru:
      return "lru";
  }
  return "?";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view text) {
  if (text == "hrs") return StrategyKind::Hrs;
  if (text == "bhr") return StrategyKind::Bhr;
  if (text == "lru") return StrategyKind::Lru;
  return std::nullopt;
}

enum class StoreMode { Persist, TempBuffer, AlreadyLocal };

inline std::string_view to_string(StoreMode mode) {
  switch (mode) {
    case StoreMode::Persist:
      return "persist";
    case StoreMode::TempBuffer:
      return "temp";
    case StoreMode::AlreadyLocal:
      return "local";
  }
  return "?";
}

struct FetchPlan {
  std::string lfn;
  SiteId source = 0;
  SiteId dest = 0;
  StoreMode mode = StoreMode::AlreadyLocal;
  // Local replicas to delete from dest before the transfer lands.
  std::vector<std::string> evictions;
  // Persisting was wanted but no eviction order could make room.
  bool fell_back = false;
};

using ProtectedSet = std::set<std::string>;

struct EvictionList {
  std::vector<std::string> lfns;
  Bytes freed = 0;
  bool sufficient = false;
};

// Highest bandwidth towards dest; ties go to the lowest site id.
template <typename Range>
SiteId select_best_replica(const Topology& topology, const Range& candidates, SiteId dest) {
  std::optional<SiteId> best;
  std::uint64_t best_bw = 0;
  for (SiteId c : candidates) {
    const std::uint64_t bw = topology.bandwidth_between(c, dest);
    if (!best || bw > best_bw || (bw == best_bw && c < *best)) {
      best = c;
      best_bw = bw;
    }
  }
  if (!best) throw InvariantViolation("replica selection over an empty candidate set");
  return *best;
}

namespace detail {

struct Candidate {
  SimTime last_access;
  std::string lfn;
  Bytes size;

  friend bool operator<(const Candidate& a, const Candidate& b) {
    if (a.last_access != b.last_access) return a.last_access < b.last_access;
    return a.lfn < b.lfn;
  }
};

// Unpinned, unprotected local replicas that some other site also holds.
// With `same_region_only`, the other holder must share dest's region.
inline std::vector<Candidate> eviction_candidates(const Topology& topology,
                                                  const ReplicaCatalog& catalog, SiteId dest,
                                                  const ProtectedSet& protect,
                                                  bool same_region_only,
                                                  const std::set<std::string>& skip) {
  std::vector<Candidate> out;
  const RegionId region = topology.region_of(dest);
  for (const auto& [lfn, rep] : catalog.store(dest).entries()) {
    if (rep.pinned || protect.count(lfn) != 0 || skip.count(lfn) != 0) continue;
    bool eligible = false;
    for (SiteId holder : catalog.locate(lfn)) {
      if (holder == dest) continue;
      if (!same_region_only || topology.region_of(holder) == region) {
        eligible = true;
        break;
      }
    }
    if (eligible) out.push_back(Candidate{rep.last_access, lfn, rep.size});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Appends candidates in order until dest would have `needed` free bytes.
inline void take_until_room(const std::vector<Candidate>& cands, Bytes free_now, Bytes needed,
                            EvictionList& list) {
  for (const Candidate& c : cands) {
    if (free_now + list.freed >= needed) break;
    list.lfns.push_back(c.lfn);
    list.freed += c.size;
  }
  list.sufficient = free_now + list.freed >= needed;
}

}  // namespace detail

// Phase 1 deletes, least recently used first, local replicas that another
// site of the same region also holds. If that is not enough, phase 2 takes
// the remaining local replicas duplicated anywhere else, again in LRU order.
inline EvictionList evict_two_phase(const Topology& topology, const ReplicaCatalog& catalog,
                                    SiteId dest, Bytes needed_bytes, const ProtectedSet& protect) {
  EvictionList list;
  const Bytes free_now = catalog.free_space(dest);
  if (free_now >= needed_bytes) {
    list.sufficient = true;
    return list;
  }
  detail::take_until_room(
      detail::eviction_candidates(topology, catalog, dest, protect, true, {}), free_now,
      needed_bytes, list);
  if (list.sufficient) return list;
  const std::set<std::string> taken(list.lfns.begin(), list.lfns.end());
  detail::take_until_room(
      detail::eviction_candidates(topology, catalog, dest, protect, false, taken), free_now,
      needed_bytes, list);
  return list;
}

// Single pass over every duplicated, unpinned, unprotected replica in LRU order.
inline EvictionList evict_lru(const Topology& topology, const ReplicaCatalog& catalog,
                              SiteId dest, Bytes needed_bytes, const ProtectedSet& protect) {
  EvictionList list;
  const Bytes free_now = catalog.free_space(dest);
  detail::take_until_room(
      detail::eviction_candidates(topology, catalog, dest, protect, false, {}), free_now,
      needed_bytes, list);
  return list;
}

namespace detail {

inline FetchPlan local_plan(const std::string& lfn, SiteId dest) {
  return FetchPlan{lfn, dest, dest, StoreMode::AlreadyLocal, {}, false};
}

inline void persist_or_fall_back(FetchPlan& plan, EvictionList evictions) {
  if (evictions.sufficient) {
    plan.mode = StoreMode::Persist;
    plan.evictions = std::move(evictions.lfns);
  } else {
    plan.mode = StoreMode::TempBuffer;
    plan.fell_back = true;
  }
}

}  // namespace detail

inline FetchPlan hrs_fetch(const Topology& topology, const ReplicaCatalog& catalog,
                           const std::string& lfn, SiteId dest, const ProtectedSet& protect) {
  const std::set<SiteId>& holders = catalog.locate(lfn);
  if (holders.count(dest) != 0) return detail::local_plan(lfn, dest);
  const Bytes size = catalog.file_size(lfn);
  const RegionId region = topology.region_of(dest);

  std::vector<SiteId> intra;
  for (SiteId h : holders) {
    if (topology.region_of(h) == region) intra.push_back(h);
  }

  FetchPlan plan{lfn, 0, dest, StoreMode::Persist, {}, false};
  if (!intra.empty()) {
    plan.source = select_best_replica(topology, intra, dest);
    plan.mode = catalog.free_space(dest) >= size ? StoreMode::Persist : StoreMode::TempBuffer;
    return plan;
  }
  plan.source = select_best_replica(topology, holders, dest);
  if (catalog.free_space(dest) < size) {
    detail::persist_or_fall_back(plan, evict_two_phase(topology, catalog, dest, size, protect));
  }
  return plan;
}

inline FetchPlan bhr_fetch(const Topology& topology, const ReplicaCatalog& catalog,
                           const std::string& lfn, SiteId dest, const ProtectedSet& protect) {
  const std::set<SiteId>& holders = catalog.locate(lfn);
  if (holders.count(dest) != 0) return detail::local_plan(lfn, dest);
  const Bytes size = catalog.file_size(lfn);

  FetchPlan plan{lfn, select_best_replica(topology, holders, dest), dest, StoreMode::Persist,
                 {}, false};
  if (catalog.free_space(dest) >= size) return plan;
  const bool intra_holder = std::any_of(holders.begin(), holders.end(), [&](SiteId h) {
    return !topology.is_inter_region(h, dest);
  });
  if (intra_holder) {
    plan.mode = StoreMode::TempBuffer;
    return plan;
  }
  detail::persist_or_fall_back(plan, evict_lru(topology, catalog, dest, size, protect));
  return plan;
}

inline FetchPlan lru_fetch(const Topology& topology, const ReplicaCatalog& catalog,
                           const std::string& lfn, SiteId dest, const ProtectedSet& protect) {
  const std::set<SiteId>& holders = catalog.locate(lfn);
  if (holders.count(dest) != 0) return detail::local_plan(lfn, dest);
  const Bytes size = catalog.file_size(lfn);

  FetchPlan plan{lfn, select_best_replica(topology, holders, dest), dest, StoreMode::Persist,
                 {}, false};
  if (catalog.free_space(dest) < size) {
    detail::persist_or_fall_back(plan, evict_lru(topology, catalog, dest, size, protect));
  }
  return plan;
}

inline FetchPlan plan_fetch(StrategyKind kind, const Topology& topology,
                            const ReplicaCatalog& catalog, const std::string& lfn, SiteId dest,
                            const ProtectedSet& protect) {
  switch (kind) {
    case StrategyKind::Hrs:
      return hrs_fetch(topology, catalog, lfn, dest, protect);
    case StrategyKind::Bhr:
      return bhr_fetch(topology, catalog, lfn, dest, protect);
    case StrategyKind::Lru:
      return lru_fetch(topology, catalog, lfn, dest, protect);
  }
  throw InvariantViolation("unknown strategy");
}

}  // namespace hrsim
