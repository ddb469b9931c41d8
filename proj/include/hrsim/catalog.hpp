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

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hrsim/types.hpp"

namespace hrsim {

struct Replica {
  Bytes size = 0;
  SimTime last_access{0};
  bool pinned = false;
};

// Holdings of one storage element. `reserved` is space promised to
// persistent transfers still in flight; it is not yet a replica.
class ReplicaStore {
 public:
  explicit ReplicaStore(Bytes capacity) : capacity_(capacity) {}

  Bytes capacity() const { return capacity_; }
  Bytes used() const { return used_; }
  Bytes reserved() const { return reserved_; }
  Bytes free_space() const { return capacity_ - used_ - reserved_; }

  bool holds(const std::string& lfn) const { return entries_.count(lfn) != 0; }
  const Replica* find(const std::string& lfn) const {
    auto it = entries_.find(lfn);
    return it == entries_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, Replica>& entries() const { return entries_; }

 private:
  friend class ReplicaCatalog;

  Bytes capacity_;
  Bytes used_ = 0;
  Bytes reserved_ = 0;
  std::map<std::string, Replica> entries_;
};

// Centralized LFN -> holders index plus the per-site stores it mirrors.
// Every mutation goes through here so the two views cannot drift apart.
class ReplicaCatalog {
 public:
  explicit ReplicaCatalog(const std::vector<Bytes>& site_capacities) {
    stores_.reserve(site_capacities.size());
    for (Bytes c : site_capacities) stores_.emplace_back(c);
  }

  // Declares a logical file. Replicas can only be registered for known LFNs.
  void declare_file(const std::string& lfn, Bytes size) {
    if (!sizes_.emplace(lfn, size).second) {
      throw ConfigError("duplicate logical file name " + lfn);
    }
    index_[lfn];
  }

  bool knows(const std::string& lfn) const { return sizes_.count(lfn) != 0; }

  Bytes file_size(const std::string& lfn) const {
    auto it = sizes_.find(lfn);
    if (it == sizes_.end()) throw ConfigError("unknown logical file name " + lfn);
    return it->second;
  }

  std::size_t site_count() const { return stores_.size(); }
  std::size_t file_count() const { return sizes_.size(); }

  const ReplicaStore& store(SiteId site) const { return stores_.at(site); }

  void register_replica(const std::string& lfn, SiteId site, Bytes size, SimTime time,
                        bool pinned) {
    ReplicaStore& s = mutable_store(site);
    if (!knows(lfn)) throw ConfigError("unknown logical file name " + lfn);
    if (s.holds(lfn)) {
      throw InvariantViolation("duplicate replica of " + lfn + " at site " +
                               std::to_string(site));
    }
    if (s.free_space() < size) {
      throw InvariantViolation("insufficient space for " + lfn + " at site " +
                               std::to_string(site));
    }
    s.entries_.emplace(lfn, Replica{size, time, pinned});
    s.used_ += size;
    index_[lfn].insert(site);
  }

  void unregister_replica(const std::string& lfn, SiteId site) {
    ReplicaStore& s = mutable_store(site);
    auto it = s.entries_.find(lfn);
    if (it == s.entries_.end()) {
      throw InvariantViolation("no replica of " + lfn + " at site " + std::to_string(site));
    }
    if (it->second.pinned) {
      throw InvariantViolation("refusing to delete pinned master of " + lfn + " at site " +
                               std::to_string(site));
    }
    std::set<SiteId>& holders = index_[lfn];
    if (holders.size() <= 1) {
      throw InvariantViolation("refusing to delete the last copy of " + lfn);
    }
    s.used_ -= it->second.size;
    s.entries_.erase(it);
    holders.erase(site);
  }

  const std::set<SiteId>& locate(const std::string& lfn) const {
    auto it = index_.find(lfn);
    if (it == index_.end()) throw ConfigError("unknown logical file name " + lfn);
    return it->second;
  }

  void touch(const std::string& lfn, SiteId site, SimTime time) {
    ReplicaStore& s = mutable_store(site);
    auto it = s.entries_.find(lfn);
    if (it == s.entries_.end()) {
      throw InvariantViolation("touch of absent replica " + lfn + " at site " +
                               std::to_string(site));
    }
    it->second.last_access = time;
  }

  Bytes free_space(SiteId site) const { return store(site).free_space(); }

  void reserve(SiteId site, Bytes bytes) {
    ReplicaStore& s = mutable_store(site);
    if (s.free_space() < bytes) {
      throw InvariantViolation("reservation exceeds free space at site " +
                               std::to_string(site));
    }
    s.reserved_ += bytes;
  }

  void release(SiteId site, Bytes bytes) {
    ReplicaStore& s = mutable_store(site);
    if (s.reserved_ < bytes) throw InvariantViolation("releasing more than reserved");
    s.reserved_ -= bytes;
  }

  // Empty string when consistent, otherwise the first discrepancy found.
  std::string check_consistency() const {
    for (SiteId site = 0; site < stores_.size(); ++site) {
      const ReplicaStore& s = stores_[site];
      Bytes sum = 0;
      for (const auto& [lfn, rep] : s.entries_) {
        sum += rep.size;
        auto it = index_.find(lfn);
        if (it == index_.end() || it->second.count(site) == 0) {
          return "site " + std::to_string(site) + " holds " + lfn + " but the index disagrees";
        }
      }
      if (sum != s.used_) return "site " + std::to_string(site) + ": used bytes mismatch";
      if (s.used_ + s.reserved_ > s.capacity_) {
        return "site " + std::to_string(site) + ": over capacity";
      }
    }
    for (const auto& [lfn, holders] : index_) {
      if (holders.empty()) return "no replica left for " + lfn;
      std::size_t pinned = 0;
      for (SiteId site : holders) {
        const Replica* r = site < stores_.size() ? stores_[site].find(lfn) : nullptr;
        if (r == nullptr) return "index lists " + lfn + " at a site that lacks it";
        if (r->pinned) ++pinned;
      }
      if (pinned > 1) return lfn + " has more than one pinned copy";
    }
    return {};
  }

  // CSV `lfn,site_id,pinned,last_access_us`, ordered by lfn then site.
  void write_dump(std::ostream& out) const {
    out << "lfn,site_id,pinned,last_access_us\n";
    for (const auto& [lfn, holders] : index_) {
      for (SiteId site : holders) {
        const Replica& r = *stores_[site].find(lfn);
        out << lfn << ',' << site << ',' << (r.pinned ? 1 : 0) << ','
            << r.last_access.count() << '\n';
      }
    }
  }

 private:
  ReplicaStore& mutable_store(SiteId site) {
    if (site >= stores_.size()) throw ConfigError("unknown site id " + std::to_string(site));
    return stores_[site];
  }

  std::vector<ReplicaStore> stores_;
  std::map<std::string, Bytes> sizes_;
  std::map<std::string, std::set<SiteId>> index_;
};

}  // namespace hrsim
