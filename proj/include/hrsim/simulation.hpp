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
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hrsim/catalog.hpp"
#include "hrsim/event_queue.hpp"
#include "hrsim/metrics.hpp"
#include "hrsim/prng.hpp"
#include "hrsim/replication.hpp"
#include "hrsim/scheduling.hpp"
#include "hrsim/topology.hpp"
#include "hrsim/workload.hpp"

namespace hrsim {

// Everything a run needs, fully materialized. Generated from a seed by
// build_scenario() or written out by hand in tests.
struct Scenario {
  Topology topology;
  std::vector<FileRecord> dataset;
  std::vector<JobType> job_types;
  std::vector<Job> jobs;
  std::vector<SiteId> master_sites;  // parallel to dataset
};

enum class SchedulerKind { DataAware, Random };

struct SimOptions {
  StrategyKind strategy = StrategyKind::Hrs;
  SchedulerKind scheduler = SchedulerKind::DataAware;
  std::uint64_t seed = 0;  // only consumed by the random scheduler
  bool trace = false;
  // Re-verify catalog and queue invariants after every event.
  bool check_invariants = false;
};

enum class JobPhase { Submitted, Staging, Ready, Running, Done };

struct Transfer {
  JobId job = 0;
  std::string lfn;
  SiteId source = 0;
  SiteId dest = 0;
  SimTime start{0};
  SimTime end{0};
  bool inter_region = false;
  StoreMode mode = StoreMode::Persist;
  Bytes size = 0;
  std::vector<std::string> evictions;
  // Jobs at dest that needed the same file while this transfer was in flight.
  std::vector<JobId> waiters;
};

// One replica-strategy decision, kept for post-run audits.
struct FetchDecision {
  SimTime time{0};
  JobId job = 0;
  std::string lfn;
  SiteId dest = 0;
  SiteId source = 0;
  StoreMode mode = StoreMode::AlreadyLocal;
  bool intra_holder_existed = false;
  bool inter_region_source = false;
};

struct SimulationResult {
  SimTime final_clock{0};
  std::vector<JobRecord> records;  // ascending job id
  std::vector<TraceLine> trace;
  std::vector<Transfer> transfers;
  std::vector<FetchDecision> decisions;
  std::uint64_t events_processed = 0;
  std::uint64_t temp_buffer_fallbacks = 0;
};

class Simulation {
 public:
  Simulation(Scenario scenario, SimOptions options)
      : scenario_(std::move(scenario)),
        options_(options),
        catalog_(capacities(scenario_.topology)),
        loads_(scenario_.topology.site_count()),
        busy_(scenario_.topology.site_count(), false),
        random_(options.seed ^ 0x5DEECE66DULL) {
    if (scenario_.master_sites.size() != scenario_.dataset.size()) {
      throw ConfigError("every file needs exactly one master site");
    }
    for (std::size_t i = 0; i < scenario_.dataset.size(); ++i) {
      const FileRecord& f = scenario_.dataset[i];
      catalog_.declare_file(f.lfn, f.size_bytes);
      catalog_.register_replica(f.lfn, scenario_.master_sites[i], f.size_bytes, SimTime{0}, true);
    }
    for (const JobType& t : scenario_.job_types) {
      for (const std::string& lfn : t.required_lfns) {
        if (!catalog_.knows(lfn)) {
          throw ConfigError("job type " + std::to_string(t.id) + " requires unknown file " + lfn);
        }
      }
    }
    jobs_.resize(scenario_.jobs.size());
    for (std::size_t i = 0; i < scenario_.jobs.size(); ++i) {
      const Job& j = scenario_.jobs[i];
      if (j.id != i) throw ConfigError("job ids must be dense and ordered");
      if (j.type_id >= scenario_.job_types.size()) {
        throw ConfigError("job " + std::to_string(i) + " has an unknown type");
      }
      if (i > 0 && j.submit_time < scenario_.jobs[i - 1].submit_time) {
        throw ConfigError("job submit times must be nondecreasing");
      }
    }
  }

  const Topology& topology() const { return scenario_.topology; }
  const ReplicaCatalog& catalog() const { return catalog_; }
  const Scenario& scenario() const { return scenario_; }

  SimulationResult run() {
    for (const Job& j : scenario_.jobs) {
      queue_.push(SimEvent{j.submit_time, 0, EventKind::JobSubmit, j.id, 0, 0});
    }
    SimTime last{0};
    while (!queue_.empty()) {
      const SimEvent ev = queue_.pop();
      if (ev.time < last) throw InvariantViolation("clock moved backwards");
      last = ev.time;
      switch (ev.kind) {
        case EventKind::JobSubmit:
          on_job_submit(ev.job);
          break;
        case EventKind::TransferComplete:
          on_transfer_complete(ev.transfer);
          break;
        case EventKind::JobStart:
          on_job_start(ev.job);
          break;
        case EventKind::JobComplete:
          on_job_complete(ev.job);
          break;
      }
      ++result_.events_processed;
      if (options_.trace) {
        result_.trace.push_back(TraceLine{ev.time, ev.seq, ev.kind, describe(ev)});
      }
      if (options_.check_invariants) verify_state();
    }
    result_.final_clock = last;
    for (const JobState& js : jobs_) {
      if (js.phase != JobPhase::Done) throw InvariantViolation("run ended with unfinished jobs");
      result_.records.push_back(js.record);
    }
    return std::move(result_);
  }

  // Wall-clock-free processing time: length / capacity, rounded up to 1 us.
  static SimTime processing_time(std::uint64_t length_mi, std::uint64_t mips) {
    const unsigned __int128 us = static_cast<unsigned __int128>(length_mi) * 1000000u;
    return SimTime{static_cast<std::int64_t>((us + mips - 1) / mips)};
  }

 private:
  struct JobState {
    JobPhase phase = JobPhase::Submitted;
    SiteId site = 0;
    std::deque<std::string> pending;
    std::set<std::string> temp_buffer;
    SimTime staging_done{0};
    SimTime slot_free{0};
    JobRecord record;
  };

  static std::vector<Bytes> capacities(const Topology& topology) {
    std::vector<Bytes> out;
    for (const Site& s : topology.sites()) out.push_back(s.storage_bytes);
    return out;
  }

  SimTime now() const { return queue_.now(); }

  const JobType& type_of(JobId job) const {
    return scenario_.job_types[scenario_.jobs[job].type_id];
  }

  SiteId choose_site(JobId job) {
    if (options_.scheduler == SchedulerKind::Random) {
      return static_cast<SiteId>(random_.below(scenario_.topology.site_count()));
    }
    return select_site(scenario_.topology, catalog_, loads_, type_of(job).required_lfns);
  }

  void on_job_submit(JobId id) {
    JobState& js = jobs_[id];
    const Job& job = scenario_.jobs[id];
    const JobType& type = type_of(id);
    const SiteId site = choose_site(id);

    js.site = site;
    js.record.job_id = id;
    js.record.type_id = job.type_id;
    js.record.exec_site = site;
    js.record.submit = job.submit_time;

    SiteLoad& load = loads_[site];
    if (load.fifo.empty() && !busy_[site]) js.slot_free = now();
    load.fifo.push_back(id);
    load.queued_mi += type.length_mi;

    for (const std::string& lfn : type.required_lfns) {
      if (!catalog_.store(site).holds(lfn)) js.pending.push_back(lfn);
    }
    js.phase = JobPhase::Staging;
    advance_staging(id);
  }

  // Replicas a plan for `requester` may not evict: its own inputs and those
  // of every job ahead of it in the site queue, the running one included.
  // Nothing behind the queue head can disturb it, which guarantees progress.
  // Jobs further back re-check their inputs before they start.
  ProtectedSet protected_for(JobId requester) const {
    ProtectedSet out;
    for (JobId j : loads_[jobs_[requester].site].fifo) {
      const auto& lfns = type_of(j).required_lfns;
      out.insert(lfns.begin(), lfns.end());
      if (j == requester) break;
    }
    return out;
  }

  bool inputs_readable(JobId id) const {
    const JobState& js = jobs_[id];
    for (const std::string& lfn : type_of(id).required_lfns) {
      if (!catalog_.store(js.site).holds(lfn) && js.temp_buffer.count(lfn) == 0) return false;
    }
    return true;
  }

  // Issues the job's next transfer, or marks it Ready once nothing is left.
  // Transfers of one job run one at a time in access order.
  void advance_staging(JobId id) {
    JobState& js = jobs_[id];
    const SiteId dest = js.site;
    for (;;) {
      if (js.pending.empty()) {
        // Inputs evicted by jobs ahead in the queue are fetched again.
        for (const std::string& lfn : type_of(id).required_lfns) {
          if (!catalog_.store(dest).holds(lfn) && js.temp_buffer.count(lfn) == 0) {
            js.pending.push_back(lfn);
          }
        }
        if (js.pending.empty()) break;
      }
      const std::string lfn = std::move(js.pending.front());
      js.pending.pop_front();
      if (catalog_.store(dest).holds(lfn)) continue;
      // A persistent copy already on its way here serves this job too.
      if (auto it = inbound_.find({dest, lfn}); it != inbound_.end()) {
        result_.transfers[it->second].waiters.push_back(id);
        return;
      }
      const std::set<SiteId>& holders = catalog_.locate(lfn);
      const bool intra_holder = std::any_of(holders.begin(), holders.end(), [&](SiteId h) {
        return h != dest && !scenario_.topology.is_inter_region(h, dest);
      });
      FetchPlan plan = plan_fetch(options_.strategy, scenario_.topology, catalog_, lfn, dest,
                                  protected_for(id));
      result_.decisions.push_back(FetchDecision{
          now(), id, lfn, dest, plan.source, plan.mode, intra_holder,
          scenario_.topology.is_inter_region(plan.source, dest)});
      if (plan.mode == StoreMode::AlreadyLocal) continue;

      for (const std::string& victim : plan.evictions) {
        catalog_.unregister_replica(victim, dest);
        ++js.record.n_evictions_caused;
      }
      if (plan.fell_back) ++result_.temp_buffer_fallbacks;
      const Bytes size = catalog_.file_size(lfn);
      if (plan.mode == StoreMode::Persist) catalog_.reserve(dest, size);

      Transfer tr;
      tr.job = id;
      tr.lfn = lfn;
      tr.source = plan.source;
      tr.dest = dest;
      tr.start = now();
      tr.end = now() + scenario_.topology.transfer_time(size, plan.source, dest);
      tr.inter_region = scenario_.topology.is_inter_region(plan.source, dest);
      tr.mode = plan.mode;
      tr.size = size;
      tr.evictions = std::move(plan.evictions);
      const std::uint64_t tid = result_.transfers.size();
      if (tr.mode == StoreMode::Persist) inbound_.emplace(std::make_pair(dest, lfn), tid);
      queue_.push(SimEvent{tr.end, 0, EventKind::TransferComplete, id, dest, tid});
      result_.transfers.push_back(std::move(tr));
      return;
    }
    js.phase = JobPhase::Ready;
    js.staging_done = now();
    try_start(dest);
  }

  void on_transfer_complete(std::uint64_t tid) {
    const Transfer& tr = result_.transfers.at(tid);
    JobState& js = jobs_[tr.job];
    if (tr.mode == StoreMode::Persist) {
      inbound_.erase({tr.dest, tr.lfn});
      catalog_.release(tr.dest, tr.size);
      catalog_.register_replica(tr.lfn, tr.dest, tr.size, now(), false);
    } else {
      js.temp_buffer.insert(tr.lfn);
    }
    js.record.record_transfer(tr.inter_region, tr.size);
    const std::vector<JobId> waiters = tr.waiters;
    advance_staging(tr.job);
    for (JobId w : waiters) advance_staging(w);
  }

  void try_start(SiteId site) {
    SiteLoad& load = loads_[site];
    if (busy_[site] || load.fifo.empty()) return;
    const JobId head = load.fifo.front();
    if (jobs_[head].phase != JobPhase::Ready) return;
    if (!inputs_readable(head)) {
      // Lost an input to a job that was ahead of it; stage it again.
      jobs_[head].phase = JobPhase::Staging;
      advance_staging(head);
      return;
    }
    busy_[site] = true;
    queue_.push(SimEvent{now(), 0, EventKind::JobStart, head, site, 0});
  }

  void on_job_start(JobId id) {
    JobState& js = jobs_[id];
    const JobType& type = type_of(id);
    if (!inputs_readable(id)) {
      throw InvariantViolation("job " + std::to_string(id) + " started without its inputs");
    }
    js.phase = JobPhase::Running;
    js.record.start = now();
    js.record.staging_duration = js.staging_done - js.record.submit;
    js.record.queue_delay = std::max(SimTime{0}, js.slot_free - js.record.submit);
    js.record.processing_time =
        processing_time(type.length_mi, scenario_.topology.site(js.site).mips);
    queue_.push(SimEvent{now() + js.record.processing_time, 0, EventKind::JobComplete, id,
                         js.site, 0});
  }

  void on_job_complete(JobId id) {
    JobState& js = jobs_[id];
    const SiteId site = js.site;
    const JobType& type = type_of(id);
    js.phase = JobPhase::Done;
    js.record.end = now();
    js.temp_buffer.clear();
    for (const std::string& lfn : type.required_lfns) {
      if (catalog_.store(site).holds(lfn)) catalog_.touch(lfn, site, now());
    }

    SiteLoad& load = loads_[site];
    if (load.fifo.empty() || load.fifo.front() != id) {
      throw InvariantViolation("completed job is not at the head of its site queue");
    }
    load.fifo.pop_front();
    load.queued_mi -= type.length_mi;
    busy_[site] = false;
    if (!load.fifo.empty()) jobs_[load.fifo.front()].slot_free = now();
    try_start(site);
  }

  std::string describe(const SimEvent& ev) const {
    const std::string job = "job=" + std::to_string(ev.job);
    switch (ev.kind) {
      case EventKind::JobSubmit:
        return job + " type=" + std::to_string(scenario_.jobs[ev.job].type_id) +
               " site=" + std::to_string(jobs_[ev.job].site);
      case EventKind::TransferComplete: {
        const Transfer& tr = result_.transfers[ev.transfer];
        std::string evict;
        for (const std::string& v : tr.evictions) {
          if (!evict.empty()) evict += ',';
          evict += v;
        }
        return job + " lfn=" + tr.lfn + " src=" + std::to_string(tr.source) +
               " dst=" + std::to_string(tr.dest) + " mode=" + std::string(to_string(tr.mode)) +
               " evict=" + (evict.empty() ? "-" : evict);
      }
      case EventKind::JobStart:
      case EventKind::JobComplete:
        return job + " site=" + std::to_string(ev.site);
    }
    return job;
  }

  void verify_state() const {
    if (std::string err = catalog_.check_consistency(); !err.empty()) {
      throw InvariantViolation("catalog: " + err);
    }
    for (SiteId s = 0; s < loads_.size(); ++s) {
      std::uint64_t mi = 0;
      for (JobId j : loads_[s].fifo) mi += type_of(j).length_mi;
      if (mi != loads_[s].queued_mi) {
        throw InvariantViolation("site " + std::to_string(s) + ": queued work mismatch");
      }
      if (!busy_[s] && !loads_[s].fifo.empty() &&
          jobs_[loads_[s].fifo.front()].phase == JobPhase::Ready) {
        throw InvariantViolation("site " + std::to_string(s) + " idle with a ready head job");
      }
    }
  }

  Scenario scenario_;
  SimOptions options_;
  ReplicaCatalog catalog_;
  std::vector<SiteLoad> loads_;
  std::vector<bool> busy_;
  std::vector<JobState> jobs_;
  EventQueue queue_;
  std::map<std::pair<SiteId, std::string>, std::uint64_t> inbound_;
  SplitMix64 random_;
  SimulationResult result_;
};

}  // namespace hrsim
