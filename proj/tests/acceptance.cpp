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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "hrsim/hrsim.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/scenario.hpp"

namespace hrsim {
namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void verdict(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

constexpr StrategyKind kAll[] = {StrategyKind::Hrs, StrategyKind::Bhr, StrategyKind::Lru};

struct Rendered {
  std::string summary;
  std::string jobs;
  std::string trace;
};

Rendered render(const ExperimentRun& run) {
  Rendered r;
  std::ostringstream s;
  write_csv({run.report}, s);
  r.summary = s.str();
  std::ostringstream j;
  write_jobs_csv(run.result.records, j);
  r.jobs = j.str();
  std::ostringstream t;
  for (const TraceLine& l : run.result.trace) t << l.render() << '\n';
  r.trace = t.str();
  return r;
}

// Config key for the determinism check: (strategy, wan, seed).
using RunKey = std::tuple<StrategyKind, std::uint64_t, std::uint64_t>;

ExperimentConfig base_config(StrategyKind k, std::uint64_t wan, std::uint64_t seed) {
  ExperimentConfig cfg;  // built-in defaults, 500 jobs
  cfg.strategy = k;
  cfg.topology.wan_mbps = wan;
  cfg.seed = seed;
  return cfg;
}

// Every HRS decision with a same-region holder must pick a same-region
// source. Trace transfers are matched against the decision log so that no
// transfer escapes the audit.
std::uint64_t audit_region_priority(const ExperimentRun& run, std::uint64_t& audited) {
  std::uint64_t violations = 0;
  std::map<std::tuple<JobId, std::string, SiteId, SiteId>, int> pending;
  for (const FetchDecision& d : run.result.decisions) {
    if (d.mode == StoreMode::AlreadyLocal) continue;
    ++audited;
    if (d.intra_holder_existed && d.inter_region_source) ++violations;
    ++pending[{d.job, d.lfn, d.source, d.dest}];
  }
  for (const TraceLine& l : run.result.trace) {
    if (l.kind != EventKind::TransferComplete) continue;
    unsigned long job = 0;
    unsigned long src = 0;
    unsigned long dst = 0;
    char lfn[64] = {};
    if (std::sscanf(l.payload.c_str(), "job=%lu lfn=%63s src=%lu dst=%lu", &job, lfn, &src,
                    &dst) != 4) {
      ++violations;
      continue;
    }
    if (--pending[{static_cast<JobId>(job), lfn, static_cast<SiteId>(src),
                   static_cast<SiteId>(dst)}] < 0) {
      ++violations;
    }
  }
  for (const auto& [key, left] : pending) {
    if (left != 0) ++violations;
  }
  return violations;
}

void a1_a2_a3(std::map<RunKey, Rendered>& rendered) {
  std::map<StrategyKind, double> time_sum;
  std::map<StrategyKind, double> inter_sum;
  std::uint64_t violations = 0;
  std::uint64_t audited = 0;
  const auto t0 = Clock::now();
  for (StrategyKind k : kAll) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      ExperimentRun run = run_experiment(base_config(k, 10, seed), RunOptions{true, false});
      time_sum[k] += *run.report.mean_job_time_s;
      inter_sum[k] += *run.report.mean_inter_transfers_per_job;
      if (k == StrategyKind::Hrs) violations += audit_region_priority(run, audited);
      rendered[{k, 10, seed}] = render(run);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();

  const double h = time_sum[StrategyKind::Hrs] / 10;
  const double b = time_sum[StrategyKind::Bhr] / 10;
  const double l = time_sum[StrategyKind::Lru] / 10;
  const double gain = (b - h) / b * 100;
  verdict("A1", h < b && b < l && gain > 0 && secs < 10,
          fmt("HRS %.2f s", h) + fmt(" < BHR %.2f s", b) + fmt(" < LRU %.2f s", l) +
              fmt("; HRS faster than BHR by %.2f%%", gain) + fmt("; 30 runs in %.2f s", secs));

  const double hi = inter_sum[StrategyKind::Hrs] / 10;
  const double bi = inter_sum[StrategyKind::Bhr] / 10;
  const double li = inter_sum[StrategyKind::Lru] / 10;
  verdict("A2", hi < bi && hi < li,
          fmt("inter transfers per job: HRS %.4f", hi) + fmt(", BHR %.4f", bi) +
              fmt(", LRU %.4f", li));

  verdict("A3", violations == 0 && audited > 0,
          std::to_string(violations) + " violations over " + std::to_string(audited) +
              " audited HRS fetches");
}

void a4(std::map<RunKey, Rendered>& rendered) {
  std::map<std::pair<StrategyKind, std::uint64_t>, double> sum;
  const auto t0 = Clock::now();
  for (StrategyKind k : kAll) {
    for (std::uint64_t wan : {10u, 1000u}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        ExperimentRun run = run_experiment(base_config(k, wan, seed), RunOptions{true, false});
        sum[{k, wan}] += *run.report.mean_job_time_s;
        if (wan == 1000) rendered[{k, wan, seed}] = render(run);
      }
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  auto mean = [&](StrategyKind k, std::uint64_t wan) { return sum[{k, wan}] / 3; };
  double lo = mean(StrategyKind::Hrs, 1000);
  double hi = lo;
  for (StrategyKind k : kAll) {
    lo = std::min(lo, mean(k, 1000));
    hi = std::max(hi, mean(k, 1000));
  }
  const double spread = (hi - lo) / lo * 100;
  const double h = mean(StrategyKind::Hrs, 10);
  const double b = mean(StrategyKind::Bhr, 10);
  const double l = mean(StrategyKind::Lru, 10);
  verdict("A4", spread <= 5.0 && h < b && b < l && secs < 10,
          fmt("wan=1000 spread %.3f%%", spread) + fmt(" (HRS %.2f", mean(StrategyKind::Hrs, 1000)) +
              fmt(", BHR %.2f", mean(StrategyKind::Bhr, 1000)) +
              fmt(", LRU %.2f)", mean(StrategyKind::Lru, 1000)) + fmt("; wan=10 HRS %.2f", h) +
              fmt(", BHR %.2f", b) + fmt(", LRU %.2f", l) + fmt("; 18 runs in %.2f s", secs));
}

void a5() {
  SplitMix64 rng(2024);
  int agree = 0;
  constexpr int kCases = 1000;
  for (int i = 0; i < kCases; ++i) {
    gen::SchedulingInstance in = gen::scheduling_instance(rng);
    const SiteId got = select_site(in.topology, in.catalog, in.loads, in.required);
    if (got == oracle::select_site(in.topology, in.catalog, in.loads, in.required)) ++agree;
  }
  verdict("A5", agree == kCases,
          std::to_string(agree) + "/" + std::to_string(kCases) + " instances agree with brute force");
}

void a6() {
  SplitMix64 rng(6006);
  std::uint64_t cases = 0;
  std::uint64_t with_evictions = 0;
  std::uint64_t failed = 0;
  std::string first;
  auto fail = [&](const std::string& why) {
    if (failed++ == 0) first = why;
  };
  while (cases < 12'000) {
    gen::StoreInstance in = gen::store_instance(rng);
    const std::string& lfn = in.lfns[rng.below(in.lfns.size())];
    const auto dest = static_cast<SiteId>(rng.below(in.topology.site_count()));
    std::set<std::string> protect = in.protect;
    protect.insert(lfn);
    const Bytes size = in.catalog.file_size(lfn);
    for (StrategyKind k : kAll) {
      ++cases;
      const FetchPlan plan = plan_fetch(k, in.topology, in.catalog, lfn, dest, protect);
      if (plan.mode == StoreMode::AlreadyLocal) continue;
      if (!plan.evictions.empty()) ++with_evictions;
      Bytes freed = 0;
      for (const std::string& v : plan.evictions) {
        const Replica* r = in.catalog.store(dest).find(v);
        if (r == nullptr) fail("evicted a replica the site lacks");
        else if (r->pinned) fail("evicted a pinned replica");
        if (in.catalog.locate(v).size() < 2) fail("evicted the last copy of " + v);
        if (protect.count(v)) fail("evicted a protected replica");
        freed += in.catalog.file_size(v);
      }
      if (!plan.evictions.empty()) {
        const Bytes free_now = in.catalog.free_space(dest);
        const Bytes last = in.catalog.file_size(plan.evictions.back());
        if (free_now + freed < size) fail("eviction list does not make room");
        if (free_now + freed - last >= size) fail("eviction list is not minimal");
        bool ok = false;
        const auto expected =
            k == StrategyKind::Hrs
                ? oracle::two_phase(in.topology, in.catalog, dest, size, protect, ok)
                : oracle::single_phase(in.topology, in.catalog, dest, size, protect, ok);
        if (expected != plan.evictions) fail("eviction order differs from the phase ordering");
      }
      ReplicaCatalog after = in.catalog;
      try {
        for (const std::string& v : plan.evictions) after.unregister_replica(v, dest);
        if (plan.mode == StoreMode::Persist) {
          after.register_replica(lfn, dest, size, SimTime{1}, false);
        }
        const std::string err = after.check_consistency();
        if (!err.empty()) fail(err);
      } catch (const std::exception& e) {
        fail(e.what());
      }
    }
  }
  verdict("A6", failed == 0 && cases >= 10'000,
          std::to_string(failed) + " failures over " + std::to_string(cases) + " cases (" +
              std::to_string(with_evictions) + " with evictions)" +
              (first.empty() ? "" : "; first: " + first));
}

void a7(const std::map<RunKey, Rendered>& rendered) {
  std::size_t identical = 0;
  for (const auto& [key, first] : rendered) {
    const auto& [k, wan, seed] = key;
    const Rendered again = render(run_experiment(base_config(k, wan, seed), RunOptions{true, false}));
    if (again.summary == first.summary && again.jobs == first.jobs && again.trace == first.trace &&
        !first.trace.empty()) {
      ++identical;
    }
  }
  verdict("A7", identical == rendered.size() && rendered.size() == 39,
          std::to_string(identical) + "/" + std::to_string(rendered.size()) +
              " configurations byte-identical on rerun (summary, per-job CSV, trace)");
}

void a8() {
  using testing::kMB;
  testing::ScenarioBuilder b(testing::grid(2, 2, 1'500 * kMB));
  for (SiteId m : {0u, 2u, 1u, 3u, 3u, 3u}) b.file(500 * kMB, m);
  b.type({"f000", "f001", "f002"}).type({"f003", "f004"}).type({"f000", "f005"});
  b.job(0, 0).job(1, 1).job(2, 500);
  const std::vector<std::string> expected = {
      "0\t0\tJobSubmit\tjob=0 type=0 site=0",
      "1000000\t1\tJobSubmit\tjob=1 type=1 site=3",
      "1000000\t4\tJobStart\tjob=1 site=3",
      "61000000\t5\tJobComplete\tjob=1 site=3",
      "400000000\t3\tTransferComplete\tjob=0 lfn=f001 src=2 dst=0 mode=persist evict=-",
      "404000000\t6\tTransferComplete\tjob=0 lfn=f002 src=1 dst=0 mode=persist evict=-",
      "404000000\t7\tJobStart\tjob=0 site=0",
      "464000000\t8\tJobComplete\tjob=0 site=0",
      "500000000\t2\tJobSubmit\tjob=2 type=2 site=0",
      "900000000\t9\tTransferComplete\tjob=2 lfn=f005 src=3 dst=0 mode=persist evict=f002",
      "900000000\t10\tJobStart\tjob=2 site=0",
      "960000000\t11\tJobComplete\tjob=2 site=0",
  };
  SimOptions o;
  o.trace = true;
  o.check_invariants = true;
  const auto got = testing::render(Simulation(b.build(), o).run().trace);
  std::size_t match = 0;
  for (std::size_t i = 0; i < std::min(got.size(), expected.size()); ++i) {
    if (got[i] == expected[i]) ++match;
  }
  verdict("A8", got == expected,
          std::to_string(match) + "/" + std::to_string(expected.size()) +
              " trace lines match the hand-computed trace (" + std::to_string(got.size()) +
              " produced)");
}

void a9() {
  const Topology t = testing::grid(2, 1, 10'000 * testing::kMB);
  const SimTime inter = t.transfer_time(500'000'000, 0, 1);
  const SimTime intra = testing::grid(1, 2, 10'000 * testing::kMB).transfer_time(500'000'000, 0, 1);
  const SimTime proc = Simulation::processing_time(60'000, 1000);
  verdict("A9",
          inter == SimTime{400'000'000} && intra == SimTime{4'000'000} && proc == SimTime{60'000'000},
          "inter " + std::to_string(inter.count()) + " us, intra " + std::to_string(intra.count()) +
              " us, processing " + std::to_string(proc.count()) + " us");
}

}  // namespace
}  // namespace hrsim

int main() {
  using namespace hrsim;
  std::map<RunKey, Rendered> rendered;
  a1_a2_a3(rendered);
  a4(rendered);
  a5();
  a6();
  a7(rendered);
  a8();
  a9();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
