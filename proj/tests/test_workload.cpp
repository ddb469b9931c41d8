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

#include <gtest/gtest.h>

#include <set>

#include "hrsim/workload.hpp"
#include "support/scenario.hpp"

namespace hrsim {
namespace {

TEST(SplitMix64, KnownSequence) {
  // Reference values of splitmix64 seeded with 0 and 1234567.
  SplitMix64 zero(0);
  EXPECT_EQ(zero.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(zero.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(zero.next(), 0x06C45D188009454FULL);
  SplitMix64 r(1234567);
  EXPECT_EQ(r.next(), 6457827717110365317ULL);
  EXPECT_EQ(r.next(), 3203168211198807973ULL);
}

TEST(SplitMix64, BelowStaysInRange) {
  SplitMix64 r(3);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Dataset, PaperScaleTotals) {
  auto files = generate_dataset(100, 500'000'000ULL);
  ASSERT_EQ(files.size(), 100u);
  Bytes total = 0;
  for (const auto& f : files) total += f.size_bytes;
  EXPECT_EQ(total, 50'000'000'000ULL);
  EXPECT_EQ(files.front().lfn, "f000");
  EXPECT_EQ(files.back().lfn, "f099");
}

TEST(Dataset, SmallCases) {
  auto one = generate_dataset(1, 42);
  ASSERT_EQ(one.size(), 1u);
  auto three = generate_dataset(3, 10);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0].lfn, "f000");
  EXPECT_EQ(three[1].lfn, "f001");
  EXPECT_EQ(three[2].lfn, "f002");
  EXPECT_THROW(generate_dataset(0, 10), ConfigError);
}

TEST(Dataset, NameWidthGrowsPastOneThousand) {
  auto files = generate_dataset(1500, 1);
  EXPECT_EQ(files[7].lfn, "f0007");
  EXPECT_EQ(files[1499].lfn, "f1499");
}

TEST(JobTypes, FiveTypesOfTwelveDistinctFiles) {
  SplitMix64 rng(42);
  auto files = generate_dataset(100, 500'000'000ULL);
  auto types = generate_job_types(rng, 5, 12, files, 60'000);
  ASSERT_EQ(types.size(), 5u);
  std::set<std::string> known;
  for (const auto& f : files) known.insert(f.lfn);
  for (const auto& t : types) {
    EXPECT_EQ(t.length_mi, 60'000u);
    ASSERT_EQ(t.required_lfns.size(), 12u);
    std::set<std::string> distinct(t.required_lfns.begin(), t.required_lfns.end());
    EXPECT_EQ(distinct.size(), 12u);
    for (const auto& lfn : t.required_lfns) EXPECT_TRUE(known.count(lfn));
  }
}

TEST(JobTypes, WholeDatasetAndErrors) {
  SplitMix64 rng(1);
  auto files = generate_dataset(6, 1);
  auto types = generate_job_types(rng, 1, 6, files, 1);
  ASSERT_EQ(types.size(), 1u);
  EXPECT_EQ(types[0].required_lfns,
            (std::vector<std::string>{"f000", "f001", "f002", "f003", "f004", "f005"}));
  EXPECT_THROW(generate_job_types(rng, 1, 7, files, 1), ConfigError);
}

TEST(JobTypes, SameSeedSameSets) {
  auto files = generate_dataset(100, 1);
  SplitMix64 a(42);
  SplitMix64 b(42);
  auto ta = generate_job_types(a, 5, 12, files, 1);
  auto tb = generate_job_types(b, 5, 12, files, 1);
  for (std::size_t i = 0; i < ta.size(); ++i) EXPECT_EQ(ta[i].required_lfns, tb[i].required_lfns);
}

TEST(Workload, JobStream) {
  SplitMix64 rng(5);
  auto jobs = generate_workload(rng, 500, 5, SimTime{2'500'000});
  ASSERT_EQ(jobs.size(), 500u);
  std::set<JobTypeId> seen;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    EXPECT_EQ(jobs[k].id, k);
    EXPECT_EQ(jobs[k].submit_time, SimTime{2'500'000 * static_cast<std::int64_t>(k)});
    EXPECT_LT(jobs[k].type_id, 5u);
    seen.insert(jobs[k].type_id);
  }
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_TRUE(generate_workload(rng, 0, 5, SimTime{1}).empty());
  for (const Job& j : generate_workload(rng, 50, 1, SimTime{1})) EXPECT_EQ(j.type_id, 0u);
}

TEST(Masters, PaperScalePlacementSucceeds) {
  Topology topo = testing::grid(4, 13, 10'000'000'000ULL);
  auto files = generate_dataset(100, 500'000'000ULL);
  ReplicaCatalog catalog(testing::capacities(topo));
  SplitMix64 rng(0);
  auto owners = place_masters(rng, files, topo, catalog);
  ASSERT_EQ(owners.size(), 100u);
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& holders = catalog.locate(files[i].lfn);
    ASSERT_EQ(holders.size(), 1u);
    EXPECT_EQ(*holders.begin(), owners[i]);
    EXPECT_TRUE(catalog.store(owners[i]).find(files[i].lfn)->pinned);
  }
  EXPECT_EQ(catalog.check_consistency(), "");
}

TEST(Masters, SingleSiteAndDeterminism) {
  Topology one = testing::grid(1, 1, 10);
  auto files = generate_dataset(1, 10);
  ReplicaCatalog c1(testing::capacities(one));
  SplitMix64 r1(9);
  EXPECT_EQ(place_masters(r1, files, one, c1), std::vector<SiteId>{0});

  Topology topo = testing::grid(4, 13, 10'000'000'000ULL);
  auto many = generate_dataset(100, 500'000'000ULL);
  ReplicaCatalog a(testing::capacities(topo));
  ReplicaCatalog b(testing::capacities(topo));
  SplitMix64 ra(77);
  SplitMix64 rb(77);
  EXPECT_EQ(place_masters(ra, many, topo, a), place_masters(rb, many, topo, b));
}

TEST(Masters, InfeasiblePlacementFails) {
  Topology topo = testing::grid(1, 2, 10);
  auto files = generate_dataset(3, 10);  // three files, room for two
  ReplicaCatalog catalog(testing::capacities(topo));
  SplitMix64 rng(1);
  EXPECT_THROW(place_masters(rng, files, topo, catalog), ConfigError);
}

TEST(Scenario, PureFunctionOfSeedAndConfig) {
  ExperimentConfig cfg;
  cfg.seed = 11;
  Scenario a = build_scenario(cfg);
  cfg.strategy = StrategyKind::Lru;  // strategy never affects generation
  Scenario b = build_scenario(cfg);
  EXPECT_EQ(a.master_sites, b.master_sites);
  ASSERT_EQ(a.jobs.size(), b.jobs.size());
  for (std::size_t i = 0; i < a.jobs.size(); ++i) EXPECT_EQ(a.jobs[i].type_id, b.jobs[i].type_id);
  for (std::size_t i = 0; i < a.job_types.size(); ++i) {
    EXPECT_EQ(a.job_types[i].required_lfns, b.job_types[i].required_lfns);
  }
  cfg.seed = 12;
  EXPECT_NE(build_scenario(cfg).master_sites, a.master_sites);
}

}  // namespace
}  // namespace hrsim
