/*
 * Copyright 2026 The Mignow Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mignow/analysis.h"

#include <gtest/gtest.h>

#include <numeric>

#include "mignow/error.h"
#include "mignow/synthetic.h"
#include "mignow/temporal.h"
#include "test_support.h"

namespace mignow {
namespace {

using testing::Day;

constexpr std::size_t Idx(SeniorityRole r) { return static_cast<std::size_t>(r); }

SenioritySlice Slice(const char* code, Gender g,
                     std::initializer_list<std::pair<SeniorityRole, std::int64_t>> counts) {
  SenioritySlice s;
  s.date = Day(2023, 2, 27);
  s.country = CountryCode(code);
  s.gender = g;
  s.censored.fill(true);
  for (auto [role, n] : counts) {
    s.counts[Idx(role)] = n;
    s.censored[Idx(role)] = n == 0;
  }
  return s;
}

TEST(SeniorityShareTest, EntryAndSenior) {
  const auto shares = ComputeSeniorityShares({Slice(
      "PL", Gender::kFemale,
      {{SeniorityRole::kEntry, 510}, {SeniorityRole::kSenior, 420},
       {SeniorityRole::kManager, 70}})});
  ASSERT_EQ(shares.size(), 1u);
  EXPECT_DOUBLE_EQ(shares[0].percent[Idx(SeniorityRole::kEntry)], 51.0);
  EXPECT_DOUBLE_EQ(shares[0].percent[Idx(SeniorityRole::kSenior)], 42.0);
  EXPECT_EQ(shares[0].total, 1000);
}

TEST(SeniorityShareTest, SingleRoleAndEmpty) {
  const auto shares = ComputeSeniorityShares(
      {Slice("PL", Gender::kMale, {{SeniorityRole::kOwner, 900}}),
       Slice("DE", Gender::kMale, {})});
  ASSERT_EQ(shares.size(), 2u);
  EXPECT_EQ(shares[0].percent[Idx(SeniorityRole::kOwner)], 100.0);
  EXPECT_EQ(shares[0].percent[Idx(SeniorityRole::kEntry)], 0.0);
  EXPECT_TRUE(shares[1].empty);
  for (double p : shares[1].percent) EXPECT_EQ(p, 0.0);
}

TEST(SeniorityShareTest, SumsToHundred) {
  Rng rng(21);
  std::vector<SenioritySlice> slices;
  for (std::size_t i = 0; i < 60; ++i) {
    SenioritySlice s;
    s.date = Day(2023, 2, 27);
    s.country = testing::CodeAt(i / 2);
    s.gender = kAllGenders[i % 2];
    for (std::size_t r = 0; r < kNumSeniorityRoles; ++r) {
      const auto n = rng.UniformInt(0, 5000);
      s.counts[r] = n < 300 ? 0 : n;
      s.censored[r] = s.counts[r] == 0;
    }
    slices.push_back(s);
  }
  for (const auto& share : ComputeSeniorityShares(slices)) {
    if (share.empty) continue;
    const double sum = std::accumulate(share.percent.begin(), share.percent.end(), 0.0);
    EXPECT_NEAR(sum, 100.0, 1e-9);
  }
}

TEST(SeniorityMedianTest, OddEvenAndZero) {
  auto entry = [](const char* c, std::int64_t n) {
    return Slice(c, Gender::kFemale,
                 {{SeniorityRole::kEntry, n}, {SeniorityRole::kSenior, 1000 - n}});
  };
  const auto three = ComputeSeniorityShares({entry("AT", 400), entry("BE", 480),
                                             entry("CZ", 600)});
  const auto medians = ComputeSeniorityMedians(three);
  ASSERT_EQ(medians.size(), kNumSeniorityRoles);
  EXPECT_DOUBLE_EQ(medians[Idx(SeniorityRole::kEntry)].median, 48.0);
  EXPECT_EQ(medians[Idx(SeniorityRole::kEntry)].countries, 3u);
  EXPECT_EQ(medians[Idx(SeniorityRole::kVp)].median, 0.0);

  const auto two = ComputeSeniorityShares({entry("AT", 400), entry("BE", 600)});
  EXPECT_DOUBLE_EQ(ComputeSeniorityMedians(two)[Idx(SeniorityRole::kEntry)].median,
                   50.0);
}

TEST(SeniorityMedianTest, SharesMedianConventionWithTemporal) {
  Rng rng(22);
  std::vector<SenioritySlice> slices;
  std::vector<double> entry_shares;
  for (std::size_t i = 0; i < 9; ++i) {
    const auto entry = rng.UniformInt(300, 900);
    slices.push_back(Slice(testing::CodeAt(i).str().c_str(), Gender::kMale,
                           {{SeniorityRole::kEntry, entry},
                            {SeniorityRole::kSenior, 1000}}));
    entry_shares.push_back(100.0 * static_cast<double>(entry) /
                           static_cast<double>(entry + 1000));
  }
  slices.push_back(Slice("ZZ", Gender::kMale, {}));
  const auto medians = ComputeSeniorityMedians(ComputeSeniorityShares(slices));
  EXPECT_EQ(medians[Idx(SeniorityRole::kEntry)].median, Median(entry_shares));
  EXPECT_EQ(medians[Idx(SeniorityRole::kEntry)].countries, 9u);
}

TEST(ValidationJoinTest, IdenticalRanks) {
  std::map<CountryCode, double> totals, unhcr;
  for (std::size_t i = 0; i < 8; ++i) {
    totals[testing::CodeAt(i)] = 100.0 * static_cast<double>(i * i);
    unhcr[testing::CodeAt(i)] = 5000.0 + static_cast<double>(i);
  }
  unhcr[CountryCode("ZZ")] = 1.0;
  const ValidationResult v = ValidationJoin(totals, unhcr);
  EXPECT_EQ(v.pairs.size(), 8u);
  EXPECT_NEAR(v.spearman.rho, 1.0, 1e-15);
}

TEST(ValidationJoinTest, TooFewOverlaps) {
  std::map<CountryCode, double> totals{{CountryCode("PL"), 1}, {CountryCode("DE"), 2},
                                       {CountryCode("CZ"), 3}};
  EXPECT_THROW(ValidationJoin(totals, totals), Error);
}

}  // namespace
}  // namespace mignow
