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

#include "mignow/scale.h"

#include <gtest/gtest.h>

#include "mignow/error.h"
#include "test_support.h"

namespace mignow {
namespace {

using testing::Day;

PenetrationTable UnitTable(const char* code, double value) {
  PenetrationTable pen;
  pen.values[CountryCode(code)] = value;
  return pen;
}

TEST(PenetrationTest, Examples) {
  const CountryCode pl("PL"), de("DE"), cz("CZ");
  const PenetrationTable t = Penetration(
      {{pl, 1'000'000}, {de, 160'000}, {cz, 0}},
      {{pl, 1'000'000}, {de, 80'000'000}, {cz, 10'000'000}});
  EXPECT_EQ(t.values.at(pl), 1.0);
  EXPECT_DOUBLE_EQ(t.values.at(de), 0.002);
  EXPECT_FALSE(t.values.contains(cz));
  EXPECT_EQ(t.log.size(), 1u);
}

TEST(PenetrationTest, MissingPopulationLoggedAndBadPopulationRejected) {
  const CountryCode pl("PL"), de("DE");
  const PenetrationTable t = Penetration({{pl, 1000}, {de, 1000}}, {{pl, 5000}});
  EXPECT_EQ(t.values.size(), 1u);
  EXPECT_EQ(t.log.size(), 1u);
  EXPECT_THROW(Penetration({{pl, 1000}}, {{pl, 0}}), Error);
}

TEST(PenetrationTest, AlwaysPositive) {
  Rng rng(11);
  std::map<CountryCode, std::int64_t> totals, pops;
  for (std::size_t i = 0; i < 200; ++i) {
    totals[testing::CodeAt(i)] = rng.UniformInt(0, 5'000'000);
    pops[testing::CodeAt(i)] = rng.UniformInt(1, 90'000'000);
  }
  const PenetrationTable t = Penetration(totals, pops);
  for (const auto& [c, v] : t.values) {
    EXPECT_GT(v, 0.0);
    EXPECT_GT(totals.at(c), 0);
  }
}

TEST(ScaleEstimateTest, Examples) {
  EXPECT_EQ(ScaleEstimate(300, UnitTable("PL", 1.0), CountryCode("PL")).value, 300.0);
  EXPECT_DOUBLE_EQ(
      ScaleEstimate(3000, UnitTable("PL", 0.05), CountryCode("PL")).value, 60000.0);
  const ScaledEstimate zero =
      ScaleEstimate(0, UnitTable("PL", 0.05), CountryCode("PL"), true);
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_TRUE(zero.censored);
  EXPECT_THROW(ScaleEstimate(300, UnitTable("PL", 1.0), CountryCode("DE")), Error);
}

Snapshot PolandSnapshot(std::int64_t female, std::int64_t male) {
  Snapshot s;
  s.date = Day(2023, 2, 27);
  s.platform_totals[CountryCode("PL")] = 1000;
  s.cells.push_back(AudienceCell::FromCount(CountryCode("PL"), Gender::kFemale,
                                            AgeBucket::k25To34, female, s.date));
  s.cells.push_back(AudienceCell::FromCount(CountryCode("PL"), Gender::kMale,
                                            AgeBucket::k25To34, male, s.date));
  return s;
}

TEST(CountryTotalsTest, SumThenScale) {
  const auto totals = CountryTotals(PolandSnapshot(400, 600),
                                    UnitTable("PL", 0.1), Breakdown::kNone);
  ASSERT_EQ(totals.size(), 1u);
  EXPECT_DOUBLE_EQ(totals[0].value, 10000.0);
  EXPECT_FALSE(totals[0].gender.has_value());
}

TEST(CountryTotalsTest, ByGender) {
  const auto totals = CountryTotals(PolandSnapshot(400, 600),
                                    UnitTable("PL", 0.1), Breakdown::kGender);
  ASSERT_EQ(totals.size(), 2u);
  EXPECT_EQ(totals[0].gender, Gender::kFemale);
  EXPECT_DOUBLE_EQ(totals[0].value, 4000.0);
  EXPECT_DOUBLE_EQ(totals[1].value, 6000.0);
}

TEST(CountryTotalsTest, AllCensored) {
  const auto totals = CountryTotals(PolandSnapshot(0, 0), UnitTable("PL", 0.1),
                                    Breakdown::kNone);
  ASSERT_EQ(totals.size(), 1u);
  EXPECT_EQ(totals[0].value, 0.0);
  EXPECT_TRUE(totals[0].censored);
}

TEST(CountryTotalsTest, BreakdownsAreConsistent) {
  Rng rng(5);
  Snapshot s;
  s.date = Day(2023, 5, 5);
  PenetrationTable pen;
  for (std::size_t i = 0; i < 12; ++i) {
    const CountryCode c = testing::CodeAt(i);
    s.platform_totals[c] = rng.UniformInt(100000, 9000000);
    pen.values[c] = rng.Uniform(0.01, 0.5);
    for (Gender g : kAllGenders) {
      for (AgeBucket a : kAllAgeBuckets) {
        std::int64_t n = rng.UniformInt(0, 4000);
        if (n < 300) n = 0;
        s.cells.push_back(AudienceCell::FromCount(c, g, a, n, s.date));
      }
    }
  }
  const auto none = CountryTotals(s, pen, Breakdown::kNone);
  const auto by_gender = CountryTotals(s, pen, Breakdown::kGender);
  const auto by_age = CountryTotals(s, pen, Breakdown::kGenderAge);
  ASSERT_EQ(none.size(), 12u);
  ASSERT_EQ(by_gender.size(), 24u);
  ASSERT_EQ(by_age.size(), 120u);
  for (std::size_t i = 0; i < none.size(); ++i) {
    const double g = by_gender[2 * i].value + by_gender[2 * i + 1].value;
    double a = 0;
    for (std::size_t k = 0; k < 10; ++k) a += by_age[10 * i + k].value;
    EXPECT_NEAR(g, none[i].value, 1e-9 * none[i].value);
    EXPECT_NEAR(a, none[i].value, 1e-9 * none[i].value);
    EXPECT_EQ(none[i].value == 0.0, none[i].censored);
  }
  const auto map = TotalsByCountry(s, pen);
  EXPECT_EQ(map.size(), 12u);
  EXPECT_EQ(map.at(none[3].country), none[3].value);
}

}  // namespace
}  // namespace mignow
