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

#ifndef MIGNOW_REPLAY_H_
#define MIGNOW_REPLAY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mignow/datamodel.h"

namespace mignow {

// One audience-size request against the ad platform. Education-targeted
// queries carry a school-set id; platform-total queries do not.
struct AudienceQuery {
  CountryCode location;
  std::optional<Gender> gender;
  std::optional<AgeBucket> age;
  std::optional<std::string> school_set;
  std::optional<SeniorityRole> seniority;
};

// "pl|female|25-34|ua-universities|any|2023-02-27". Absent fields render
// as "any"; an absent school set renders as "none".
std::string CanonicalKey(const AudienceQuery& query, const Date& date);

// Source of audience estimates. The platform applies the censoring floor
// before answering, so implementations never return a value in (0, 300).
class AudienceSource {
 public:
  virtual ~AudienceSource() = default;
  virtual std::int64_t Estimate(const AudienceQuery& query,
                                const Date& date) const = 0;
};

// Recorded platform answers keyed by canonical query key. Stored values are
// the uncensored counts; lookups apply the censoring floor.
class ReplayArchive : public AudienceSource {
 public:
  // Archive CSV: `date,location,gender,age,school_set,seniority,count`.
  static ReplayArchive Read(const std::filesystem::path& path);
  static ReplayArchive Parse(std::string_view text, const std::string& source);

  // Throws InputError on a duplicate key or negative count.
  void Record(const AudienceQuery& query, const Date& date, std::int64_t count);

  std::int64_t Estimate(const AudienceQuery& query,
                        const Date& date) const override;

  std::string ToCsv() const;
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    AudienceQuery query;
    Date date;
    std::int64_t count;
  };
  std::map<std::string, Entry> entries_;
};

// Applies the platform floor to a stored count.
std::int64_t ApplyCensoring(std::int64_t count);

// Looks up `query` in the archive. Throws InputError carrying the canonical
// key when the query was never recorded.
std::int64_t ReplayQuery(const ReplayArchive& archive,
                         const AudienceQuery& query, const Date& date);

// Runs the full collection grid (countries x genders x ages, plus one
// platform-total query per country) against `source`.
Snapshot CollectSnapshot(const AudienceSource& source,
                         const std::vector<CountryCode>& countries,
                         const std::string& school_set, const Date& date);

// Runs the seniority grid (countries x genders x roles).
std::vector<SenioritySlice> CollectSeniority(
    const AudienceSource& source, const std::vector<CountryCode>& countries,
    const std::string& school_set, const Date& date);

}  // namespace mignow

#endif  // MIGNOW_REPLAY_H_
