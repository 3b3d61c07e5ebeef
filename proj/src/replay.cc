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

#include "mignow/replay.h"

#include <algorithm>
#include <cctype>

#include "mignow/csv.h"
#include "mignow/error.h"

namespace mignow {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsAny(std::string_view s) { return s.empty() || Lower(s) == "any"; }

}  // namespace

std::string CanonicalKey(const AudienceQuery& query, const Date& date) {
  std::string key = Lower(query.location.str());
  key += '|';
  key += query.gender ? GenderLabel(*query.gender) : "any";
  key += '|';
  key += query.age ? AgeLabel(*query.age) : "any";
  key += '|';
  key += query.school_set ? *query.school_set : "none";
  key += '|';
  key += query.seniority ? Lower(RoleLabel(*query.seniority)) : "any";
  key += '|';
  key += FormatDate(date);
  return key;
}

std::int64_t ApplyCensoring(std::int64_t count) {
  return count >= kCensoringFloor ? count : 0;
}

ReplayArchive ReplayArchive::Read(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

ReplayArchive ReplayArchive::Parse(std::string_view text,
                                   const std::string& source) {
  const CsvTable table = CsvTable::Parse(text, source);
  table.RequireColumns(
      {"date", "location", "gender", "age", "school_set", "seniority", "count"});
  ReplayArchive archive;
  for (const auto& rec : table.records()) {
    auto fail = [&](const std::string& what) {
      return InputError(table.Where(rec) + ": " + what);
    };
    auto date = ParseDate(table.Field(rec, "date"));
    if (!date) throw fail("invalid date");
    AudienceQuery query;
    query.location = CountryCode(table.Field(rec, "location"));
    if (const auto& g = table.Field(rec, "gender"); !IsAny(g)) {
      query.gender = ParseGender(g);
      if (!query.gender) throw fail("invalid gender '" + g + "'");
    }
    if (const auto& a = table.Field(rec, "age"); !IsAny(a)) {
      query.age = ParseAge(a);
      if (!query.age) throw fail("invalid age '" + a + "'");
    }
    if (const auto& s = table.Field(rec, "school_set");
        !s.empty() && Lower(s) != "none") {
      query.school_set = s;
    }
    if (const auto& r = table.Field(rec, "seniority"); !IsAny(r)) {
      query.seniority = ParseRole(r);
      if (!query.seniority) throw fail("invalid seniority '" + r + "'");
    }
    auto count = ParseInt(table.Field(rec, "count"));
    if (!count) throw fail("invalid count");
    try {
      archive.Record(query, *date, *count);
    } catch (const Error& e) {
      throw fail(e.what());
    }
  }
  return archive;
}

void ReplayArchive::Record(const AudienceQuery& query, const Date& date,
                           std::int64_t count) {
  if (count < 0) {
    throw InputError("negative archived count for " + CanonicalKey(query, date));
  }
  std::string key = CanonicalKey(query, date);
  if (!entries_.try_emplace(key, Entry{query, date, count}).second) {
    throw InputError("duplicate archive key " + key);
  }
}

std::int64_t ReplayArchive::Estimate(const AudienceQuery& query,
                                     const Date& date) const {
  const std::string key = CanonicalKey(query, date);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw InputError("replay key not found: " + key);
  }
  return ApplyCensoring(it->second.count);
}

std::string ReplayArchive::ToCsv() const {
  CsvWriter out(
      {"date", "location", "gender", "age", "school_set", "seniority", "count"});
  for (const auto& [key, e] : entries_) {
    out.Row({FormatDate(e.date), e.query.location.str(),
             e.query.gender ? std::string(GenderLabel(*e.query.gender)) : "any",
             e.query.age ? std::string(AgeLabel(*e.query.age)) : "any",
             e.query.school_set.value_or("none"),
             e.query.seniority ? std::string(RoleLabel(*e.query.seniority))
                               : "any",
             std::to_string(e.count)});
  }
  return out.text();
}

std::int64_t ReplayQuery(const ReplayArchive& archive,
                         const AudienceQuery& query, const Date& date) {
  return archive.Estimate(query, date);
}

Snapshot CollectSnapshot(const AudienceSource& source,
                         const std::vector<CountryCode>& countries,
                         const std::string& school_set, const Date& date) {
  Snapshot snapshot;
  snapshot.date = date;
  for (const CountryCode& country : countries) {
    snapshot.platform_totals[country] =
        source.Estimate(AudienceQuery{country, {}, {}, {}, {}}, date);
    for (Gender gender : kAllGenders) {
      for (AgeBucket age : kAllAgeBuckets) {
        const std::int64_t count = source.Estimate(
            AudienceQuery{country, gender, age, school_set, {}}, date);
        snapshot.cells.push_back(
            AudienceCell::FromCount(country, gender, age, count, date));
      }
    }
  }
  return snapshot;
}

std::vector<SenioritySlice> CollectSeniority(
    const AudienceSource& source, const std::vector<CountryCode>& countries,
    const std::string& school_set, const Date& date) {
  std::vector<CountryCode> sorted = countries;
  std::sort(sorted.begin(), sorted.end());
  std::vector<SenioritySlice> slices;
  for (const CountryCode& country : sorted) {
    for (Gender gender : kAllGenders) {
      SenioritySlice slice;
      slice.date = date;
      slice.country = country;
      slice.gender = gender;
      for (SeniorityRole role : kAllSeniorityRoles) {
        const auto i = static_cast<std::size_t>(role);
        slice.counts[i] = source.Estimate(
            AudienceQuery{country, gender, {}, school_set, role}, date);
        slice.censored[i] = slice.counts[i] == 0;
      }
      slices.push_back(slice);
    }
  }
  return slices;
}

}  // namespace mignow
