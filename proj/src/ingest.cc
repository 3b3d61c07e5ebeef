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

#include "mignow/ingest.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <tuple>
#include <utility>

#include "mignow/csv.h"
#include "mignow/error.h"

namespace mignow {
namespace {

struct CountryName {
  std::string_view code;
  std::string_view name;
};

// Host countries considered by the collection plus Ukraine itself.
constexpr CountryName kCountryNames[] = {
    {"AL", "Albania"},        {"AM", "Armenia"},
    {"AT", "Austria"},        {"AZ", "Azerbaijan"},
    {"BA", "Bosnia and Herzegovina"},
    {"BE", "Belgium"},        {"BG", "Bulgaria"},
    {"BY", "Belarus"},        {"CH", "Switzerland"},
    {"CY", "Cyprus"},         {"CZ", "Czechia"},
    {"CZ", "Czech Republic"}, {"DE", "Germany"},
    {"DK", "Denmark"},        {"EE", "Estonia"},
    {"ES", "Spain"},          {"FI", "Finland"},
    {"FR", "France"},         {"GB", "United Kingdom"},
    {"GR", "Greece"},         {"HR", "Croatia"},
    {"HU", "Hungary"},        {"IE", "Ireland"},
    {"IS", "Iceland"},        {"IT", "Italy"},
    {"LT", "Lithuania"},      {"LU", "Luxembourg"},
    {"LV", "Latvia"},         {"MD", "Moldova"},
    {"MD", "Republic of Moldova"},
    {"ME", "Montenegro"},     {"MK", "North Macedonia"},
    {"MT", "Malta"},          {"NL", "Netherlands"},
    {"NO", "Norway"},         {"PL", "Poland"},
    {"PT", "Portugal"},       {"RO", "Romania"},
    {"RS", "Serbia"},         {"SE", "Sweden"},
    {"SI", "Slovenia"},       {"SK", "Slovakia"},
    {"TR", "Turkey"},         {"TR", "Turkiye"},
    {"UA", "Ukraine"},        {"XK", "Kosovo"},
};

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

CountryCode CountryField(const CsvTable& table, const CsvTable::Record& rec) {
  const std::string text = Trim(table.Field(rec, "country"));
  auto code = ResolveCountry(text);
  if (!code) {
    throw InputError(table.Where(rec) + ": unknown country '" + text + "'");
  }
  return *code;
}

Date DateField(const CsvTable& table, const CsvTable::Record& rec,
               std::string_view column) {
  const std::string& text = table.Field(rec, column);
  auto date = ParseDate(Trim(text));
  if (!date) {
    throw InputError(table.Where(rec) + ": invalid date '" + text + "'");
  }
  return *date;
}

std::int64_t CountField(const CsvTable& table, const CsvTable::Record& rec) {
  const std::string& text = table.Field(rec, "count");
  auto value = ParseInt(Trim(text));
  if (!value || *value < 0) {
    throw InputError(table.Where(rec) +
                     ": count must be a non-negative integer, got '" + text +
                     "'");
  }
  return *value;
}

template <typename T>
std::optional<T> OptionalNumber(const CsvTable& table,
                                const CsvTable::Record& rec,
                                std::string_view column) {
  const std::string text = Trim(table.Field(rec, column));
  if (text.empty()) return std::nullopt;
  std::optional<T> value;
  if constexpr (std::is_integral_v<T>) {
    value = ParseInt(text);
  } else {
    value = ParseReal(text);
    if (value && !std::isfinite(*value)) value.reset();
  }
  if (!value) {
    throw InputError(table.Where(rec) + ": invalid " + std::string(column) +
                     " value '" + text + "'");
  }
  return value;
}

std::string JoinViolations(const std::vector<Violation>& violations) {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.key + ": " + v.rule;
  }
  return out;
}

}  // namespace

std::optional<CountryCode> ResolveCountry(std::string_view text) {
  if (text.size() == 2 && std::isalpha(static_cast<unsigned char>(text[0])) &&
      std::isalpha(static_cast<unsigned char>(text[1]))) {
    return CountryCode(text);
  }
  const std::string lowered = Lower(text);
  for (const CountryName& entry : kCountryNames) {
    if (Lower(entry.name) == lowered) return CountryCode(entry.code);
  }
  return std::nullopt;
}

std::optional<Date> DateFromPath(const std::filesystem::path& path) {
  static const std::regex kIsoDate(R"(\d{4}-\d{2}-\d{2})");
  const std::string text = path.string();
  std::optional<Date> found;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kIsoDate);
       it != std::sregex_iterator(); ++it) {
    if (auto date = ParseDate(it->str())) found = date;
  }
  return found;
}

Snapshot ParseSnapshot(std::string_view text, const std::string& source,
                       std::optional<Date> expected_date) {
  const CsvTable table = CsvTable::Parse(text, source);
  table.RequireColumns({"date", "country", "gender", "age", "count", "query"});

  Snapshot snapshot;
  std::optional<Date> date = expected_date;
  for (const auto& rec : table.records()) {
    const Date row_date = DateField(table, rec, "date");
    if (!date) {
      date = row_date;
    } else if (row_date != *date) {
      throw InputError(table.Where(rec) + ": row date " + FormatDate(row_date) +
                       (expected_date ? " does not match file date "
                                      : " differs from snapshot date ") +
                       FormatDate(*date));
    }
    const CountryCode country = CountryField(table, rec);
    const std::int64_t count = CountField(table, rec);
    const std::string query = Lower(Trim(table.Field(rec, "query")));
    const std::string gender_text = Trim(table.Field(rec, "gender"));
    const std::string age_text = Trim(table.Field(rec, "age"));

    if (query == "platform_total") {
      if (Lower(gender_text) != "any" || Lower(age_text) != "any") {
        throw InputError(table.Where(rec) +
                         ": platform_total rows need gender=any and age=any");
      }
      if (!snapshot.platform_totals.emplace(country, count).second) {
        throw InputError(table.Where(rec) + ": duplicate platform total for " +
                         country.str());
      }
    } else if (query == "educated") {
      auto gender = ParseGender(gender_text);
      auto age = ParseAge(age_text);
      if (!gender) {
        throw InputError(table.Where(rec) + ": invalid gender '" +
                         gender_text + "'");
      }
      if (!age) {
        throw InputError(table.Where(rec) + ": invalid age '" + age_text + "'");
      }
      snapshot.cells.push_back(
          AudienceCell::FromCount(country, *gender, *age, count, row_date));
    } else {
      throw InputError(table.Where(rec) + ": unknown query kind '" + query +
                       "'");
    }
  }
  if (!date) {
    throw InputError(source + ": snapshot has no rows and no dated file name");
  }
  snapshot.date = *date;

  auto violations = ValidateSnapshot(snapshot);
  if (!violations.empty()) {
    throw InputError(source + ": invalid snapshot: " + JoinViolations(violations));
  }
  return snapshot;
}

Snapshot ReadSnapshotFile(const std::filesystem::path& path) {
  return ParseSnapshot(ReadFile(path), path.string(),
                       DateFromPath(path.filename()));
}

std::string SnapshotToCsv(const Snapshot& snapshot) {
  std::vector<AudienceCell> cells = snapshot.cells;
  std::sort(cells.begin(), cells.end(),
            [](const AudienceCell& a, const AudienceCell& b) {
              return std::tie(a.country, a.gender, a.age) <
                     std::tie(b.country, b.gender, b.age);
            });
  const std::string date = FormatDate(snapshot.date);
  CsvWriter out({"date", "country", "gender", "age", "count", "query"});
  auto cell = cells.begin();
  for (const auto& [country, total] : snapshot.platform_totals) {
    out.Row({date, country.str(), "any", "any", std::to_string(total),
             "platform_total"});
    for (; cell != cells.end() && cell->country == country; ++cell) {
      out.Row({date, country.str(), std::string(GenderLabel(cell->gender)),
               std::string(AgeLabel(cell->age)), std::to_string(cell->count),
               "educated"});
    }
  }
  if (cell != cells.end()) {
    throw InvariantError("snapshot cell for " + cell->country.str() +
                         " has no platform total");
  }
  return out.text();
}

void WriteSnapshotFile(const std::filesystem::path& path,
                       const Snapshot& snapshot) {
  WriteFile(path, SnapshotToCsv(snapshot));
}

std::vector<CountryIndicators> ParseIndicators(std::string_view text,
                                               const std::string& source) {
  const CsvTable table = CsvTable::Parse(text, source);
  table.RequireColumns({"country", "wb_population", "gdp_usd", "gpi", "sci",
                        "distance_km", "unhcr_refugees", "unhcr_as_of"});
  std::map<CountryCode, CountryIndicators> by_country;
  for (const auto& rec : table.records()) {
    CountryIndicators ind;
    ind.country = CountryField(table, rec);
    ind.wb_population = OptionalNumber<std::int64_t>(table, rec, "wb_population");
    ind.gdp_usd = OptionalNumber<double>(table, rec, "gdp_usd");
    ind.gpi = OptionalNumber<double>(table, rec, "gpi");
    ind.sci = OptionalNumber<double>(table, rec, "sci");
    ind.distance_km = OptionalNumber<double>(table, rec, "distance_km");
    ind.unhcr_refugees =
        OptionalNumber<std::int64_t>(table, rec, "unhcr_refugees");
    if (!Trim(table.Field(rec, "unhcr_as_of")).empty()) {
      ind.unhcr_as_of = DateField(table, rec, "unhcr_as_of");
    }
    auto violations = ValidateIndicators(ind);
    if (!violations.empty()) {
      throw InputError(table.Where(rec) + ": " + JoinViolations(violations));
    }
    if (by_country.contains(ind.country)) {
      throw InputError(table.Where(rec) + ": duplicate country " +
                       ind.country.str());
    }
    by_country.emplace(ind.country, std::move(ind));
  }
  std::vector<CountryIndicators> out;
  out.reserve(by_country.size());
  for (auto& [code, ind] : by_country) out.push_back(std::move(ind));
  return out;
}

std::vector<CountryIndicators> ReadIndicatorsFile(
    const std::filesystem::path& path) {
  return ParseIndicators(ReadFile(path), path.string());
}

std::string IndicatorsToCsv(const std::vector<CountryIndicators>& indicators) {
  auto opt_int = [](const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  auto opt_real = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string();
  };
  CsvWriter out({"country", "wb_population", "gdp_usd", "gpi", "sci",
                 "distance_km", "unhcr_refugees", "unhcr_as_of"});
  for (const CountryIndicators& ind : indicators) {
    out.Row({ind.country.str(), opt_int(ind.wb_population),
             opt_real(ind.gdp_usd), opt_real(ind.gpi), opt_real(ind.sci),
             opt_real(ind.distance_km), opt_int(ind.unhcr_refugees),
             ind.unhcr_as_of ? FormatDate(*ind.unhcr_as_of) : std::string()});
  }
  return out.text();
}

std::vector<SenioritySlice> ParseSeniority(std::string_view text,
                                           const std::string& source) {
  const CsvTable table = CsvTable::Parse(text, source);
  table.RequireColumns({"date", "country", "gender", "role", "count"});

  using Key = std::tuple<Date, CountryCode, Gender>;
  std::map<Key, SenioritySlice> slices;
  std::set<std::tuple<Date, CountryCode, Gender, SeniorityRole>> seen;
  for (const auto& rec : table.records()) {
    const Date date = DateField(table, rec, "date");
    const CountryCode country = CountryField(table, rec);
    const std::string gender_text = Trim(table.Field(rec, "gender"));
    const std::string role_text = Trim(table.Field(rec, "role"));
    auto gender = ParseGender(gender_text);
    auto role = ParseRole(role_text);
    if (!gender) {
      throw InputError(table.Where(rec) + ": invalid gender '" + gender_text +
                       "'");
    }
    if (!role) {
      throw InputError(table.Where(rec) + ": invalid role '" + role_text + "'");
    }
    const std::int64_t count = CountField(table, rec);
    if (count > 0 && count < kCensoringFloor) {
      throw InputError(table.Where(rec) + ": count in (0,300)");
    }
    if (!seen.emplace(date, country, *gender, *role).second) {
      throw InputError(table.Where(rec) + ": duplicate role row");
    }
    auto [it, inserted] = slices.try_emplace(Key{date, country, *gender});
    SenioritySlice& slice = it->second;
    if (inserted) {
      slice.date = date;
      slice.country = country;
      slice.gender = *gender;
      slice.censored.fill(true);
    }
    const auto index = static_cast<std::size_t>(*role);
    slice.counts[index] = count;
    slice.censored[index] = count == 0;
  }
  std::vector<SenioritySlice> out;
  out.reserve(slices.size());
  for (auto& [key, slice] : slices) out.push_back(std::move(slice));
  return out;
}

std::vector<SenioritySlice> ReadSeniorityFile(
    const std::filesystem::path& path) {
  return ParseSeniority(ReadFile(path), path.string());
}

std::string SeniorityToCsv(const std::vector<SenioritySlice>& slices) {
  CsvWriter out({"date", "country", "gender", "role", "count"});
  for (const SenioritySlice& slice : slices) {
    for (SeniorityRole role : kAllSeniorityRoles) {
      out.Row({FormatDate(slice.date), slice.country.str(),
               std::string(GenderLabel(slice.gender)),
               std::string(RoleLabel(role)),
               std::to_string(slice.counts[static_cast<std::size_t>(role)])});
    }
  }
  return out.text();
}

}  // namespace mignow
