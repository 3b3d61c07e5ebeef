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

#include "mignow/datamodel.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <tuple>

#include "mignow/error.h"

namespace mignow {
namespace {

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::string CellKey(const AudienceCell& cell) {
  std::string key = cell.country.str();
  key += '/';
  key += GenderLabel(cell.gender);
  key += '/';
  key += AgeLabel(cell.age);
  return key;
}

bool ParseFixedInt(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Date> ParseDate(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  int y = 0, m = 0, d = 0;
  if (!ParseFixedInt(text.substr(0, 4), y) ||
      !ParseFixedInt(text.substr(5, 2), m) ||
      !ParseFixedInt(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string FormatDate(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int{date.year()},
                unsigned{date.month()}, unsigned{date.day()});
  return buf;
}

CountryCode::CountryCode(std::string_view code) {
  if (code.size() != 2 ||
      !std::isalpha(static_cast<unsigned char>(code[0])) ||
      !std::isalpha(static_cast<unsigned char>(code[1]))) {
    throw InputError("invalid ISO-3166 alpha-2 country code '" +
                     std::string(code) + "'");
  }
  code_ = {static_cast<char>(std::toupper(static_cast<unsigned char>(code[0]))),
           static_cast<char>(std::toupper(static_cast<unsigned char>(code[1])))};
}

std::string_view GenderLabel(Gender gender) {
  return gender == Gender::kFemale ? "female" : "male";
}

std::string_view AgeLabel(AgeBucket age) {
  switch (age) {
    case AgeBucket::k18To24: return "18-24";
    case AgeBucket::k25To34: return "25-34";
    case AgeBucket::k35To54: return "35-54";
    case AgeBucket::k55Plus: return "55+";
    case AgeBucket::kNoAge: return "noage";
  }
  return "";
}

std::string_view RoleLabel(SeniorityRole role) {
  static constexpr std::array<std::string_view, kNumSeniorityRoles> kLabels = {
      "Unpaid",  "Training", "Entry", "Senior",  "Manager",
      "Director", "VP",      "CxO",   "Partner", "Owner"};
  return kLabels[static_cast<std::size_t>(role)];
}

std::optional<Gender> ParseGender(std::string_view text) {
  for (Gender g : kAllGenders) {
    if (EqualsIgnoreCase(text, GenderLabel(g))) return g;
  }
  return std::nullopt;
}

std::optional<AgeBucket> ParseAge(std::string_view text) {
  for (AgeBucket a : kAllAgeBuckets) {
    if (EqualsIgnoreCase(text, AgeLabel(a))) return a;
  }
  return std::nullopt;
}

std::optional<SeniorityRole> ParseRole(std::string_view text) {
  for (SeniorityRole r : kAllSeniorityRoles) {
    if (EqualsIgnoreCase(text, RoleLabel(r))) return r;
  }
  return std::nullopt;
}

AudienceCell AudienceCell::FromCount(CountryCode country, Gender gender,
                                     AgeBucket age, std::int64_t count,
                                     Date date) {
  return AudienceCell{std::move(country), gender, age, count, count == 0, date};
}

std::vector<Violation> ValidateSnapshot(const Snapshot& snapshot) {
  std::vector<Violation> violations;
  std::set<std::tuple<CountryCode, Gender, AgeBucket>> seen;
  std::set<CountryCode> missing_totals;
  for (const AudienceCell& cell : snapshot.cells) {
    const std::string key = CellKey(cell);
    if (cell.count < 0) {
      violations.push_back({key, "negative count"});
    } else if (cell.count > 0 && cell.count < kCensoringFloor) {
      violations.push_back({key, "count in (0,300)"});
    }
    if (cell.censored != (cell.count == 0)) {
      violations.push_back({key, "censored flag inconsistent with count"});
    }
    if (cell.snapshot_date != snapshot.date) {
      violations.push_back({key, "cell date differs from snapshot date"});
    }
    if (!seen.emplace(cell.country, cell.gender, cell.age).second) {
      violations.push_back({key, "duplicate cell key"});
    }
    if (!snapshot.platform_totals.contains(cell.country) &&
        missing_totals.insert(cell.country).second) {
      violations.push_back({cell.country.str(), "missing platform total"});
    }
  }
  for (const auto& [country, total] : snapshot.platform_totals) {
    if (total < 0) {
      violations.push_back({country.str(), "negative platform total"});
    }
  }
  return violations;
}

std::vector<Violation> ValidateIndicators(const CountryIndicators& ind) {
  std::vector<Violation> violations;
  const std::string& key = ind.country.str();
  if (ind.gpi && (*ind.gpi < 1.0 || *ind.gpi > 5.0)) {
    violations.push_back({key, "gpi out of [1,5]"});
  }
  if (ind.wb_population && *ind.wb_population <= 0) {
    violations.push_back({key, "wb_population not positive"});
  }
  if (ind.gdp_usd && !(*ind.gdp_usd > 0.0)) {
    violations.push_back({key, "gdp_usd not positive"});
  }
  if (ind.sci && !(*ind.sci > 0.0)) {
    violations.push_back({key, "sci not positive"});
  }
  if (ind.distance_km && !(*ind.distance_km > 0.0)) {
    violations.push_back({key, "distance_km not positive"});
  }
  if (ind.unhcr_refugees && *ind.unhcr_refugees < 0) {
    violations.push_back({key, "unhcr_refugees negative"});
  }
  return violations;
}

PanelAssembly AssemblePanel(const std::map<CountryCode, double>& scaled_totals,
                            const std::vector<CountryIndicators>& indicators,
                            bool include_zero_estimates) {
  std::map<CountryCode, const CountryIndicators*> by_country;
  for (const CountryIndicators& ind : indicators) {
    by_country.emplace(ind.country, &ind);
  }

  PanelAssembly out;
  // std::map iteration gives ascending ISO order.
  for (const auto& [country, estimate] : scaled_totals) {
    auto it = by_country.find(country);
    if (it == by_country.end()) continue;
    const CountryIndicators& ind = *it->second;

    std::vector<std::string> missing;
    if (!include_zero_estimates && estimate == 0.0) {
      missing.push_back("scaled_estimate");
    }
    if (!ind.sci) missing.push_back("sci");
    if (!ind.distance_km) missing.push_back("distance_km");
    if (!ind.gpi) missing.push_back("gpi");
    if (!ind.gdp_usd) missing.push_back("gdp_usd");
    if (!ind.unhcr_refugees) missing.push_back("unhcr_refugees");
    if (!missing.empty()) {
      out.drop_log.push_back({country, std::move(missing)});
      continue;
    }
    out.panel.rows.push_back(PanelRow{country, estimate, *ind.sci,
                                      *ind.distance_km, *ind.gpi,
                                      *ind.gdp_usd, *ind.unhcr_refugees});
  }
  if (out.panel.rows.size() < kMinPanelRows) {
    throw InputError("panel has fewer than 3 rows after join (" +
                     std::to_string(out.panel.rows.size()) + ")");
  }
  return out;
}

}  // namespace mignow
