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

#ifndef MIGNOW_DATAMODEL_H_
#define MIGNOW_DATAMODEL_H_

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mignow {

// Audience counts below this floor are reported by the ad platform as 0.
inline constexpr std::int64_t kCensoringFloor = 300;

using Date = std::chrono::year_month_day;

// Parses a strict ISO-8601 calendar date (YYYY-MM-DD).
std::optional<Date> ParseDate(std::string_view text);
std::string FormatDate(const Date& date);

// ISO-3166 alpha-2 country code, always two upper-case ASCII letters.
class CountryCode {
 public:
  CountryCode() = default;

  // Throws InputError unless `code` is two ASCII letters (any case).
  explicit CountryCode(std::string_view code);

  const std::string& str() const { return code_; }

  auto operator<=>(const CountryCode&) const = default;

 private:
  std::string code_;
};

enum class Gender { kFemale, kMale };
inline constexpr std::array<Gender, 2> kAllGenders = {Gender::kFemale,
                                                      Gender::kMale};

enum class AgeBucket { k18To24, k25To34, k35To54, k55Plus, kNoAge };
inline constexpr std::array<AgeBucket, 5> kAllAgeBuckets = {
    AgeBucket::k18To24, AgeBucket::k25To34, AgeBucket::k35To54,
    AgeBucket::k55Plus, AgeBucket::kNoAge};

// Report column order follows the declaration order.
enum class SeniorityRole {
  kUnpaid,
  kTraining,
  kEntry,
  kSenior,
  kManager,
  kDirector,
  kVp,
  kCxo,
  kPartner,
  kOwner,
};
inline constexpr std::size_t kNumSeniorityRoles = 10;
inline constexpr std::array<SeniorityRole, kNumSeniorityRoles>
    kAllSeniorityRoles = {
        SeniorityRole::kUnpaid,  SeniorityRole::kTraining,
        SeniorityRole::kEntry,   SeniorityRole::kSenior,
        SeniorityRole::kManager, SeniorityRole::kDirector,
        SeniorityRole::kVp,      SeniorityRole::kCxo,
        SeniorityRole::kPartner, SeniorityRole::kOwner};

// File labels: "female"/"male"; "18-24", "25-34", "35-54", "55+", "noage";
// "Unpaid", "Training", ... "Owner". Parsing is case-insensitive.
std::string_view GenderLabel(Gender gender);
std::string_view AgeLabel(AgeBucket age);
std::string_view RoleLabel(SeniorityRole role);
std::optional<Gender> ParseGender(std::string_view text);
std::optional<AgeBucket> ParseAge(std::string_view text);
std::optional<SeniorityRole> ParseRole(std::string_view text);

struct AudienceCell {
  CountryCode country;
  Gender gender = Gender::kFemale;
  AgeBucket age = AgeBucket::k18To24;
  std::int64_t count = 0;
  bool censored = true;
  Date snapshot_date;

  // Builds a cell whose censored flag is derived from the count.
  static AudienceCell FromCount(CountryCode country, Gender gender,
                                AgeBucket age, std::int64_t count, Date date);
};

struct Snapshot {
  Date date;
  std::vector<AudienceCell> cells;
  std::map<CountryCode, std::int64_t> platform_totals;
};

struct Violation {
  std::string key;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

// Checks every Snapshot and AudienceCell invariant. An empty result means
// the snapshot is valid; violations are reported in cell order.
std::vector<Violation> ValidateSnapshot(const Snapshot& snapshot);

struct CountryIndicators {
  CountryCode country;
  std::optional<std::int64_t> wb_population;
  std::optional<double> gdp_usd;
  std::optional<double> gpi;
  std::optional<double> sci;
  std::optional<double> distance_km;
  std::optional<std::int64_t> unhcr_refugees;
  std::optional<Date> unhcr_as_of;
};

// Range checks for a single indicator record (gpi in [1,5], strictly
// positive magnitudes, non-negative refugee count).
std::vector<Violation> ValidateIndicators(const CountryIndicators& indicators);

struct PanelRow {
  CountryCode country;
  double scaled_estimate = 0.0;
  double sci = 0.0;
  double distance_km = 0.0;
  double gpi = 0.0;
  double gdp_usd = 0.0;
  std::int64_t unhcr_refugees = 0;
};

struct PanelProvenance {
  std::optional<Date> snapshot_date;
  std::vector<std::string> notes;
};

struct CountryPanel {
  std::vector<PanelRow> rows;  // Ascending by country code.
  PanelProvenance provenance;
};

struct DropLogEntry {
  CountryCode country;
  std::vector<std::string> missing_fields;
};

struct PanelAssembly {
  CountryPanel panel;
  std::vector<DropLogEntry> drop_log;
};

inline constexpr std::size_t kMinPanelRows = 3;

// Inner-joins scaled country totals with indicator records. Rows missing
// any required indicator are dropped and listed in the drop log. With
// `include_zero_estimates` false, countries whose scaled total is zero are
// dropped too (logged as "scaled_estimate"). Throws InputError when fewer
// than kMinPanelRows rows survive.
PanelAssembly AssemblePanel(
    const std::map<CountryCode, double>& scaled_totals,
    const std::vector<CountryIndicators>& indicators,
    bool include_zero_estimates = true);

struct SenioritySlice {
  Date date;
  CountryCode country;
  Gender gender = Gender::kFemale;
  std::array<std::int64_t, kNumSeniorityRoles> counts{};
  std::array<bool, kNumSeniorityRoles> censored{};
};

}  // namespace mignow

#endif  // MIGNOW_DATAMODEL_H_
