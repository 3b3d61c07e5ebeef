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

#ifndef MIGNOW_SCALE_H_
#define MIGNOW_SCALE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mignow/datamodel.h"

namespace mignow {

// Platform members per resident, one scalar per country.
struct PenetrationTable {
  std::map<CountryCode, double> values;  // Strictly positive.
  std::vector<std::string> log;          // Countries left out, with reason.
};

// penetration(c) = platform_total(c) / wb_population(c). Countries missing
// either input, or with a zero platform total, are omitted and logged.
// Throws InputError for a non-positive population paired with a platform
// total.
PenetrationTable Penetration(
    const std::map<CountryCode, std::int64_t>& platform_totals,
    const std::map<CountryCode, std::int64_t>& wb_populations);

// Convenience overload pulling populations from indicator records.
PenetrationTable Penetration(const Snapshot& snapshot,
                             const std::vector<CountryIndicators>& indicators);

struct ScaledEstimate {
  CountryCode country;
  std::optional<Gender> gender;
  std::optional<AgeBucket> age;
  double value = 0.0;
  bool censored = false;  // Every contributing raw cell was censored.
};

// value = raw / penetration(country). Throws InputError if the country has
// no penetration entry.
ScaledEstimate ScaleEstimate(std::int64_t raw, const PenetrationTable& pen,
                             const CountryCode& country, bool censored = false);

enum class Breakdown { kNone, kGender, kGenderAge };

// Sums raw counts over the collapsed dimensions, then divides by the
// country's penetration. Countries absent from `pen` are skipped. Output is
// ordered by country, then gender, then age.
std::vector<ScaledEstimate> CountryTotals(const Snapshot& snapshot,
                                          const PenetrationTable& pen,
                                          Breakdown breakdown);

// Ungendered totals keyed by country, the panel's LinkedIn column.
std::map<CountryCode, double> TotalsByCountry(const Snapshot& snapshot,
                                              const PenetrationTable& pen);

}  // namespace mignow

#endif  // MIGNOW_SCALE_H_
