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

#ifndef MIGNOW_INGEST_H_
#define MIGNOW_INGEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mignow/datamodel.h"

namespace mignow {

// Accepts an alpha-2 code or an English country name for the European
// host countries and their neighbours; returns the alpha-2 code.
std::optional<CountryCode> ResolveCountry(std::string_view text);

// Returns the last YYYY-MM-DD substring of `path`, if any.
std::optional<Date> DateFromPath(const std::filesystem::path& path);

// Snapshot CSV: `date,country,gender,age,count,query`. Platform totals use
// gender=any, age=any, query=platform_total; audience cells use
// query=educated with concrete gender and age labels.
Snapshot ParseSnapshot(std::string_view text, const std::string& source,
                       std::optional<Date> expected_date = std::nullopt);

// Reads and validates a snapshot. If the file name carries an ISO date,
// every row must match it.
Snapshot ReadSnapshotFile(const std::filesystem::path& path);
std::string SnapshotToCsv(const Snapshot& snapshot);
void WriteSnapshotFile(const std::filesystem::path& path,
                       const Snapshot& snapshot);

// Indicators CSV: `country,wb_population,gdp_usd,gpi,sci,distance_km,
// unhcr_refugees,unhcr_as_of`; an empty cell marks the value missing.
std::vector<CountryIndicators> ParseIndicators(std::string_view text,
                                               const std::string& source);
std::vector<CountryIndicators> ReadIndicatorsFile(
    const std::filesystem::path& path);
std::string IndicatorsToCsv(const std::vector<CountryIndicators>& indicators);

// Seniority CSV: `date,country,gender,role,count`. Slices come back sorted
// by (date, country, gender) with absent roles zero-filled and censored.
std::vector<SenioritySlice> ParseSeniority(std::string_view text,
                                           const std::string& source);
std::vector<SenioritySlice> ReadSeniorityFile(const std::filesystem::path& path);
std::string SeniorityToCsv(const std::vector<SenioritySlice>& slices);

}  // namespace mignow

#endif  // MIGNOW_INGEST_H_
