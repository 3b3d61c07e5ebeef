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

#ifndef MIGNOW_ANALYSIS_H_
#define MIGNOW_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "mignow/datamodel.h"
#include "mignow/stats.h"

namespace mignow {

struct SeniorityShares {
  Date date;
  CountryCode country;
  Gender gender = Gender::kFemale;
  std::array<double, kNumSeniorityRoles> percent{};  // Sums to 100 unless empty.
  std::int64_t total = 0;
  bool empty = false;  // Every role was zero (fully censored).
};

// percent = 100 * count / total for each role.
std::vector<SeniorityShares> ComputeSeniorityShares(
    const std::vector<SenioritySlice>& slices);

struct SeniorityMedian {
  Gender gender = Gender::kFemale;
  SeniorityRole role = SeniorityRole::kUnpaid;
  double median = 0.0;
  std::size_t countries = 0;
};

// Median share per (gender, role) across countries, using the same median
// convention as the stability summaries. Genders with no usable rows are
// omitted.
std::vector<SeniorityMedian> ComputeSeniorityMedians(
    const std::vector<SeniorityShares>& shares, bool include_empty = false);

struct ValidationPair {
  CountryCode country;
  double scaled_estimate = 0.0;
  double unhcr_refugees = 0.0;
};

struct ValidationResult {
  std::vector<ValidationPair> pairs;  // Ascending country code.
  SpearmanResult spearman;
};

// Inner-joins scaled totals with UNHCR figures and correlates them. Throws
// InputError when fewer than four countries overlap.
ValidationResult ValidationJoin(
    const std::map<CountryCode, double>& scaled_totals,
    const std::map<CountryCode, double>& unhcr_refugees,
    const SpearmanOptions& options = {});

}  // namespace mignow

#endif  // MIGNOW_ANALYSIS_H_
