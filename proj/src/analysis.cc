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

#include "mignow/error.h"
#include "mignow/temporal.h"

namespace mignow {

std::vector<SeniorityShares> ComputeSeniorityShares(
    const std::vector<SenioritySlice>& slices) {
  std::vector<SeniorityShares> out;
  out.reserve(slices.size());
  for (const SenioritySlice& slice : slices) {
    SeniorityShares shares;
    shares.date = slice.date;
    shares.country = slice.country;
    shares.gender = slice.gender;
    for (std::int64_t c : slice.counts) shares.total += c;
    shares.empty = shares.total == 0;
    if (!shares.empty) {
      const double total = static_cast<double>(shares.total);
      for (std::size_t r = 0; r < kNumSeniorityRoles; ++r) {
        shares.percent[r] = 100.0 * static_cast<double>(slice.counts[r]) / total;
      }
    }
    out.push_back(shares);
  }
  return out;
}

std::vector<SeniorityMedian> ComputeSeniorityMedians(
    const std::vector<SeniorityShares>& shares, bool include_empty) {
  std::vector<SeniorityMedian> out;
  for (Gender gender : kAllGenders) {
    std::array<std::vector<double>, kNumSeniorityRoles> columns;
    for (const SeniorityShares& s : shares) {
      if (s.gender != gender || (s.empty && !include_empty)) continue;
      for (std::size_t r = 0; r < kNumSeniorityRoles; ++r) {
        columns[r].push_back(s.percent[r]);
      }
    }
    if (columns[0].empty()) continue;
    for (SeniorityRole role : kAllSeniorityRoles) {
      const auto& col = columns[static_cast<std::size_t>(role)];
      out.push_back({gender, role, Median(col), col.size()});
    }
  }
  return out;
}

ValidationResult ValidationJoin(
    const std::map<CountryCode, double>& scaled_totals,
    const std::map<CountryCode, double>& unhcr_refugees,
    const SpearmanOptions& options) {
  ValidationResult result;
  for (const auto& [country, estimate] : scaled_totals) {
    auto it = unhcr_refugees.find(country);
    if (it == unhcr_refugees.end()) continue;
    result.pairs.push_back({country, estimate, it->second});
  }
  if (result.pairs.size() < 4) {
    throw InputError("validation join needs at least 4 overlapping countries, "
                     "got " + std::to_string(result.pairs.size()));
  }
  std::vector<double> x, y;
  for (const ValidationPair& pair : result.pairs) {
    x.push_back(pair.scaled_estimate);
    y.push_back(pair.unhcr_refugees);
  }
  result.spearman = Spearman(x, y, options);
  return result;
}

}  // namespace mignow
