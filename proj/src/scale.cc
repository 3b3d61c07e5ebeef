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

#include <tuple>

#include "mignow/error.h"

namespace mignow {

PenetrationTable Penetration(
    const std::map<CountryCode, std::int64_t>& platform_totals,
    const std::map<CountryCode, std::int64_t>& wb_populations) {
  PenetrationTable table;
  for (const auto& [country, total] : platform_totals) {
    auto pop = wb_populations.find(country);
    if (pop == wb_populations.end()) {
      table.log.push_back(country.str() + ": no population");
      continue;
    }
    if (pop->second <= 0) {
      throw InputError("population for " + country.str() +
                       " must be positive to compute penetration");
    }
    if (total <= 0) {
      table.log.push_back(country.str() + ": zero platform total");
      continue;
    }
    table.values[country] =
        static_cast<double>(total) / static_cast<double>(pop->second);
  }
  for (const auto& [country, pop] : wb_populations) {
    if (!platform_totals.contains(country)) {
      table.log.push_back(country.str() + ": no platform total");
    }
  }
  return table;
}

PenetrationTable Penetration(const Snapshot& snapshot,
                             const std::vector<CountryIndicators>& indicators) {
  std::map<CountryCode, std::int64_t> populations;
  for (const CountryIndicators& ind : indicators) {
    if (ind.wb_population) populations[ind.country] = *ind.wb_population;
  }
  return Penetration(snapshot.platform_totals, populations);
}

ScaledEstimate ScaleEstimate(std::int64_t raw, const PenetrationTable& pen,
                             const CountryCode& country, bool censored) {
  auto it = pen.values.find(country);
  if (it == pen.values.end()) {
    throw InputError("no penetration for " + country.str());
  }
  return ScaledEstimate{country, std::nullopt, std::nullopt,
                        static_cast<double>(raw) / it->second, censored};
}

std::vector<ScaledEstimate> CountryTotals(const Snapshot& snapshot,
                                          const PenetrationTable& pen,
                                          Breakdown breakdown) {
  struct Sum {
    std::int64_t raw = 0;
    bool all_censored = true;
  };
  using Key = std::tuple<CountryCode, int, int>;  // -1 marks "any".
  std::map<Key, Sum> sums;
  for (const AudienceCell& cell : snapshot.cells) {
    if (!pen.values.contains(cell.country)) continue;
    const int gender =
        breakdown == Breakdown::kNone ? -1 : static_cast<int>(cell.gender);
    const int age =
        breakdown == Breakdown::kGenderAge ? static_cast<int>(cell.age) : -1;
    Sum& sum = sums[Key{cell.country, gender, age}];
    sum.raw += cell.count;
    sum.all_censored = sum.all_censored && cell.censored;
  }
  std::vector<ScaledEstimate> out;
  out.reserve(sums.size());
  for (const auto& [key, sum] : sums) {
    const auto& [country, gender, age] = key;
    ScaledEstimate est = ScaleEstimate(sum.raw, pen, country, sum.all_censored);
    if (gender >= 0) est.gender = static_cast<Gender>(gender);
    if (age >= 0) est.age = static_cast<AgeBucket>(age);
    out.push_back(est);
  }
  return out;
}

std::map<CountryCode, double> TotalsByCountry(const Snapshot& snapshot,
                                              const PenetrationTable& pen) {
  std::map<CountryCode, double> totals;
  for (const ScaledEstimate& est :
       CountryTotals(snapshot, pen, Breakdown::kNone)) {
    totals[est.country] = est.value;
  }
  return totals;
}

}  // namespace mignow
