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

#include "mignow/temporal.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "mignow/error.h"

namespace mignow {
namespace {

std::string GenderName(std::optional<Gender> gender) {
  return gender ? std::string(GenderLabel(*gender)) : "any";
}

std::string WindowName(const Window& w) {
  return FormatDate(w.older) + ".." + FormatDate(w.newer);
}

double SortedMedian(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace

DiffRecord Diff(const DatedEstimate& older, const DatedEstimate& newer) {
  const ScaledEstimate& a = older.estimate;
  const ScaledEstimate& b = newer.estimate;
  if (a.country != b.country || a.gender != b.gender || a.age != b.age) {
    throw InputError("diff key mismatch: " + a.country.str() + "/" +
                     GenderName(a.gender) + " vs " + b.country.str() + "/" +
                     GenderName(b.gender));
  }
  if (newer.date < older.date) {
    throw InputError("diff dates out of order: " + FormatDate(older.date) +
                     " after " + FormatDate(newer.date));
  }
  return DiffRecord{a.country, a.gender, Window{older.date, newer.date},
                    b.value - a.value, std::nullopt};
}

double PctDiff(double older, double newer) {
  if (older == 0.0) {
    throw NumericalError("percentage difference undefined for zero baseline");
  }
  return (newer - older) / older;
}

DiffRecord DiffWithPct(const DatedEstimate& older, const DatedEstimate& newer) {
  DiffRecord record = Diff(older, newer);
  if (older.estimate.value > 0.0) {
    record.pct_diff = PctDiff(older.estimate.value, newer.estimate.value);
  }
  return record;
}

double Median(std::span<const double> values) {
  if (values.empty()) throw InputError("median of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return SortedMedian(sorted);
}

Quartiles ComputeQuartiles(std::span<const double> values) {
  if (values.empty()) throw InputError("quartiles of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n == 1) return {sorted[0], sorted[0], sorted[0]};
  const std::size_t half = n / 2;
  std::span<const double> all(sorted);
  return Quartiles{SortedMedian(all.first(half)), SortedMedian(all),
                   SortedMedian(all.last(half))};
}

StabilitySummary SummarizeStability(const std::vector<DiffRecord>& records,
                                    const Window& window,
                                    std::optional<Gender> gender) {
  std::vector<const DiffRecord*> group;
  for (const DiffRecord& r : records) {
    if (r.window == window && r.gender == gender && r.pct_diff) {
      group.push_back(&r);
    }
  }
  if (group.size() < 4) {
    throw InputError("stability summary for " + WindowName(window) + "/" +
                     GenderName(gender) + " needs at least 4 records, got " +
                     std::to_string(group.size()));
  }
  std::vector<double> values;
  values.reserve(group.size());
  for (const DiffRecord* r : group) values.push_back(*r->pct_diff);

  StabilitySummary s;
  s.window = window;
  s.gender = gender;
  s.n = values.size();
  s.quartiles = ComputeQuartiles(values);
  s.iqr = s.quartiles.q3 - s.quartiles.q1;
  s.lower_fence = s.quartiles.q1 - kWhiskerIqrMultiple * s.iqr;
  s.upper_fence = s.quartiles.q3 + kWhiskerIqrMultiple * s.iqr;
  s.whisker_low = s.quartiles.q1;
  s.whisker_high = s.quartiles.q3;
  for (const DiffRecord* r : group) {
    const double v = *r->pct_diff;
    if (v < s.lower_fence || v > s.upper_fence) {
      s.outliers.emplace_back(r->country, v);
    } else {
      s.whisker_low = std::min(s.whisker_low, v);
      s.whisker_high = std::max(s.whisker_high, v);
    }
  }
  std::sort(s.outliers.begin(), s.outliers.end());
  return s;
}

TemporalReport AnalyzeWindows(
    const std::vector<std::pair<Date, std::vector<ScaledEstimate>>>& series,
    const std::vector<Window>& windows) {
  using Key = std::tuple<CountryCode, int>;  // gender, -1 for "any"
  std::map<Date, std::map<Key, const ScaledEstimate*>> by_date;
  for (const auto& [date, estimates] : series) {
    auto [it, inserted] = by_date.try_emplace(date);
    if (!inserted) {
      throw InputError("duplicate snapshot date " + FormatDate(date));
    }
    for (const ScaledEstimate& est : estimates) {
      if (est.age) continue;
      const int gender = est.gender ? static_cast<int>(*est.gender) : -1;
      it->second[Key{est.country, gender}] = &est;
    }
  }

  TemporalReport report;
  for (const Window& window : windows) {
    auto older = by_date.find(window.older);
    auto newer = by_date.find(window.newer);
    if (older == by_date.end() || newer == by_date.end()) {
      throw InputError("window " + WindowName(window) +
                       " references a date without estimates");
    }
    std::set<int> genders;
    std::size_t zero_baselines = 0;
    for (const auto& [key, old_est] : older->second) {
      auto match = newer->second.find(key);
      if (match == newer->second.end()) {
        report.log.push_back(WindowName(window) + ": " +
                             std::get<0>(key).str() + "/" +
                             GenderName(old_est->gender) +
                             " missing in newer snapshot");
        continue;
      }
      DiffRecord record = DiffWithPct({window.older, *old_est},
                                      {window.newer, *match->second});
      if (!record.pct_diff) ++zero_baselines;
      genders.insert(std::get<1>(key));
      report.diffs.push_back(std::move(record));
    }
    if (zero_baselines > 0) {
      report.log.push_back(WindowName(window) + ": " +
                           std::to_string(zero_baselines) +
                           " series with zero baseline, excluded from percentages");
    }
    for (int g : genders) {
      const std::optional<Gender> gender =
          g < 0 ? std::nullopt : std::optional<Gender>(static_cast<Gender>(g));
      try {
        report.summaries.push_back(
            SummarizeStability(report.diffs, window, gender));
      } catch (const Error& e) {
        report.log.push_back(e.what());
      }
    }
  }
  return report;
}

std::vector<Window> DefaultWindows(std::vector<Date> dates) {
  std::sort(dates.begin(), dates.end());
  dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
  std::vector<Window> windows;
  for (std::size_t i = 0; i + 1 < dates.size(); ++i) {
    windows.push_back({dates[i], dates[i + 1]});
  }
  if (dates.size() > 2) windows.push_back({dates.front(), dates.back()});
  return windows;
}

}  // namespace mignow
