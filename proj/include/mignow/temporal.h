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

#ifndef MIGNOW_TEMPORAL_H_
#define MIGNOW_TEMPORAL_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mignow/datamodel.h"
#include "mignow/scale.h"

namespace mignow {

struct DatedEstimate {
  Date date;
  ScaledEstimate estimate;
};

struct Window {
  Date older;
  Date newer;

  auto operator<=>(const Window&) const = default;
};

struct DiffRecord {
  CountryCode country;
  std::optional<Gender> gender;
  Window window;
  double abs_diff = 0.0;
  std::optional<double> pct_diff;  // Absent when the older value is 0.
};

// newer.value - older.value. Throws InputError if the (country, gender,
// age) keys differ or the dates are out of order.
DiffRecord Diff(const DatedEstimate& older, const DatedEstimate& newer);

// (newer - older) / older. Throws NumericalError for a zero baseline.
double PctDiff(double older, double newer);

// Diff plus the percentage part, when the baseline is positive.
DiffRecord DiffWithPct(const DatedEstimate& older, const DatedEstimate& newer);

// Quartile convention shared by every report in the project: the median of
// the sorted sample (mean of the two middle values for even n); q1 and q3
// are medians of the lower and upper halves, excluding the median itself
// when n is odd.
double Median(std::span<const double> values);

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};
Quartiles ComputeQuartiles(std::span<const double> values);

inline constexpr double kWhiskerIqrMultiple = 1.5;

struct StabilitySummary {
  Window window;
  std::optional<Gender> gender;
  std::size_t n = 0;
  Quartiles quartiles;
  double iqr = 0.0;
  double lower_fence = 0.0;  // q1 - 1.5 * iqr
  double upper_fence = 0.0;  // q3 + 1.5 * iqr
  double whisker_low = 0.0;  // Most extreme values inside the fences.
  double whisker_high = 0.0;
  std::vector<std::pair<CountryCode, double>> outliers;
};

// Summarizes the percentage differences of `records` that belong to
// (window, gender) and carry a pct_diff. Needs at least four of them;
// throws InputError otherwise.
StabilitySummary SummarizeStability(const std::vector<DiffRecord>& records,
                                    const Window& window,
                                    std::optional<Gender> gender);

struct TemporalReport {
  std::vector<DiffRecord> diffs;
  std::vector<StabilitySummary> summaries;
  std::vector<std::string> log;
};

// Diffs every (country, gender) series over each window, then summarizes
// each (window, gender) group that has enough positive-baseline records.
// `series` holds per-date estimates (one entry per date); estimates with an
// age breakdown are ignored.
TemporalReport AnalyzeWindows(
    const std::vector<std::pair<Date, std::vector<ScaledEstimate>>>& series,
    const std::vector<Window>& windows);

// Consecutive windows plus the full first-to-last span for sorted dates.
std::vector<Window> DefaultWindows(std::vector<Date> dates);

}  // namespace mignow

#endif  // MIGNOW_TEMPORAL_H_
