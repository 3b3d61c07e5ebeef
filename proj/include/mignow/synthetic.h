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

#ifndef MIGNOW_SYNTHETIC_H_
#define MIGNOW_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mignow/datamodel.h"
#include "mignow/replay.h"
#include "mignow/stats.h"

namespace mignow {

// Deterministic generator (SplitMix64 seeding a xoshiro256** stream);
// identical output on every platform, unlike the std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t Next();
  double Uniform();                      // [0, 1)
  double Uniform(double lo, double hi);  // [lo, hi)
  double LogUniform(double lo, double hi);
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);  // inclusive
  double Normal();

 private:
  std::uint64_t s_[4];
};

// Default collection dates: 2023-02-27, 04-28, 05-05, 05-12, 05-19.
std::vector<Date> DefaultSnapshotDates();

// Generator predictor order: coefficient k applies to the k-th entry.
inline constexpr std::array<Predictor, kNumPredictors> kGeneratorPredictors = {
    Predictor::kLinkedIn, Predictor::kSci, Predictor::kDistance,
    Predictor::kGpi, Predictor::kGdp};

struct SyntheticParams {
  std::uint64_t seed = 1;
  std::size_t n_countries = 38;
  // Planted standardized coefficients, applied in kGeneratorPredictors order.
  std::vector<double> beta = {1.0, 0.2, -0.15, -0.1};
  // Standard deviation of the standardized-scale noise term.
  double noise = 0.0;
  bool censoring = true;
  std::vector<Date> dates = DefaultSnapshotDates();
  std::string school_set = "ua-universities";
  // Expected educated platform members per refugee before penetration.
  double audience_rate = 0.6;
};

struct PlantedTruth {
  SyntheticParams params;
  std::vector<Predictor> predictors;
  std::vector<CountryCode> countries;
  Date reference_date;
  // How the target/predictor relation was planted: "anchor" (indicator
  // columns solved so the relation is exact), "affine" (refugees an exact
  // affine function of the LinkedIn totals) or "response" (refugees rounded
  // from the noisy linear response).
  std::string construction;
  bool linkedin_degenerate = false;
  std::vector<double> noise_realization;  // Per country, standardized scale.
  std::vector<std::int64_t> refugees;
  // Uncensored audience counts per date, country, "gender/age" cell.
  std::map<Date, std::map<CountryCode, std::map<std::string, std::int64_t>>>
      true_counts;
};

struct SyntheticPanel {
  std::vector<Snapshot> snapshots;  // One per date, ascending.
  std::vector<CountryIndicators> indicators;
  std::vector<SenioritySlice> seniority;  // Reference date only.
  ReplayArchive archive;
  PlantedTruth truth;
};

// Builds snapshots, indicators, seniority slices and the replay archive they
// were collected from. With noise = 0 the reference snapshot's panel obeys
// z_refugees = sum_k beta_k z_k exactly for the planted predictors. Throws
// InputError for invalid parameters, including coefficient vectors that
// cannot be planted without noise.
SyntheticPanel GenerateSyntheticPanel(const SyntheticParams& params);

// Writes snapshot_<date>.csv files, indicators.csv, seniority.csv,
// replay_archive.csv, planted_truth.json and a ready-to-run config.json.
void WriteSyntheticPanel(const SyntheticPanel& panel,
                         const std::filesystem::path& dir);

std::string PlantedTruthJson(const PlantedTruth& truth);

}  // namespace mignow

#endif  // MIGNOW_SYNTHETIC_H_
