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

#ifndef MIGNOW_STATS_H_
#define MIGNOW_STATS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mignow/datamodel.h"
#include "mignow/error.h"

namespace mignow {

// Standard score with the sample (n - 1) standard deviation.
struct StandardizedVector {
  std::vector<double> values;
  double mean = 0.0;
  double sd = 0.0;
};

// Throws InputError for fewer than two values and NumericalError for zero
// variance.
StandardizedVector Standardize(std::span<const double> x);

double Mean(std::span<const double> x);
double SampleSd(std::span<const double> x);

// Pearson correlation. Throws NumericalError if either input is constant.
double Pearson(std::span<const double> x, std::span<const double> y);

enum class Predictor { kLinkedIn, kSci, kDistance, kGpi, kGdp };
inline constexpr std::size_t kNumPredictors = 5;

// Display names as they appear in the model schema table:
// "LinkedIn estimates", "SCI", "distance", "GPI", "GDP".
std::string_view PredictorName(Predictor p);
// Accepts display names and the short ids linkedin/sci/distance/gpi/gdp.
std::optional<Predictor> ParsePredictor(std::string_view text);

struct ModelSpec {
  std::string name;
  std::vector<Predictor> predictors;
};

// Throws InputError for an empty or duplicated predictor list.
void ValidateModelSpec(const ModelSpec& spec);

// Models 1-5 single predictor; 6-9 LinkedIn plus one; 10-12 LinkedIn, SCI
// plus one; 13 LinkedIn, SCI, GDP, GPI; 14 LinkedIn, SCI, distance, GPI.
std::vector<ModelSpec> DefaultSchema();

enum class Stars { kNone, kOne, kTwo, kThree };

// *** p <= 0.001, ** p <= 0.01, * p <= 0.05.
Stars StarsFor(double p_value);
std::string_view StarsLabel(Stars stars);

// Standard OLS summary formulas shared by the fitter and the audit tools.
double AdjustedR2(double r2, std::size_t n, std::size_t p);
double FStatistic(double r2, std::size_t n, std::size_t p);
// Inverts FStatistic: the r2 implied by a reported F.
double R2FromF(double f, std::size_t n, std::size_t p);

// Least-squares fit of y on [1, columns...] by Householder QR.
struct LinearFit {
  double intercept = 0.0;
  double intercept_se = 0.0;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_stats;
  std::vector<double> p_values;
  std::vector<double> residuals;
  double r2 = 0.0;
  double r2_adjusted = 0.0;
  double f_stat = 0.0;
  double f_p_value = 1.0;
};

// Throws InputError unless n > p + 1 and NumericalError when the design is
// rank deficient.
LinearFit FitLeastSquares(const std::vector<std::vector<double>>& columns,
                          std::span<const double> y);

struct OlsOptions {
  bool log_linkedin = false;  // log1p-transform the scaled estimates first.
};

struct FitResult {
  ModelSpec spec;
  std::size_t n = 0;
  std::vector<CountryCode> countries;  // Row order of the training panel.

  std::vector<double> coefficients;  // Standardized, in spec order.
  std::vector<double> std_errors;
  std::vector<double> t_stats;
  std::vector<double> p_values;
  std::vector<Stars> stars;
  double intercept = 0.0;
  double r2 = 0.0;
  double r2_adjusted = 0.0;
  double f_stat = 0.0;
  double f_p_value = 1.0;
  Stars f_stars = Stars::kNone;

  // Raw-column standardization parameters (after the optional log).
  std::vector<double> predictor_means;
  std::vector<double> predictor_sds;
  double target_mean = 0.0;
  double target_sd = 0.0;
  bool log_linkedin = false;

  // Training means of the standardized design columns, used as the
  // attribution baseline.
  std::vector<double> design_means;
  std::vector<double> residuals;
};

// Raw predictor value of a panel row (before any transform).
double PredictorValue(const PanelRow& row, Predictor p);

// Standardizes target and predictors, then fits by least squares.
FitResult OlsFit(const ModelSpec& spec, const CountryPanel& panel,
                 const OlsOptions& options = {});

// Standardized feature vector of `row` under the fit's training
// standardization, in spec order.
std::vector<double> DesignRow(const FitResult& fit, const PanelRow& row);

struct FitOutcome {
  ModelSpec spec;
  std::optional<FitResult> result;
  std::optional<ErrorKind> error_kind;
  std::string error;
};

// Fits every spec on the same panel; a failing spec is recorded in its
// outcome and does not stop the batch.
std::vector<FitOutcome> RunSchema(const CountryPanel& panel,
                                  const std::vector<ModelSpec>& specs,
                                  const OlsOptions& options = {});

// Ranks starting at 1; tied values share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> x);

struct SpearmanOptions {
  // Exact two-sided permutation p-value; only allowed for n <= 10.
  bool exact_permutation = false;
};

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Pearson correlation of average ranks. The p-value uses the t
// approximation with n - 2 degrees of freedom; |rho| = 1 gives p = 0.
SpearmanResult Spearman(std::span<const double> x, std::span<const double> y,
                        const SpearmanOptions& options = {});

inline constexpr std::size_t kMaxExactPermutationN = 10;

}  // namespace mignow

#endif  // MIGNOW_STATS_H_
