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

#ifndef MIGNOW_ATTRIBUTION_H_
#define MIGNOW_ATTRIBUTION_H_

#include <span>
#include <vector>

#include "mignow/datamodel.h"
#include "mignow/stats.h"

namespace mignow {

// Linear model f(x) = intercept + sum_j beta_j x_j with the training means
// of its inputs. Shapley values use the interventional value function:
// features outside a coalition are held at their means.
struct LinearModel {
  double intercept = 0.0;
  std::vector<double> coefficients;
  std::vector<double> means;

  static LinearModel FromFit(const FitResult& fit);

  double Predict(std::span<const double> x) const;
  // Prediction at the feature means.
  double BaseValue() const;
};

// phi_j = beta_j * (x_j - mean_j). Throws InputError when x does not carry
// one value per coefficient.
std::vector<double> ShapLinear(const LinearModel& model,
                               std::span<const double> x);

inline constexpr std::size_t kMaxBruteForceFeatures = 20;

// Exact Shapley values by enumerating all 2^p coalitions. Used to check
// ShapLinear. Throws InputError for p > kMaxBruteForceFeatures.
std::vector<double> ShapBruteForce(const LinearModel& model,
                                   std::span<const double> x);

struct CountryAttribution {
  CountryCode country;
  std::vector<double> phi;             // Spec order.
  std::vector<double> feature_values;  // Standardized inputs.
  double prediction = 0.0;
};

struct FeatureImportance {
  Predictor feature;
  double mean_abs = 0.0;
  std::size_t rank = 0;  // 1 = largest mean |phi|.
};

struct ShapResult {
  std::vector<Predictor> features;  // Spec order.
  double base_value = 0.0;
  std::vector<CountryAttribution> countries;  // Panel row order.
  // Descending mean |phi|; ties keep spec order.
  std::vector<FeatureImportance> importance;
};

// Attributions for every panel row, standardized with the fit's training
// parameters.
ShapResult ShapReport(const FitResult& fit, const CountryPanel& panel);

}  // namespace mignow

#endif  // MIGNOW_ATTRIBUTION_H_
