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

#include "mignow/attribution.h"

#include <algorithm>
#include <cmath>
#include <bit>
#include <cstdint>
#include <numeric>

#include "mignow/error.h"

namespace mignow {
namespace {

void CheckWidth(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.coefficients.size() ||
      model.means.size() != model.coefficients.size()) {
    throw InputError("attribution: expected " +
                     std::to_string(model.coefficients.size()) +
                     " feature values, got " + std::to_string(x.size()));
  }
}

}  // namespace

LinearModel LinearModel::FromFit(const FitResult& fit) {
  return LinearModel{fit.intercept, fit.coefficients, fit.design_means};
}

double LinearModel::Predict(std::span<const double> x) const {
  double y = intercept;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    y += coefficients[j] * x[j];
  }
  return y;
}

double LinearModel::BaseValue() const { return Predict(means); }

std::vector<double> ShapLinear(const LinearModel& model,
                               std::span<const double> x) {
  CheckWidth(model, x);
  std::vector<double> phi(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    phi[j] = model.coefficients[j] * (x[j] - model.means[j]);
  }
  return phi;
}

std::vector<double> ShapBruteForce(const LinearModel& model,
                                   std::span<const double> x) {
  CheckWidth(model, x);
  const std::size_t p = x.size();
  if (p > kMaxBruteForceFeatures) {
    throw InputError("brute-force Shapley limited to " +
                     std::to_string(kMaxBruteForceFeatures) + " features");
  }
  // v(S) for every coalition bitmask.
  const std::uint32_t num_coalitions = 1u << p;
  std::vector<double> value(num_coalitions);
  for (std::uint32_t s = 0; s < num_coalitions; ++s) {
    double v = model.intercept;
    for (std::size_t j = 0; j < p; ++j) {
      v += model.coefficients[j] * ((s >> j) & 1u ? x[j] : model.means[j]);
    }
    value[s] = v;
  }
  // weight[k] = k! (p - k - 1)! / p!
  std::vector<double> weight(p);
  for (std::size_t k = 0; k < p; ++k) {
    double w = 1.0 / static_cast<double>(p);
    // 1 / (p * C(p-1, k))
    for (std::size_t i = 1; i <= k; ++i) {
      w *= static_cast<double>(i) / static_cast<double>(p - i);
    }
    weight[k] = w;
  }
  std::vector<double> phi(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    const std::uint32_t bit = 1u << j;
    for (std::uint32_t s = 0; s < num_coalitions; ++s) {
      if (s & bit) continue;
      const auto size = static_cast<std::size_t>(std::popcount(s));
      phi[j] += weight[size] * (value[s | bit] - value[s]);
    }
  }
  return phi;
}

ShapResult ShapReport(const FitResult& fit, const CountryPanel& panel) {
  const LinearModel model = LinearModel::FromFit(fit);
  ShapResult result;
  result.features = fit.spec.predictors;
  result.base_value = model.BaseValue();

  const std::size_t p = result.features.size();
  std::vector<double> abs_sum(p, 0.0);
  for (const PanelRow& row : panel.rows) {
    CountryAttribution attr;
    attr.country = row.country;
    attr.feature_values = DesignRow(fit, row);
    attr.phi = ShapLinear(model, attr.feature_values);
    attr.prediction = model.Predict(attr.feature_values);
    for (std::size_t j = 0; j < p; ++j) abs_sum[j] += std::fabs(attr.phi[j]);
    result.countries.push_back(std::move(attr));
  }
  if (result.countries.empty()) {
    throw InputError("attribution report needs at least one panel row");
  }

  const double n = static_cast<double>(result.countries.size());
  for (std::size_t j = 0; j < p; ++j) {
    result.importance.push_back({result.features[j], abs_sum[j] / n, 0});
  }
  std::stable_sort(result.importance.begin(), result.importance.end(),
                   [](const FeatureImportance& a, const FeatureImportance& b) {
                     return a.mean_abs > b.mean_abs;
                   });
  for (std::size_t r = 0; r < result.importance.size(); ++r) {
    result.importance[r].rank = r + 1;
  }
  return result;
}

}  // namespace mignow
