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

#include "mignow/stats.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "mignow/special_functions.h"

namespace mignow {
namespace {

// Relative threshold below which a pivot of R counts as zero.
constexpr double kRankTolerance = 1e-10;

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

double Mean(std::span<const double> x) {
  if (x.empty()) throw InputError("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

double SampleSd(std::span<const double> x) {
  if (x.size() < 2) throw InputError("standard deviation needs two values");
  const double m = Mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

StandardizedVector Standardize(std::span<const double> x) {
  if (x.size() < 2) throw InputError("standardize needs at least two values");
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericalError("standardize: non-finite value");
  }
  StandardizedVector out;
  out.mean = Mean(x);
  out.sd = SampleSd(x);
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::fabs(v));
  if (!(out.sd > 1e-14 * scale)) {
    throw NumericalError("standardize: zero variance");
  }
  out.values.reserve(x.size());
  for (double v : x) out.values.push_back((v - out.mean) / out.sd);
  return out;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("pearson: length mismatch");
  if (x.size() < 2) throw InputError("pearson: needs at least two values");
  const double mx = Mean(x);
  const double my = Mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw NumericalError("pearson: constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::string_view PredictorName(Predictor p) {
  switch (p) {
    case Predictor::kLinkedIn: return "LinkedIn estimates";
    case Predictor::kSci: return "SCI";
    case Predictor::kDistance: return "distance";
    case Predictor::kGpi: return "GPI";
    case Predictor::kGdp: return "GDP";
  }
  return "";
}

std::optional<Predictor> ParsePredictor(std::string_view text) {
  static constexpr std::pair<std::string_view, Predictor> kIds[] = {
      {"linkedin", Predictor::kLinkedIn}, {"sci", Predictor::kSci},
      {"distance", Predictor::kDistance}, {"gpi", Predictor::kGpi},
      {"gdp", Predictor::kGdp}};
  const std::string lowered = Lower(text);
  for (const auto& [id, p] : kIds) {
    if (lowered == id || lowered == Lower(PredictorName(p))) return p;
  }
  return std::nullopt;
}

void ValidateModelSpec(const ModelSpec& spec) {
  if (spec.predictors.empty()) {
    throw InputError("model '" + spec.name + "' has no predictors");
  }
  std::set<Predictor> seen(spec.predictors.begin(), spec.predictors.end());
  if (seen.size() != spec.predictors.size()) {
    throw InputError("model '" + spec.name + "' repeats a predictor");
  }
}

std::vector<ModelSpec> DefaultSchema() {
  using P = Predictor;
  const std::vector<std::vector<P>> sets = {
      {P::kLinkedIn},
      {P::kSci},
      {P::kDistance},
      {P::kGpi},
      {P::kGdp},
      {P::kLinkedIn, P::kSci},
      {P::kLinkedIn, P::kDistance},
      {P::kLinkedIn, P::kGpi},
      {P::kLinkedIn, P::kGdp},
      {P::kLinkedIn, P::kSci, P::kDistance},
      {P::kLinkedIn, P::kSci, P::kGpi},
      {P::kLinkedIn, P::kSci, P::kGdp},
      {P::kLinkedIn, P::kSci, P::kGdp, P::kGpi},
      {P::kLinkedIn, P::kSci, P::kDistance, P::kGpi},
  };
  std::vector<ModelSpec> specs;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    specs.push_back({"Model " + std::to_string(i + 1), sets[i]});
  }
  return specs;
}

Stars StarsFor(double p_value) {
  if (p_value <= 0.001) return Stars::kThree;
  if (p_value <= 0.01) return Stars::kTwo;
  if (p_value <= 0.05) return Stars::kOne;
  return Stars::kNone;
}

std::string_view StarsLabel(Stars stars) {
  switch (stars) {
    case Stars::kNone: return "";
    case Stars::kOne: return "*";
    case Stars::kTwo: return "**";
    case Stars::kThree: return "***";
  }
  return "";
}

double AdjustedR2(double r2, std::size_t n, std::size_t p) {
  return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) /
                   static_cast<double>(n - p - 1);
}

double FStatistic(double r2, std::size_t n, std::size_t p) {
  if (r2 >= 1.0) return std::numeric_limits<double>::infinity();
  return (r2 / static_cast<double>(p)) /
         ((1.0 - r2) / static_cast<double>(n - p - 1));
}

double R2FromF(double f, std::size_t n, std::size_t p) {
  const double num = f * static_cast<double>(p);
  return num / (num + static_cast<double>(n - p - 1));
}

LinearFit FitLeastSquares(const std::vector<std::vector<double>>& columns,
                          std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t p = columns.size();
  const std::size_t k = p + 1;
  if (n <= k) {
    throw InputError("least squares needs n > p + 1 (n=" + std::to_string(n) +
                     ", p=" + std::to_string(p) + ")");
  }
  for (const auto& col : columns) {
    if (col.size() != n) throw InputError("least squares: ragged design");
  }

  // Column-major design [1, x_1, ..., x_p]; reduced in place to R.
  std::vector<double> a(n * k);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[j * n + i]; };
  for (std::size_t i = 0; i < n; ++i) {
    at(i, 0) = 1.0;
    for (std::size_t j = 0; j < p; ++j) at(i, j + 1) = columns[j][i];
  }
  std::vector<double> qty(y.begin(), y.end());

  double max_norm = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += at(i, j) * at(i, j);
    max_norm = std::max(max_norm, std::sqrt(s));
  }

  std::vector<double> v(n);
  for (std::size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < n; ++i) norm += at(i, j) * at(i, j);
    norm = std::sqrt(norm);
    if (norm <= kRankTolerance * max_norm) {
      throw NumericalError(
          j == 0 ? "rank-deficient design"
                 : "rank-deficient design: predictor " + std::to_string(j) +
                       " is collinear with earlier columns");
    }
    const double alpha = at(j, j) > 0 ? -norm : norm;
    for (std::size_t i = j; i < n; ++i) v[i] = at(i, j);
    v[j] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) vnorm2 += v[i] * v[i];
    auto reflect = [&](auto&& elem) {
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += v[i] * elem(i);
      const double scale = 2.0 * dot / vnorm2;
      for (std::size_t i = j; i < n; ++i) elem(i) -= scale * v[i];
    };
    for (std::size_t c = j; c < k; ++c) {
      reflect([&](std::size_t i) -> double& { return at(i, c); });
    }
    reflect([&](std::size_t i) -> double& { return qty[i]; });
  }

  // Solve R beta = Q'y and form R^{-1} for the covariance diagonal.
  std::vector<double> beta(k);
  for (std::size_t jj = k; jj-- > 0;) {
    double s = qty[jj];
    for (std::size_t c = jj + 1; c < k; ++c) s -= at(jj, c) * beta[c];
    beta[jj] = s / at(jj, jj);
  }
  std::vector<double> rinv(k * k, 0.0);  // Row-major upper triangular.
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t row = col + 1; row-- > 0;) {
      double s = row == col ? 1.0 : 0.0;
      for (std::size_t c = row + 1; c <= col; ++c) s -= at(row, c) * rinv[c * k + col];
      rinv[row * k + col] = s / at(row, row);
    }
  }

  LinearFit fit;
  fit.residuals.resize(n);
  double sse = 0.0;
  const double y_mean = Mean(y);
  double sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pred = beta[0];
    for (std::size_t j = 0; j < p; ++j) pred += beta[j + 1] * columns[j][i];
    fit.residuals[i] = y[i] - pred;
    sse += fit.residuals[i] * fit.residuals[i];
    sst += (y[i] - y_mean) * (y[i] - y_mean);
  }
  if (sst == 0.0) throw NumericalError("least squares: constant target");

  const std::size_t dfe = n - k;
  const double sigma2 = sse / static_cast<double>(dfe);
  std::vector<double> se(k);
  for (std::size_t row = 0; row < k; ++row) {
    double s = 0.0;
    for (std::size_t c = row; c < k; ++c) s += rinv[row * k + c] * rinv[row * k + c];
    se[row] = std::sqrt(sigma2 * s);
  }

  fit.intercept = beta[0];
  fit.intercept_se = se[0];
  for (std::size_t j = 0; j < p; ++j) {
    const double b = beta[j + 1];
    const double s = se[j + 1];
    double t = 0.0;
    if (s > 0.0) {
      t = b / s;
    } else if (b != 0.0) {
      t = std::copysign(std::numeric_limits<double>::infinity(), b);
    }
    fit.coefficients.push_back(b);
    fit.std_errors.push_back(s);
    fit.t_stats.push_back(t);
    fit.p_values.push_back(StudentTTwoSidedP(t, static_cast<double>(dfe)));
  }
  fit.r2 = std::clamp(1.0 - sse / sst, 0.0, 1.0);
  fit.r2_adjusted = AdjustedR2(fit.r2, n, p);
  fit.f_stat = FStatistic(fit.r2, n, p);
  fit.f_p_value = FSurvival(fit.f_stat, static_cast<double>(p),
                            static_cast<double>(dfe));
  return fit;
}

double PredictorValue(const PanelRow& row, Predictor p) {
  switch (p) {
    case Predictor::kLinkedIn: return row.scaled_estimate;
    case Predictor::kSci: return row.sci;
    case Predictor::kDistance: return row.distance_km;
    case Predictor::kGpi: return row.gpi;
    case Predictor::kGdp: return row.gdp_usd;
  }
  return 0.0;
}

namespace {

double TransformedValue(const PanelRow& row, Predictor p, bool log_linkedin) {
  const double raw = PredictorValue(row, p);
  return (log_linkedin && p == Predictor::kLinkedIn) ? std::log1p(raw) : raw;
}

}  // namespace

FitResult OlsFit(const ModelSpec& spec, const CountryPanel& panel,
                 const OlsOptions& options) {
  ValidateModelSpec(spec);
  const std::size_t n = panel.rows.size();
  const std::size_t p = spec.predictors.size();
  if (n <= p + 1) {
    throw InputError("model '" + spec.name + "' needs n > p + 1 (n=" +
                     std::to_string(n) + ", p=" + std::to_string(p) + ")");
  }

  FitResult result;
  result.spec = spec;
  result.n = n;
  result.log_linkedin = options.log_linkedin;

  std::vector<double> target;
  target.reserve(n);
  for (const PanelRow& row : panel.rows) {
    result.countries.push_back(row.country);
    target.push_back(static_cast<double>(row.unhcr_refugees));
  }
  StandardizedVector z_target;
  try {
    z_target = Standardize(target);
  } catch (const Error& e) {
    throw Error(e.kind(), "target (UNHCR refugees): " + std::string(e.what()));
  }
  result.target_mean = z_target.mean;
  result.target_sd = z_target.sd;

  std::vector<std::vector<double>> columns;
  for (Predictor pred : spec.predictors) {
    std::vector<double> raw;
    raw.reserve(n);
    for (const PanelRow& row : panel.rows) {
      raw.push_back(TransformedValue(row, pred, options.log_linkedin));
    }
    StandardizedVector z;
    try {
      z = Standardize(raw);
    } catch (const Error& e) {
      throw Error(e.kind(),
                  std::string(PredictorName(pred)) + ": " + e.what());
    }
    result.predictor_means.push_back(z.mean);
    result.predictor_sds.push_back(z.sd);
    result.design_means.push_back(Mean(z.values));
    columns.push_back(std::move(z.values));
  }

  LinearFit fit;
  try {
    fit = FitLeastSquares(columns, z_target.values);
  } catch (const Error& e) {
    std::string names;
    for (Predictor pred : spec.predictors) {
      if (!names.empty()) names += ", ";
      names += PredictorName(pred);
    }
    throw Error(e.kind(), std::string(e.what()) + " [" + names + "]");
  }
  result.coefficients = fit.coefficients;
  result.std_errors = fit.std_errors;
  result.t_stats = fit.t_stats;
  result.p_values = fit.p_values;
  for (double pv : fit.p_values) result.stars.push_back(StarsFor(pv));
  result.intercept = fit.intercept;
  result.r2 = fit.r2;
  result.r2_adjusted = fit.r2_adjusted;
  result.f_stat = fit.f_stat;
  result.f_p_value = fit.f_p_value;
  result.f_stars = StarsFor(fit.f_p_value);
  result.residuals = std::move(fit.residuals);
  return result;
}

std::vector<double> DesignRow(const FitResult& fit, const PanelRow& row) {
  std::vector<double> x;
  x.reserve(fit.spec.predictors.size());
  for (std::size_t j = 0; j < fit.spec.predictors.size(); ++j) {
    const double raw =
        TransformedValue(row, fit.spec.predictors[j], fit.log_linkedin);
    x.push_back((raw - fit.predictor_means[j]) / fit.predictor_sds[j]);
  }
  return x;
}

std::vector<FitOutcome> RunSchema(const CountryPanel& panel,
                                  const std::vector<ModelSpec>& specs,
                                  const OlsOptions& options) {
  std::vector<FitOutcome> outcomes;
  outcomes.reserve(specs.size());
  for (const ModelSpec& spec : specs) {
    FitOutcome outcome{spec, std::nullopt, std::nullopt, {}};
    try {
      outcome.result = OlsFit(spec, panel, options);
    } catch (const Error& e) {
      outcome.error_kind = e.kind();
      outcome.error = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

std::vector<double> AverageRanks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    // Positions i..j (0-based) share rank ((i+1) + (j+1)) / 2.
    const double rank = 0.5 * static_cast<double>(i + j + 2);
    for (std::size_t m = i; m <= j; ++m) ranks[order[m]] = rank;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult Spearman(std::span<const double> x, std::span<const double> y,
                        const SpearmanOptions& options) {
  if (x.size() != y.size()) {
    throw InputError("spearman: length mismatch (" + std::to_string(x.size()) +
                     " vs " + std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 4) throw InputError("spearman: needs at least 4 pairs");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw NumericalError("spearman: non-finite value");
    }
  }
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  auto constant = [](const std::vector<double>& r) {
    return std::all_of(r.begin(), r.end(), [&](double v) { return v == r[0]; });
  };
  if (constant(rx) || constant(ry)) {
    throw NumericalError("spearman: constant input has no rank correlation");
  }

  SpearmanResult result;
  result.n = n;
  result.rho = Pearson(rx, ry);

  if (options.exact_permutation) {
    if (n > kMaxExactPermutationN) {
      throw InputError("spearman: exact permutation p-value limited to n <= " +
                       std::to_string(kMaxExactPermutationN));
    }
    std::vector<double> perm = ry;
    std::sort(perm.begin(), perm.end());
    const double observed = std::fabs(result.rho);
    std::size_t total = 0, extreme = 0;
    do {
      ++total;
      if (std::fabs(Pearson(rx, perm)) >= observed - 1e-12) ++extreme;
    } while (std::next_permutation(perm.begin(), perm.end()));
    result.p_value = static_cast<double>(extreme) / static_cast<double>(total);
    return result;
  }

  const double one_minus = 1.0 - result.rho * result.rho;
  if (one_minus <= 0.0) {
    result.p_value = 0.0;
  } else {
    const double df = static_cast<double>(n - 2);
    const double t = result.rho * std::sqrt(df / one_minus);
    result.p_value = StudentTTwoSidedP(t, df);
  }
  return result;
}

}  // namespace mignow
