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

#include "mignow/synthetic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "mignow/csv.h"
#include "mignow/error.h"
#include "mignow/ingest.h"
#include "mignow/scale.h"

namespace mignow {
namespace {

constexpr std::string_view kHostCountries[] = {
    "AL", "AM", "AT", "AZ", "BA", "BE", "BG", "BY", "CH", "CY", "CZ",
    "DE", "DK", "EE", "ES", "FI", "FR", "GB", "GE", "GR", "HR", "HU",
    "IE", "IS", "IT", "LT", "LU", "LV", "MD", "ME", "MK", "MT", "NL",
    "NO", "PL", "PT", "RO", "RS", "SE", "SI", "SK", "TR", "XK"};
constexpr std::size_t kMaxCountries = std::size(kHostCountries);

// Indicator ranges used for every generated column.
struct Range {
  double lo;
  double hi;
};
constexpr Range kSciRange{300.0, 250000.0};
constexpr Range kDistanceRange{250.0, 3500.0};
constexpr Range kGpiRange{1.1, 2.8};
constexpr Range kGdpRange{5e9, 4.2e12};

// Shares of the educated audience per age bucket, in kAllAgeBuckets order.
constexpr std::array<double, 5> kAgeWeights = {0.15, 0.40, 0.35, 0.05, 0.05};
// Seniority role shares, in kAllSeniorityRoles order.
constexpr std::array<double, kNumSeniorityRoles> kRoleWeights = {
    0.01, 0.02, 0.48, 0.40, 0.03, 0.03, 0.01, 0.005, 0.005, 0.01};

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

double SampleVariance(std::span<const double> x) {
  const double sd = SampleSd(x);
  return sd * sd;
}

std::vector<double> RandomStandardized(Rng& rng, std::size_t n) {
  std::vector<double> g(n);
  for (double& v : g) v = rng.Normal();
  return Standardize(g).values;
}

// Affine map of a standardized column onto [range.lo, range.hi]; the map
// preserves the column's standard scores.
std::vector<double> MapToRange(std::span<const double> z, Range range) {
  const auto [lo_it, hi_it] = std::minmax_element(z.begin(), z.end());
  const double zmin = *lo_it;
  const double span = *hi_it - zmin;
  std::vector<double> raw(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    raw[i] = range.lo + (range.hi - range.lo) * (z[i] - zmin) / span;
  }
  return raw;
}

Range RangeFor(Predictor p) {
  switch (p) {
    case Predictor::kSci: return kSciRange;
    case Predictor::kDistance: return kDistanceRange;
    case Predictor::kGpi: return kGpiRange;
    case Predictor::kGdp: return kGdpRange;
    case Predictor::kLinkedIn: break;
  }
  throw InvariantError("LinkedIn column has no generator range");
}

std::string CellName(Gender g, AgeBucket a) {
  return std::string(GenderLabel(g)) + "/" + std::string(AgeLabel(a));
}

void ValidateParams(const SyntheticParams& p) {
  if (p.n_countries < kMinPanelRows || p.n_countries > kMaxCountries) {
    throw InputError("n_countries must lie in [3, " +
                     std::to_string(kMaxCountries) + "]");
  }
  if (p.beta.empty() || p.beta.size() > kNumPredictors) {
    throw InputError("beta must have between 1 and 5 coefficients");
  }
  for (double b : p.beta) {
    if (!std::isfinite(b)) throw InputError("beta must be finite");
  }
  if (!std::isfinite(p.noise) || p.noise < 0.0) {
    throw InputError("noise must be a finite non-negative number");
  }
  if (p.noise == 0.0) {
    // Without noise the target is an exact combination of unit-variance
    // columns, so beta' R beta = 1 for some correlation matrix R.
    double l1 = 0.0;
    for (double b : p.beta) l1 += std::fabs(b);
    if (l1 <= 1.0 && p.beta.size() > 1) {
      throw InputError(
          "noise-free planting needs sum |beta| > 1 so the standardized "
          "target can have unit variance");
    }
  }
  if (p.dates.empty()) throw InputError("at least one snapshot date required");
  if (!(p.audience_rate > 0.0) || !std::isfinite(p.audience_rate)) {
    throw InputError("audience_rate must be positive");
  }
  if (p.school_set.empty()) throw InputError("school_set must not be empty");
}

// Chooses the common loading `alpha` of the adjuster columns on q-hat so the
// anchor column solved from the planted relation has unit variance.
double SolveAdjusterLoading(std::span<const double> q,
                            std::span<const double> q_hat,
                            const std::vector<std::vector<double>>& e_hat,
                            const std::vector<double>& adjuster_beta,
                            double anchor_beta) {
  const std::size_t n = q.size();
  std::vector<double> residual(n);
  auto f = [&](double alpha) {
    const double ortho = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    for (std::size_t i = 0; i < n; ++i) {
      double w = 0.0;
      for (std::size_t j = 0; j < e_hat.size(); ++j) {
        w += adjuster_beta[j] * (alpha * q_hat[i] + ortho * e_hat[j][i]);
      }
      residual[i] = q[i] - w;
    }
    return SampleVariance(residual) - anchor_beta * anchor_beta;
  };

  constexpr int kGrid = 2000;
  std::optional<std::pair<double, double>> best;
  double prev_alpha = -1.0;
  double prev_f = f(prev_alpha);
  for (int i = 1; i <= kGrid; ++i) {
    const double alpha = -1.0 + 2.0 * i / kGrid;
    const double cur_f = f(alpha);
    if ((prev_f <= 0.0) != (cur_f <= 0.0) || prev_f == 0.0) {
      const double mid = 0.5 * (prev_alpha + alpha);
      if (!best || std::fabs(mid) < std::fabs(0.5 * (best->first + best->second))) {
        best = {prev_alpha, alpha};
      }
    }
    prev_alpha = alpha;
    prev_f = cur_f;
  }
  if (!best) {
    throw InputError(
        "planted coefficients cannot be realized on this draw; change the "
        "seed or the coefficients, or add noise");
  }
  auto [lo, hi] = *best;
  double f_lo = f(lo);
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = f(mid);
    if ((f_mid <= 0.0) == (f_lo <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& s : s_) s = SplitMix64(state);
}

std::uint64_t Rng::Next() {
  const std::uint64_t result = Rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

double Rng::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

double Rng::Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

double Rng::LogUniform(double lo, double hi) {
  return std::exp(Uniform(std::log(lo), std::log(hi)));
}

std::int64_t Rng::UniformInt(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(Next() % span);
}

double Rng::Normal() {
  // Box-Muller; 1 - U keeps the log argument in (0, 1].
  const double u1 = 1.0 - Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<Date> DefaultSnapshotDates() {
  using std::chrono::year, std::chrono::month, std::chrono::day;
  return {Date{year{2023}, month{2}, day{27}}, Date{year{2023}, month{4}, day{28}},
          Date{year{2023}, month{5}, day{5}}, Date{year{2023}, month{5}, day{12}},
          Date{year{2023}, month{5}, day{19}}};
}

SyntheticPanel GenerateSyntheticPanel(const SyntheticParams& params) {
  ValidateParams(params);
  Rng rng(params.seed);
  const std::size_t n = params.n_countries;
  const std::size_t p = params.beta.size();

  std::vector<Date> dates = params.dates;
  std::sort(dates.begin(), dates.end());
  dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
  const Date reference = dates.front();

  SyntheticPanel out;
  PlantedTruth& truth = out.truth;
  truth.params = params;
  truth.params.dates = dates;
  truth.reference_date = reference;
  truth.predictors.assign(kGeneratorPredictors.begin(),
                          kGeneratorPredictors.begin() + static_cast<long>(p));
  for (std::size_t c = 0; c < n; ++c) {
    truth.countries.emplace_back(kHostCountries[c]);
  }

  // Audience and platform draws.
  std::vector<double> latent(n);
  std::vector<std::int64_t> multiplier(n);
  std::vector<std::int64_t> population(n);
  for (std::size_t c = 0; c < n; ++c) {
    const CountryCode& country = truth.countries[c];
    latent[c] = rng.LogUniform(2e3, 1.5e6);
    multiplier[c] = rng.UniformInt(5, 40);
    const auto platform0 = static_cast<std::int64_t>(std::llround(rng.LogUniform(8e4, 2.5e6)));
    population[c] = platform0 * multiplier[c];
    const double audience_growth = rng.Uniform(0.002, 0.012);
    const double platform_growth = rng.Uniform(0.0, 0.01);
    const double base = latent[c] * params.audience_rate /
                        static_cast<double>(multiplier[c]) *
                        std::exp(0.1 * rng.Normal());
    const double female_share = rng.Uniform(0.5, 0.62);
    std::array<double, 5> age_share{};
    double age_total = 0.0;
    for (std::size_t a = 0; a < age_share.size(); ++a) {
      age_share[a] = kAgeWeights[a] * std::exp(0.15 * rng.Normal());
      age_total += age_share[a];
    }

    for (const Date& date : dates) {
      const double weeks =
          static_cast<double>((std::chrono::sys_days{date} -
                               std::chrono::sys_days{reference}).count()) / 7.0;
      const std::int64_t platform =
          date == reference
              ? platform0
              : static_cast<std::int64_t>(std::llround(
                    static_cast<double>(platform0) * std::exp(platform_growth * weeks)));
      out.archive.Record(AudienceQuery{country, {}, {}, {}, {}}, date, platform);
      auto& counts = truth.true_counts[date][country];
      for (Gender g : kAllGenders) {
        const double g_share = g == Gender::kFemale ? female_share : 1.0 - female_share;
        for (std::size_t a = 0; a < kAllAgeBuckets.size(); ++a) {
          double expected = base * g_share * age_share[a] / age_total *
                            std::exp(audience_growth * weeks);
          if (date != reference) expected *= std::exp(0.01 * rng.Normal());
          auto count = static_cast<std::int64_t>(std::llround(expected));
          if (!params.censoring) count = std::max(count, kCensoringFloor);
          counts[CellName(g, kAllAgeBuckets[a])] = count;
          out.archive.Record(
              AudienceQuery{country, g, kAllAgeBuckets[a], params.school_set, {}},
              date, count);
        }
      }
    }
    const auto& ref_counts = truth.true_counts[reference][country];
    for (Gender g : kAllGenders) {
      double gender_total = 0.0;
      for (AgeBucket a : kAllAgeBuckets) gender_total += ref_counts.at(CellName(g, a));
      for (SeniorityRole role : kAllSeniorityRoles) {
        const double expected = gender_total *
                                kRoleWeights[static_cast<std::size_t>(role)] *
                                std::exp(0.2 * rng.Normal());
        auto count = static_cast<std::int64_t>(std::llround(expected));
        if (!params.censoring) count = std::max(count, kCensoringFloor);
        out.archive.Record(AudienceQuery{country, g, {}, params.school_set, role},
                           reference, count);
      }
    }
  }

  for (const Date& date : dates) {
    out.snapshots.push_back(
        CollectSnapshot(out.archive, truth.countries, params.school_set, date));
  }
  out.seniority = CollectSeniority(out.archive, truth.countries,
                                   params.school_set, reference);

  // The LinkedIn column exactly as the pipeline will compute it.
  std::map<CountryCode, std::int64_t> populations;
  for (std::size_t c = 0; c < n; ++c) populations[truth.countries[c]] = population[c];
  const Snapshot& ref_snapshot = out.snapshots.front();
  const auto totals =
      TotalsByCountry(ref_snapshot, Penetration(ref_snapshot.platform_totals, populations));
  std::vector<double> linkedin(n);
  for (std::size_t c = 0; c < n; ++c) linkedin[c] = totals.at(truth.countries[c]);
  std::vector<double> z_linkedin(n, 0.0);
  try {
    z_linkedin = Standardize(linkedin).values;
  } catch (const Error&) {
    truth.linkedin_degenerate = true;
  }

  std::vector<double> noise = RandomStandardized(rng, n);
  for (double& e : noise) e *= params.noise;
  truth.noise_realization = noise;

  // Standardized indicator columns, indexed by generator predictor.
  std::array<std::optional<std::vector<double>>, kNumPredictors> z_columns;
  std::vector<std::int64_t> refugees(n);
  const double beta_linkedin = params.beta[0];

  if (p >= 3) {
    truth.construction = "anchor";
    std::vector<double> y(n);
    for (std::size_t c = 0; c < n; ++c) {
      refugees[c] = std::max<std::int64_t>(1, std::llround(latent[c]));
      y[c] = static_cast<double>(refugees[c]);
    }
    const std::vector<double> z_y = Standardize(y).values;

    std::size_t anchor = 1;
    for (std::size_t k = 2; k < p; ++k) {
      if (std::fabs(params.beta[k]) > std::fabs(params.beta[anchor])) anchor = k;
    }
    if (params.beta[anchor] == 0.0) {
      throw InputError("at least one indicator coefficient must be non-zero");
    }
    std::vector<double> q(n);
    for (std::size_t c = 0; c < n; ++c) {
      q[c] = z_y[c] - noise[c] - beta_linkedin * z_linkedin[c];
    }
    const double q_sd = SampleSd(q);
    std::vector<double> q_hat = q_sd > 1e-12 ? q : RandomStandardized(rng, n);
    const double q_hat_sd = SampleSd(q_hat);
    for (double& v : q_hat) v /= q_hat_sd;

    std::vector<std::size_t> adjusters;
    std::vector<double> adjuster_beta;
    std::vector<std::vector<double>> e_hat;
    for (std::size_t k = 1; k < p; ++k) {
      if (k == anchor) continue;
      std::vector<double> g(n);
      for (double& v : g) v = rng.Normal();
      const double g_mean = Mean(g);
      for (double& v : g) v -= g_mean;
      const double proj = std::inner_product(g.begin(), g.end(), q_hat.begin(), 0.0) /
                          std::inner_product(q_hat.begin(), q_hat.end(), q_hat.begin(), 0.0);
      for (std::size_t c = 0; c < n; ++c) g[c] -= proj * q_hat[c];
      e_hat.push_back(Standardize(g).values);
      adjusters.push_back(k);
      adjuster_beta.push_back(params.beta[k]);
    }
    const double alpha = SolveAdjusterLoading(q, q_hat, e_hat, adjuster_beta,
                                              params.beta[anchor]);
    const double ortho = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    std::vector<double> z_anchor = q;
    for (std::size_t j = 0; j < adjusters.size(); ++j) {
      std::vector<double> z(n);
      for (std::size_t c = 0; c < n; ++c) {
        z[c] = alpha * q_hat[c] + ortho * e_hat[j][c];
        z_anchor[c] -= adjuster_beta[j] * z[c];
      }
      z_columns[adjusters[j]] = std::move(z);
    }
    for (double& v : z_anchor) v /= params.beta[anchor];
    z_columns[anchor] = std::move(z_anchor);
  } else {
    std::vector<double> z_second;
    if (p == 2) {
      z_second = RandomStandardized(rng, n);
      z_columns[1] = z_second;
    }
    if (params.noise == 0.0) {
      if (p == 2) {
        throw InputError(
            "noise-free planting needs at least three predictors, or the "
            "LinkedIn predictor alone with |beta| = 1");
      }
      if (std::fabs(beta_linkedin) != 1.0 || truth.linkedin_degenerate) {
        throw InputError(
            "noise-free single-predictor planting needs |beta| = 1 and a "
            "non-constant LinkedIn column");
      }
      // Scaled totals equal raw sums times the integer multiplier, so the
      // refugee counts can be an exact integer affine function of them.
      truth.construction = "affine";
      std::vector<std::int64_t> exact(n, 0);
      for (std::size_t c = 0; c < n; ++c) {
        std::int64_t raw = 0;
        for (const AudienceCell& cell : ref_snapshot.cells) {
          if (cell.country == truth.countries[c]) raw += cell.count;
        }
        exact[c] = raw * multiplier[c];
      }
      const std::int64_t top = *std::max_element(exact.begin(), exact.end());
      for (std::size_t c = 0; c < n; ++c) {
        refugees[c] = beta_linkedin > 0 ? 1000 + exact[c] : 1000 + top - exact[c];
      }
    } else {
      truth.construction = "response";
      std::vector<double> eta(n);
      for (std::size_t c = 0; c < n; ++c) {
        eta[c] = beta_linkedin * z_linkedin[c] + noise[c] +
                 (p == 2 ? params.beta[1] * z_second[c] : 0.0);
      }
      const double lowest = *std::min_element(eta.begin(), eta.end());
      for (std::size_t c = 0; c < n; ++c) {
        refugees[c] = std::llround(2000.0 + 1e5 * (eta[c] - lowest));
      }
    }
  }
  truth.refugees = refugees;

  std::array<std::vector<double>, kNumPredictors> raw_columns;
  for (std::size_t k = 1; k < kNumPredictors; ++k) {
    const Range range = RangeFor(kGeneratorPredictors[k]);
    if (z_columns[k]) {
      raw_columns[k] = MapToRange(*z_columns[k], range);
    } else {
      raw_columns[k].resize(n);
      for (double& v : raw_columns[k]) {
        v = kGeneratorPredictors[k] == Predictor::kGdp
                ? rng.LogUniform(range.lo, range.hi)
                : rng.Uniform(range.lo, range.hi);
      }
    }
  }

  using std::chrono::year, std::chrono::month, std::chrono::day;
  const Date as_of{year{2023}, month{3}, day{13}};
  for (std::size_t c = 0; c < n; ++c) {
    CountryIndicators ind;
    ind.country = truth.countries[c];
    ind.wb_population = population[c];
    ind.sci = raw_columns[1][c];
    ind.distance_km = raw_columns[2][c];
    ind.gpi = raw_columns[3][c];
    ind.gdp_usd = raw_columns[4][c];
    ind.unhcr_refugees = refugees[c];
    ind.unhcr_as_of = as_of;
    out.indicators.push_back(ind);
  }
  return out;
}

std::string PlantedTruthJson(const PlantedTruth& truth) {
  using nlohmann::json;
  json j;
  j["seed"] = truth.params.seed;
  j["n_countries"] = truth.params.n_countries;
  j["beta"] = truth.params.beta;
  j["noise_scale"] = truth.params.noise;
  j["censoring"] = truth.params.censoring;
  j["school_set"] = truth.params.school_set;
  j["audience_rate"] = truth.params.audience_rate;
  j["reference_date"] = FormatDate(truth.reference_date);
  j["construction"] = truth.construction;
  j["linkedin_degenerate"] = truth.linkedin_degenerate;
  json dates = json::array();
  for (const Date& d : truth.params.dates) dates.push_back(FormatDate(d));
  j["dates"] = dates;
  json predictors = json::array();
  for (Predictor p : truth.predictors) predictors.push_back(PredictorName(p));
  j["predictors"] = predictors;
  json noise = json::object();
  json refugees = json::object();
  for (std::size_t c = 0; c < truth.countries.size(); ++c) {
    noise[truth.countries[c].str()] = truth.noise_realization[c];
    refugees[truth.countries[c].str()] = truth.refugees[c];
  }
  j["noise_realization"] = noise;
  j["refugees"] = refugees;
  json counts = json::object();
  for (const auto& [date, by_country] : truth.true_counts) {
    json d = json::object();
    for (const auto& [country, cells] : by_country) {
      json cj = json::object();
      for (const auto& [cell, count] : cells) cj[cell] = count;
      d[country.str()] = cj;
    }
    counts[FormatDate(date)] = d;
  }
  j["true_counts"] = counts;
  return j.dump(2) + "\n";
}

void WriteSyntheticPanel(const SyntheticPanel& panel,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json config;
  nlohmann::json snapshots = nlohmann::json::array();
  for (const Snapshot& s : panel.snapshots) {
    const std::string name = "snapshot_" + FormatDate(s.date) + ".csv";
    WriteSnapshotFile(dir / name, s);
    snapshots.push_back(name);
  }
  WriteFile(dir / "indicators.csv", IndicatorsToCsv(panel.indicators));
  WriteFile(dir / "seniority.csv", SeniorityToCsv(panel.seniority));
  WriteFile(dir / "replay_archive.csv", panel.archive.ToCsv());
  WriteFile(dir / "planted_truth.json", PlantedTruthJson(panel.truth));
  config["snapshots"] = snapshots;
  config["indicators"] = "indicators.csv";
  config["seniority"] = "seniority.csv";
  config["output_dir"] = "report";
  config["schema"] = "default";
  config["shap_model"] = "Model 14";
  WriteFile(dir / "config.json", config.dump(2) + "\n");
}

}  // namespace mignow
