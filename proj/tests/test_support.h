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

// Helpers shared by the test binaries.

#ifndef MIGNOW_TESTS_TEST_SUPPORT_H_
#define MIGNOW_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "mignow/datamodel.h"
#include "mignow/synthetic.h"

namespace mignow::testing {

// "AA", "AB", ... for synthetic panels that do not need real countries.
inline CountryCode CodeAt(std::size_t i) {
  const char code[3] = {static_cast<char>('A' + (i / 26) % 26),
                        static_cast<char>('A' + i % 26), '\0'};
  return CountryCode(code);
}

inline Date Day(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

// Panel with independent log-uniform columns; every row is complete.
inline CountryPanel RandomPanel(std::size_t n, Rng& rng) {
  CountryPanel panel;
  for (std::size_t i = 0; i < n; ++i) {
    PanelRow row;
    row.country = CodeAt(i);
    row.scaled_estimate = rng.LogUniform(1e3, 5e5);
    row.sci = rng.LogUniform(300, 250000);
    row.distance_km = rng.Uniform(250, 3500);
    row.gpi = rng.Uniform(1.1, 2.8);
    row.gdp_usd = rng.LogUniform(5e9, 4.2e12);
    row.unhcr_refugees = rng.UniformInt(1000, 1500000);
    panel.rows.push_back(row);
  }
  return panel;
}

// Adaptive Simpson quadrature.
inline double Integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
  std::function<double(double, double, double, double, double, double, int)>
      step = [&](double lo, double hi, double flo, double fmid, double fhi,
                 double whole, int depth) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
        const double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
        if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol) {
          return left + right + (left + right - whole) / 15;
        }
        return step(lo, mid, flo, flm, fmid, left, depth - 1) +
               step(mid, hi, fmid, frm, fhi, right, depth - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return step(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), 60);
}

// Student t cdf by integrating the density from 0.
inline double TCdfByQuadrature(double t, double df) {
  const double log_norm = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                          0.5 * std::log(df * std::numbers::pi);
  auto density = [&](double x) {
    return std::exp(log_norm - (df + 1) / 2 * std::log1p(x * x / df));
  };
  const double half = Integrate(density, 0.0, std::fabs(t));
  return t >= 0 ? 0.5 + half : 0.5 - half;
}

// F survival function: 1 - integral of the density over [0, f], with
// x = u^2 to remove the singularity at zero for df1 = 1.
inline double FSurvivalByQuadrature(double f, double d1, double d2) {
  const double log_c = d1 / 2 * std::log(d1 / d2) -
                       (std::lgamma(d1 / 2) + std::lgamma(d2 / 2) -
                        std::lgamma((d1 + d2) / 2));
  auto g = [&](double u) {
    const double x = u * u;
    return 2 * std::exp(log_c + (d1 - 1) * std::log(u > 0 ? u : 1e-300) -
                        (d1 + d2) / 2 * std::log1p(d1 * x / d2));
  };
  auto g_safe = [&](double u) { return (u == 0 && d1 > 1) ? 0.0 : g(u); };
  return 1.0 - Integrate(g_safe, 0.0, std::sqrt(f));
}

inline std::filesystem::path TempDir(const std::string& name) {
  std::filesystem::path dir = std::filesystem::path(MIGNOW_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace mignow::testing

#endif  // MIGNOW_TESTS_TEST_SUPPORT_H_
