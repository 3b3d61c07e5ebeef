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

#include "mignow/special_functions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mignow/error.h"

namespace mignow {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

void RequireFinite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericalError(std::string(what) + " must be finite");
  }
}

void RequirePositiveDf(double df, const char* what) {
  if (!std::isfinite(df) || !(df > 0.0)) {
    throw NumericalError(std::string(what) + " must be a positive number");
  }
}

// Continued fraction for I_x(a, b); converges fast for x < (a+1)/(a+b+2).
double BetaContinuedFraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

}  // namespace

double RegularizedIncompleteBeta(double x, double a, double b) {
  RequireFinite(x, "x");
  RequirePositiveDf(a, "a");
  RequirePositiveDf(b, "b");
  if (x < 0.0 || x > 1.0) throw NumericalError("x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(x, a, b) / a;
  }
  return 1.0 - front * BetaContinuedFraction(1.0 - x, b, a) / b;
}

namespace {

// P(|T| > |t|) / 2 computed without cancellation.
double StudentTTail(double t, double df) {
  const double t2 = t * t;
  // Complementary form for small |t|: keeps the argument away from 1.
  if (t2 < df) {
    const double y = t2 / (df + t2);
    return 0.5 * (1.0 - RegularizedIncompleteBeta(y, 0.5, 0.5 * df));
  }
  return 0.5 * RegularizedIncompleteBeta(df / (df + t2), 0.5 * df, 0.5);
}

}  // namespace

double StudentTCdf(double t, double df) {
  RequireFinite(t, "t");
  RequirePositiveDf(df, "df");
  if (t == 0.0) return 0.5;
  const double tail = StudentTTail(t, df);
  return t > 0.0 ? 1.0 - tail : tail;
}

double StudentTTwoSidedP(double t, double df) {
  RequirePositiveDf(df, "df");
  if (std::isnan(t)) throw NumericalError("t must not be NaN");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  return std::min(1.0, 2.0 * StudentTTail(t, df));
}

double FSurvival(double f, double df1, double df2) {
  RequirePositiveDf(df1, "df1");
  RequirePositiveDf(df2, "df2");
  if (std::isnan(f)) throw NumericalError("f must not be NaN");
  if (f < 0.0) throw NumericalError("f must be non-negative");
  if (std::isinf(f)) return 0.0;
  if (f == 0.0) return 1.0;
  const double x = df2 / (df2 + df1 * f);
  return RegularizedIncompleteBeta(x, 0.5 * df2, 0.5 * df1);
}

}  // namespace mignow
