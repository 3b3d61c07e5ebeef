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

#ifndef MIGNOW_SPECIAL_FUNCTIONS_H_
#define MIGNOW_SPECIAL_FUNCTIONS_H_

namespace mignow {

// Regularized incomplete beta I_x(a, b) for x in [0, 1], a, b > 0,
// evaluated by a continued fraction (modified Lentz).
double RegularizedIncompleteBeta(double x, double a, double b);

// Student t cumulative distribution with `df` degrees of freedom.
// StudentTCdf(0, df) is exactly 0.5 and StudentTCdf(t) + StudentTCdf(-t)
// equals 1 up to one rounding.
double StudentTCdf(double t, double df);

// Two-sided p-value for a t statistic; |t| = inf gives 0.
double StudentTTwoSidedP(double t, double df);

// Upper tail P(F > f) of the F(df1, df2) distribution; f = inf gives 0.
double FSurvival(double f, double df1, double df2);

}  // namespace mignow

#endif  // MIGNOW_SPECIAL_FUNCTIONS_H_
