# Copyright 2026 The Mignow Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Prints reference values frozen into oracle_test.cc.

Uses scipy and statsmodels, which share no code with the C++ library.
Rerun by hand only if a fixture below changes.
"""

import itertools

import numpy as np
import statsmodels.api as sm
from scipy import special, stats

np.set_printoptions(legacy="1.25")

print("// incomplete beta: a, b, x, I_x(a,b)")
for a, b, x in [(0.5, 0.5, 0.3), (2, 3, 0.4), (5, 1.5, 0.9), (10, 10, 0.5),
                (0.1, 7, 0.01), (30, 2, 0.97)]:
    print(f"{{{a}, {b}, {x}, {special.betainc(a, b, x)!r}}},")

print("// t cdf: t, df, cdf")
for t, df in [(1.0, 10), (-2.5, 3), (0.3, 1), (4.0, 38), (-0.7, 36), (12.0, 5)]:
    print(f"{{{t}, {df}, {stats.t.cdf(t, df)!r}}},")

print("// F survival: f, d1, d2, sf")
for f, d1, d2 in [(1.0, 1, 1), (329.2, 1, 36), (2.5, 3, 34), (0.4, 4, 33),
                  (7.0, 2, 10)]:
    print(f"{{{f}, {d1}, {d2}, {stats.f.sf(f, d1, d2)!r}}},")

# Standardized two-predictor fit.
x1 = np.array([3.1, 4.7, 1.2, 8.8, 5.5, 6.0, 2.2, 7.3, 9.9, 4.1])
x2 = np.array([120., 80., 95., 60., 150., 40., 110., 70., 30., 100.])
y = np.array([10.2, 14.9, 5.1, 25.3, 18.8, 17.0, 9.4, 21.1, 26.7, 12.0])
z = lambda v: (v - v.mean()) / v.std(ddof=1)
X = sm.add_constant(np.column_stack([z(x1), z(x2)]))
fit = sm.OLS(z(y), X).fit()
print("// ols two predictors")
print("coef", [repr(v) for v in fit.params])
print("se", [repr(v) for v in fit.bse])
print("t", [repr(v) for v in fit.tvalues])
print("p", [repr(v) for v in fit.pvalues])
print("r2", repr(fit.rsquared), "adj", repr(fit.rsquared_adj))
print("F", repr(fit.fvalue), "Fp", repr(fit.f_pvalue))

# Spearman with ties.
xs = [1, 2, 2, 4]
ys = [10, 20, 30, 40]
r = stats.spearmanr(xs, ys)
print("// spearman ties", repr(r.statistic), repr(r.pvalue))
xs = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0]
ys = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0, 1.0, 8.0]
r = stats.spearmanr(xs, ys)
rx, ry = stats.rankdata(xs), stats.rankdata(ys)
obs = abs(np.corrcoef(rx, ry)[0, 1])
perms = set(itertools.permutations(ry))
extreme = sum(abs(np.corrcoef(rx, p)[0, 1]) >= obs - 1e-12 for p in perms)
print("// spearman mixed ties", repr(r.statistic), repr(r.pvalue),
      "exact", repr(extreme / len(perms)))
