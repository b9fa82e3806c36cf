# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 itsalab developers
#
# This file is part of itsalab.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""Wald inference on single MG-ITSA coefficients."""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats

from itsalab.errors import ZeroVarianceError
from itsalab.model.design import N_COEFS

DID_LEVEL = 6
DID_TREND = 7


@dataclass(frozen=True)
class WaldResult:
    """Outcome of a two-sided Wald test of one coefficient."""

    estimate: float
    se: float
    statistic: float
    p_value: float
    ci_low: float
    ci_high: float
    df: int
    alpha: float
    rejected: bool


def wald_test(fit, coef_index: int, null_value: float = 0.0, alpha: float = 0.05, df: Optional[int] = None):
    """
    Test beta[coef_index] == null_value against a Student t reference distribution.

    Parameters
    ----------
    fit : FitResult
        Fitted MG-ITSA model.
    coef_index : int
        Coefficient index in 0..7.
    null_value : float, optional
        Value of the coefficient under the null hypothesis. The default is 0.
    alpha : float, optional
        Significance level of the test and 1 - alpha confidence interval. The default is 0.05.
    df : int, optional
        Degrees of freedom of the t distribution. Defaults to fit.df (N - 8).

    Returns
    -------
    WaldResult
    """
    if not 0 <= int(coef_index) < N_COEFS:
        raise ValueError(f"'coef_index' must be in 0..{N_COEFS - 1}.")
    if not 0 < alpha < 1:
        raise ValueError("'alpha' must be in (0, 1).")
    df = int(fit.df if df is None else df)
    if df < 1:
        raise ValueError("The degrees of freedom must be a positive integer.")
    estimate = float(fit.beta[coef_index])
    se = float(fit.se[coef_index])
    if not np.isfinite(se) or se <= 0:
        raise ZeroVarianceError(f"The standard error of coefficient {coef_index} is {se}.")
    statistic = (estimate - null_value) / se
    p_value = float(min(1.0, 2 * stats.t.sf(abs(statistic), df)))
    critical = float(stats.t.ppf(1 - alpha / 2, df))
    return WaldResult(
        estimate=estimate,
        se=se,
        statistic=float(statistic),
        p_value=p_value,
        ci_low=estimate - critical * se,
        ci_high=estimate + critical * se,
        df=df,
        alpha=alpha,
        rejected=bool(p_value < alpha),
    )


def did_level(fit, alpha=0.05):
    """Wald test of the difference-in-differences in level (beta_6 = 0)."""
    return wald_test(fit, DID_LEVEL, null_value=0.0, alpha=alpha)


def did_trend(fit, alpha=0.05):
    """Wald test of the difference-in-differences in trend (beta_7 = 0)."""
    return wald_test(fit, DID_TREND, null_value=0.0, alpha=alpha)


def balance_tests(fit, alpha=0.05):
    """Wald tests of the pre-intervention balance between the treated unit and the controls.

    Returns a dictionary with the baseline level (beta_4) and trend (beta_5) tests.
    """
    return {
        "level": wald_test(fit, 4, null_value=0.0, alpha=alpha),
        "trend": wald_test(fit, 5, null_value=0.0, alpha=alpha),
    }
