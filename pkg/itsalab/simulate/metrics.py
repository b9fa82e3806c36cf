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
"""Performance measures of a Monte Carlo condition."""
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy import stats

from itsalab.errors import EmptyInputError


@dataclass(frozen=True)
class PerfSummary:
    """
    Performance of an estimator over the replications of a condition.

    Attributes
    ----------
    power : float
        Share of replications rejecting beta = 0. It is the Type I error rate when the true effect is 0.
    coverage : float
        Share of 1 - alpha confidence intervals containing the true effect.
    pct_bias : float
        100 (mean estimate - truth) / truth. NaN when the truth is 0.
    bias : float
        Mean estimate - truth.
    rmse : float
        Root mean squared error.
    empirical_se : float
        Standard deviation of the estimates (divisor R - 1).
    mean_model_se : float
        Mean of the model-based standard errors.
    n_converged : int
        Number of replications entering the summary.
    n_failed : int
        Number of failed replications.
    """

    power: float
    coverage: float
    pct_bias: float
    bias: float
    rmse: float
    empirical_se: float
    mean_model_se: float
    n_converged: int
    n_failed: int = 0

    def to_dict(self):
        return asdict(self)


def summarize(estimates, ses, truth: float, alpha: float = 0.05, df: Optional[int] = None, n_failed: int = 0):
    """
    Summarize the estimates of one coefficient across replications.

    Parameters
    ----------
    estimates : array-like
        Point estimates.
    ses : array-like
        Model-based standard errors.
    truth : float
        True coefficient value.
    alpha : float, optional
        Test level. The default is 0.05.
    df : int, optional
        Degrees of freedom of the t reference distribution. If None, the normal distribution is used.
    n_failed : int, optional
        Number of failed replications, reported as is.

    Returns
    -------
    PerfSummary
    """
    estimates = np.asarray(estimates, dtype=float)
    ses = np.asarray(ses, dtype=float)
    if estimates.shape != ses.shape:
        raise ValueError("'estimates' and 'ses' must have the same length.")
    if estimates.size < 2:
        raise EmptyInputError("At least two replications are required to summarize a condition.")
    critical = stats.norm.ppf(1 - alpha / 2) if df is None else stats.t.ppf(1 - alpha / 2, df)
    with np.errstate(divide="ignore", invalid="ignore"):
        # A zero standard error with a nonzero estimate gives |t| = inf (rejected), 0/0 is not rejected
        rejected = np.abs(estimates / ses) > critical
    covered = np.abs(estimates - truth) <= critical * ses
    errors = estimates - truth
    bias = float(errors.mean())
    return PerfSummary(
        power=float(rejected.mean()),
        coverage=float(covered.mean()),
        pct_bias=100 * bias / truth if truth != 0 else np.nan,
        bias=bias,
        rmse=float(np.sqrt(np.mean(errors**2))),
        empirical_se=float(np.std(estimates, ddof=1)),
        mean_model_se=float(ses.mean()),
        n_converged=int(estimates.size),
        n_failed=int(n_failed),
    )


def failed_summary(n_converged: int, n_failed: int) -> PerfSummary:
    """Return the summary of a condition with too many failed replications: every measure is NaN."""
    return PerfSummary(
        power=np.nan,
        coverage=np.nan,
        pct_bias=np.nan,
        bias=np.nan,
        rmse=np.nan,
        empirical_se=np.nan,
        mean_model_se=np.nan,
        n_converged=int(n_converged),
        n_failed=int(n_failed),
    )
