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
"""OLS estimation with Newey-West HAC standard errors."""
import logging
import math
import warnings
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from scipy import linalg

from itsalab.errors import BandwidthTooLargeError, RankDeficientError
from itsalab.model.design import build_design
from itsalab.model.panel import infer_intervention_time, validate_panel
from itsalab.model.results import OLS_NW, FitResult

logger = logging.getLogger(__name__)


class HacConfig(BaseModel):
    """
    Settings of the Newey-West covariance.

    Attributes
    ----------
    lag : int, optional
        Bandwidth L. If None, the automatic rule floor(4 (T/100)^(2/9)) is applied to the
        per-unit series length T.
    small_sample_adjust : bool
        Multiply the covariance by N / (N - 8). The default is True.
    prewhitening : bool
        Always False.
    """

    model_config = ConfigDict(extra="forbid")

    lag: Optional[int] = None
    small_sample_adjust: bool = True
    prewhitening: Literal[False] = False

    @field_validator("lag")
    @classmethod
    def validate_lag(cls, v):
        if v is not None:
            assert v >= 0, "'lag' must be a nonnegative integer."
        return v


def ols_fit(X, y):
    """
    Least-squares fit of ``y`` on the columns of ``X``.

    Returns
    -------
    beta : np.ndarray
        Coefficients solving the normal equations.
    residuals : np.ndarray
        ``y - X @ beta``.

    Raises
    ------
    RankDeficientError
        If ``X`` does not have full column rank.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    beta, _, rank, _ = linalg.lstsq(X, y)
    if rank < X.shape[1]:
        raise RankDeficientError(f"The design matrix has rank {rank} < {X.shape[1]} columns.")
    return beta, y - X @ beta


def ols_cov(X, residuals):
    """Return the classical OLS covariance s^2 (X'X)^-1 with s^2 = e'e / (N - p)."""
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    s2 = float(residuals @ residuals) / (n - p)
    return s2 * linalg.inv(X.T @ X)


def nw_bandwidth(T: int) -> int:
    """Return the Newey-West automatic bandwidth floor(4 (T/100)^(2/9))."""
    if T < 2:
        raise ValueError("The series length must be at least 2.")
    return int(math.floor(4 * (T / 100) ** (2 / 9)))


def bartlett_weight(j: int, L: int) -> float:
    """Return the Bartlett kernel weight 1 - j / (L + 1) of lag ``j``."""
    if not 1 <= j <= L:
        raise ValueError(f"The lag j={j} must be in 1..L={L}.")
    return 1 - j / (L + 1)


def bartlett_weights(L: int) -> np.ndarray:
    """Return the Bartlett weights of lags 1..L."""
    return 1 - np.arange(1, L + 1) / (L + 1)


def _run_lengths(segments):
    boundaries = np.flatnonzero(segments[1:] != segments[:-1]) + 1
    return np.diff(np.concatenate([[0], boundaries, [segments.size]]))


def nw_cov(X, residuals, L, segments=None, small_sample_adjust=True):
    """
    Newey-West HAC covariance of OLS coefficients.

    The long-run score covariance is
    S = Gamma(0) + sum_{j=1}^{L} w_j (Gamma(j) + Gamma(j)'), with
    Gamma(j) = (1/N) sum_t e_t e_{t-j} x_t x_{t-j}' summed over pairs of rows of the same segment.
    The covariance is (X'X)^-1 (N S) (X'X)^-1, times N / (N - p) if ``small_sample_adjust``.

    Parameters
    ----------
    X : np.ndarray
        N x p regressors. Rows of a segment are contiguous and ordered in time.
    residuals : np.ndarray
        OLS residuals.
    L : int
        Bandwidth.
    segments : np.ndarray, optional
        Segment label of each row. The default is a single segment.
    small_sample_adjust : bool, optional
        Apply the N / (N - p) factor. The default is True.

    Returns
    -------
    np.ndarray
        p x p covariance matrix.
    """
    X = np.asarray(X, dtype=float)
    residuals = np.asarray(residuals, dtype=float)
    n, p = X.shape
    segments = np.zeros(n, dtype=int) if segments is None else np.asarray(segments)
    L = int(L)
    if L < 0:
        raise ValueError("The bandwidth must be nonnegative.")
    min_length = int(_run_lengths(segments).min())
    if L >= min_length:
        raise BandwidthTooLargeError(f"The bandwidth L={L} must be smaller than the shortest segment ({min_length}).")
    scores = X * residuals[:, None]
    S = scores.T @ scores / n
    for j, weight in zip(range(1, L + 1), bartlett_weights(L)):
        same_segment = segments[j:] == segments[:-j]
        gamma = scores[j:][same_segment].T @ scores[:-j][same_segment] / n
        S += weight * (gamma + gamma.T)
    bread = linalg.inv(X.T @ X)
    cov = bread @ (n * S) @ bread
    if small_sample_adjust:
        cov *= n / (n - p)
    return cov


def fit_ols_nw(panel, intervention=None, hac=None) -> FitResult:
    """
    Fit the MG-ITSA model by OLS with Newey-West standard errors.

    Parameters
    ----------
    panel : pandas.DataFrame
        Panel with columns ``unit_id, t, treated, post, y``.
    intervention : int, optional
        First post-intervention period. Inferred from the ``post`` column if not specified.
    hac : HacConfig or dict, optional
        Newey-West settings.

    Returns
    -------
    FitResult
    """
    hac = HacConfig() if hac is None else HacConfig.model_validate(hac)
    panel = validate_panel(panel)
    if intervention is None:
        intervention = infer_intervention_time(panel)
    design = build_design(panel, intervention)
    y = panel["y"].to_numpy()
    beta, residuals = ols_fit(design.rows, y)
    T = int(design.segment_lengths.min())
    if hac.lag is not None:
        lag = hac.lag
    else:
        lag = nw_bandwidth(T)
        if lag >= T:
            msg = f"The automatic bandwidth {lag} is not smaller than the series length {T}. Using {T - 1}."
            logger.warning(msg)
            warnings.warn(msg, UserWarning, stacklevel=2)
            lag = T - 1
    cov = nw_cov(design.rows, residuals, lag, segments=design.row_unit, small_sample_adjust=hac.small_sample_adjust)
    n = design.n_obs
    return FitResult(method=OLS_NW, beta=beta, cov=cov, n_obs=n, df=n - design.rows.shape[1], lag_used=lag)
