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
"""Iterated Prais-Winsten feasible GLS for AR[k] errors.

The AR parameters are estimated from pooled Yule-Walker cross-products of the
current residuals, each unit segment is whitened by the exact transformation
(reversed Cholesky block for the first k observations, AR filter afterwards)
and the coefficients are refitted until the AR estimates stop moving.
"""
import logging
import warnings
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy import linalg

from itsalab.dgp.ar_process import STATIONARITY_MARGIN, ar_autocovariances, check_stationarity, spectral_radius
from itsalab.errors import (
    AllSegmentsTooShortError,
    CholeskyFailureError,
    ConvergenceWarning,
    NonStationaryIterateError,
    SegmentTooShortError,
    SingularSystemError,
)
from itsalab.estimation.olsnw import ols_fit
from itsalab.model.design import build_design
from itsalab.model.panel import infer_intervention_time, validate_panel
from itsalab.model.results import PW, FitResult

logger = logging.getLogger(__name__)

SHRINK_TARGET = 0.998


class PwConfig(BaseModel):
    """
    Settings of the iterated Prais-Winsten estimator.

    Attributes
    ----------
    k : int
        AR order of the errors.
    tol : float
        Convergence tolerance on the largest absolute change of the AR coefficients.
    max_iter : int
        Maximum number of GLS iterations.
    enforce_stationarity : bool
        Shrink non-stationary Yule-Walker iterates back inside the unit circle.
        If False, a non-stationary iterate raises an error.
    init_method : str
        How the inverse covariance of the first k errors is obtained:
        ``"direct"`` inverts the autocovariance matrix, ``"closed_form"`` builds it from the
        lower-triangular Toeplitz factors of (1, -rho_1, ..., -rho_k).
    fixed_rho : list of float, optional
        Skip the estimation and whiten with these AR coefficients.
    """

    model_config = ConfigDict(extra="forbid")

    k: int = 1
    tol: float = 1e-6
    max_iter: int = 100
    enforce_stationarity: bool = True
    init_method: Literal["direct", "closed_form"] = "direct"
    fixed_rho: Optional[list[float]] = None

    @field_validator("k")
    @classmethod
    def validate_k(cls, v):
        assert v >= 1, "The AR order 'k' must be a positive integer."
        return v

    @field_validator("tol")
    @classmethod
    def validate_tol(cls, v):
        assert v > 0, "'tol' must be positive."
        return v

    @field_validator("max_iter")
    @classmethod
    def validate_max_iter(cls, v):
        assert v >= 1, "'max_iter' must be a positive integer."
        return v

    @model_validator(mode="after")
    def check_fixed_rho(self):
        if self.fixed_rho is not None:
            assert len(self.fixed_rho) == self.k, f"'fixed_rho' must have k={self.k} coefficients."
        return self


@dataclass(frozen=True)
class YwSystem:
    """Pooled Yule-Walker normal equations A rho = b."""

    A: np.ndarray
    b: np.ndarray


####-------------------------------------------------------------------------------------------------------------------.
#### Yule-Walker estimation


def yule_walker_pool(residual_segments, k: int):
    """
    Estimate AR[k] coefficients from residual cross-products pooled over segments.

    b[j] = sum_t u_t u_{t-j} and A[i, j] = sum_t u_{t-i} u_{t-j}, with sums taken within
    segments. The system A rho = b is solved by LU factorization.

    Parameters
    ----------
    residual_segments : list of np.ndarray
        Residuals of each contiguous segment, in time order.
    k : int
        AR order.

    Returns
    -------
    rho : np.ndarray
        Estimated coefficients rho_1..rho_k.
    system : YwSystem
        Pooled cross-product matrix and vector.
    """
    k = int(k)
    A = np.zeros((k, k))
    b = np.zeros(k)
    n_used = 0
    for u in residual_segments:
        u = np.asarray(u, dtype=float)
        n = u.size
        if n <= k:
            continue
        n_used += 1
        for j in range(1, k + 1):
            b[j - 1] += u[j:] @ u[: n - j]
            for i in range(1, k + 1):
                start = max(i, j)
                A[i - 1, j - 1] += u[start - i : n - i] @ u[start - j : n - j]
    if n_used == 0:
        raise AllSegmentsTooShortError(f"No segment is longer than the AR order {k}.")
    scale = np.abs(A).max()
    if not np.all(np.isfinite(A)) or scale == 0:
        raise SingularSystemError("The pooled Yule-Walker matrix is zero or not finite.")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(A)
    if np.abs(np.diag(lu)).min() <= k * np.finfo(float).eps * scale:
        raise SingularSystemError("The pooled Yule-Walker matrix is singular.")
    rho = linalg.lu_solve((lu, piv), b)
    return rho, YwSystem(A=A, b=b)


####-------------------------------------------------------------------------------------------------------------------.
#### Exact transformation


def ar_inverse_covariance(rho):
    """
    Closed-form inverse of the k x k unit-innovation autocovariance matrix of an AR[k] process.

    With a = (1, -rho_1, ..., -rho_k), V_k^-1 = P P' - Q Q' where P and Q are lower-triangular
    Toeplitz matrices with first columns (a_0..a_{k-1}) and (a_k..a_1).
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    k = rho.size
    a = np.concatenate([[1.0], -rho])
    P = linalg.toeplitz(a[:k], np.zeros(k))
    Q = linalg.toeplitz(a[k:0:-1], np.zeros(k))
    return P @ P.T - Q @ Q.T


def init_block(rho, k=None, method="direct"):
    """
    Return the k x k lower-triangular block whitening the first k observations of a segment.

    The block L0 satisfies L0' L0 = V_k^-1, where V_k is the autocovariance matrix of k
    consecutive errors with unit innovation variance. It is the Cholesky factor of the
    order-reversed V_k^-1, reversed back.

    Raises
    ------
    NonStationaryError
        If the AR coefficients are not stationary.
    CholeskyFailureError
        If V_k^-1 is not numerically positive definite.
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if k is not None and int(k) != rho.size:
        raise ValueError(f"'rho' has {rho.size} coefficients but k={k}.")
    k = rho.size
    check_stationarity(rho)
    if method == "closed_form":
        v_inv = ar_inverse_covariance(rho)
    elif method == "direct":
        v_inv = linalg.inv(linalg.toeplitz(ar_autocovariances(rho, sigma=1.0, max_lag=k - 1)))
    else:
        raise ValueError(f"Invalid init method '{method}'. Use 'direct' or 'closed_form'.")
    try:
        chol = linalg.cholesky(v_inv[::-1, ::-1], lower=True)
    except linalg.LinAlgError as e:
        raise CholeskyFailureError(f"Cholesky factorization failed for rho={rho.tolist()}: {e}")
    return chol.T[::-1, ::-1]


def _whiten(data, rho, L0):
    k = rho.size
    whitened = np.empty_like(data)
    whitened[:k] = L0 @ data[:k]
    whitened[k:] = data[k:]
    for j in range(1, k + 1):
        whitened[k:] -= rho[j - 1] * data[k - j : data.shape[0] - j]
    return whitened


def pw_transform(segment_y, segment_X, rho, method="direct", L0=None):
    """
    Apply the exact Prais-Winsten transformation to one segment.

    Rows 1..k are premultiplied by the initialization block, rows k+1..n are the
    quasi-differences y_t - sum_j rho_j y_{t-j} (same for each column of X).

    Returns
    -------
    y_r : np.ndarray
    X_r : np.ndarray or None
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    y = np.asarray(segment_y, dtype=float)
    X = None if segment_X is None else np.asarray(segment_X, dtype=float)
    if rho.size == 0:
        return y.copy(), None if X is None else X.copy()
    n = y.shape[0]
    if n <= rho.size:
        raise SegmentTooShortError(f"A segment of length {n} cannot be whitened with AR order {rho.size}.")
    if L0 is None:
        L0 = init_block(rho, method=method)
    data = y[:, None] if X is None else np.column_stack([y, X.reshape(n, -1)])
    whitened = _whiten(data, rho, L0)
    y_r = whitened[:, 0]
    X_r = None if X is None else whitened[:, 1:].reshape(X.shape)
    return y_r, X_r


def whitening_matrix(rho, n, method="direct"):
    """Return the dense n x n Prais-Winsten operator of a segment of length n."""
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if rho.size == 0:
        return np.eye(n)
    if n <= rho.size:
        raise SegmentTooShortError(f"A segment of length {n} cannot be whitened with AR order {rho.size}.")
    return _whiten(np.eye(n), rho, init_block(rho, method=method))


####-------------------------------------------------------------------------------------------------------------------.
#### Iterated GLS


def shrink_to_stationary(rho, target=SHRINK_TARGET):
    """Scale the AR roots so that the largest modulus equals ``target``.

    Multiplying rho_j by c^j multiplies every companion eigenvalue by c.
    """
    rho = np.asarray(rho, dtype=float)
    c = target / spectral_radius(rho)
    return rho * c ** np.arange(1, rho.size + 1)


def _stationary_iterate(rho, enforce, iteration, log=None):
    radius = spectral_radius(rho)
    if radius < 1 - STATIONARITY_MARGIN:
        return rho
    if not enforce:
        raise NonStationaryIterateError(
            f"Iteration {iteration} produced non-stationary AR coefficients {rho.tolist()} (radius {radius:.6f})."
        )
    log = logger.warning if log is None else log
    log(f"Shrinking non-stationary AR iterate {rho.tolist()} (radius {radius:.6f}), iteration {iteration}.")
    return shrink_to_stationary(rho)


class _SegmentedData:
    """Design, outcome and segment layout shared by the GLS iterations."""

    def __init__(self, X, y, slices, method):
        self.X = X
        self.y = y
        self.slices = slices
        self.method = method

    def residual_segments(self, residuals):
        return [residuals[s] for s in self.slices]

    def gls_step(self, rho):
        L0 = init_block(rho, method=self.method)
        y_r = np.empty_like(self.y)
        X_r = np.empty_like(self.X)
        for s in self.slices:
            y_r[s], X_r[s] = pw_transform(self.y[s], self.X[s], rho, L0=L0)
        beta, residuals_r = ols_fit(X_r, y_r)
        return beta, self.y - self.X @ beta, X_r, residuals_r


def fit_pw(panel, intervention=None, cfg=None, verbose=True) -> FitResult:
    """
    Fit the MG-ITSA model by iterated Prais-Winsten FGLS with AR[k] errors.

    Starting from OLS residuals, the algorithm alternates the pooled Yule-Walker estimation
    of rho and the GLS refit on whitened data. Convergence is declared when the largest
    absolute change of the AR coefficients is below ``cfg.tol``.

    Parameters
    ----------
    panel : pandas.DataFrame
        Panel with columns ``unit_id, t, treated, post, y``.
    intervention : int, optional
        First post-intervention period. Inferred from the ``post`` column if not specified.
    cfg : PwConfig or dict, optional
        Estimator settings.
    verbose : bool, optional
        If False, stationarity shrinkage and non-convergence are logged at DEBUG instead of WARNING.
        The ConvergenceWarning is emitted in both cases. The default is True.

    Returns
    -------
    FitResult
        The coefficient covariance is s^2 (X_r'X_r)^-1 with s^2 = e'e / (N - 8) on the whitened
        residuals and the AR covariance is s^2 A^-1 from the final Yule-Walker system.
        If the iterations do not converge, the last iterate is returned with ``converged=False``
        and a ConvergenceWarning is emitted.
    """
    cfg = PwConfig() if cfg is None else PwConfig.model_validate(cfg)
    log = logger.warning if verbose else logger.debug
    k = cfg.k
    panel = validate_panel(panel)
    if intervention is None:
        intervention = infer_intervention_time(panel)
    design = build_design(panel, intervention)
    X = design.rows
    y = panel["y"].to_numpy()
    n, p = X.shape
    slices = design.segment_slices()
    for s in slices:
        if s.stop - s.start <= k:
            raise SegmentTooShortError(
                f"Unit {design.row_unit[s.start]} has {s.stop - s.start} observations, not more than k={k}."
            )
    data = _SegmentedData(X, y, slices, method=cfg.init_method)

    beta, residuals = ols_fit(X, y)
    rho_cov = None
    iterations = 0
    converged = True
    if cfg.fixed_rho is not None:
        rho = np.asarray(cfg.fixed_rho, dtype=float)
        beta, residuals, X_r, residuals_r = data.gls_step(rho)
    elif residuals @ residuals <= (1e-12 * max(1.0, np.linalg.norm(y))) ** 2:
        # Exact fit: no autocorrelation left to estimate
        rho = np.zeros(k)
        X_r, residuals_r = X, residuals
        rho_cov = np.zeros((k, k))
    else:
        # The reported rho is always the one used for the returned beta
        candidate, system = yule_walker_pool(data.residual_segments(residuals), k)
        converged = False
        for iterations in range(1, cfg.max_iter + 1):
            rho = _stationary_iterate(candidate, cfg.enforce_stationarity, iterations, log=log)
            beta, residuals, X_r, residuals_r = data.gls_step(rho)
            candidate, system = yule_walker_pool(data.residual_segments(residuals), k)
            delta = float(np.max(np.abs(candidate - rho)))
            logger.debug(f"Iteration {iterations}: rho={rho.tolist()}, max change {delta:.3e}")
            if delta < cfg.tol:
                converged = True
                break
        if not converged:
            msg = f"Prais-Winsten did not converge in {cfg.max_iter} iterations (last change {delta:.3e})."
            log(msg)
            warnings.warn(msg, ConvergenceWarning, stacklevel=2)
    s2 = float(residuals_r @ residuals_r) / (n - p)
    cov = s2 * linalg.inv(X_r.T @ X_r)
    if rho_cov is None and cfg.fixed_rho is None:
        rho_cov = s2 * linalg.inv(system.A)
    return FitResult(
        method=PW,
        beta=beta,
        cov=cov,
        n_obs=n,
        df=n - p,
        rho_hat=rho,
        rho_cov=rho_cov,
        iterations=iterations,
        converged=converged,
        sigma2=s2,
    )
