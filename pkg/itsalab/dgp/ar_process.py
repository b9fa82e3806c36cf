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
"""Autoregressive error processes."""
import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy import linalg, signal

from itsalab.errors import EmptyOrderError, NonStationaryError

BURN_IN = 500
STATIONARITY_MARGIN = 1e-8


class ARSpec(BaseModel):
    """
    Specification of an AR[k] error process.

    Attributes
    ----------
    k : int
        AR order. If not specified, it is inferred from rho. k = 0 means iid noise.
    rho : list of float
        Coefficients rho_1..rho_k.
    sigma : float
        Innovation standard deviation.
    """

    model_config = ConfigDict(extra="forbid")

    k: int = 0
    rho: list[float] = []
    sigma: float = 1.0

    @model_validator(mode="before")
    @classmethod
    def infer_order(cls, values):
        if isinstance(values, dict) and values.get("k") is None:
            values = dict(values)
            values["k"] = len(values.get("rho", []) or [])
        return values

    @field_validator("k")
    @classmethod
    def validate_k(cls, v):
        assert v >= 0, "The AR order 'k' must be a nonnegative integer."
        return v

    @field_validator("sigma")
    @classmethod
    def validate_sigma(cls, v):
        assert np.isfinite(v) and v >= 0, "'sigma' must be a finite nonnegative number."
        return v

    @model_validator(mode="after")
    def check_rho_length(self):
        assert len(self.rho) == self.k, f"'rho' must have k={self.k} coefficients, got {len(self.rho)}."
        return self

    @property
    def rho_array(self):
        return np.asarray(self.rho, dtype=float)

    @property
    def is_stationary(self):
        return is_stationary(self.rho)


def companion_matrix(rho):
    """
    Return the k x k companion matrix of AR coefficients.

    The first row holds rho_1..rho_k, the subdiagonal holds ones.
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    k = rho.size
    if k == 0:
        raise EmptyOrderError("The companion matrix requires at least one AR coefficient.")
    companion = np.zeros((k, k))
    companion[0, :] = rho
    companion[np.arange(1, k), np.arange(k - 1)] = 1.0
    return companion


def spectral_radius(rho) -> float:
    """Return the largest eigenvalue modulus of the companion matrix (0 for iid noise)."""
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if rho.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(companion_matrix(rho)))))


def is_stationary(rho, margin=STATIONARITY_MARGIN) -> bool:
    """Test whether the AR coefficients define a stationary process."""
    return spectral_radius(rho) < 1 - margin


def check_stationarity(rho):
    radius = spectral_radius(rho)
    if radius >= 1 - STATIONARITY_MARGIN:
        rho = np.atleast_1d(rho).tolist()
        raise NonStationaryError(f"AR coefficients {rho} are not stationary (radius {radius:.6f}).")


def ar_autocovariances(rho, sigma=1.0, max_lag=None):
    """
    Return the theoretical autocovariances gamma(0..max_lag) of a stationary AR[k] process.

    gamma(0..k) solve the Yule-Walker system jointly with the innovation variance,
    higher lags follow the recursion gamma(l) = sum_j rho_j gamma(l - j).

    Parameters
    ----------
    rho : array-like
        AR coefficients rho_1..rho_k.
    sigma : float
        Innovation standard deviation.
    max_lag : int, optional
        Largest lag returned. The default is k.

    Returns
    -------
    np.ndarray
        Array of length max_lag + 1.
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    k = rho.size
    max_lag = k if max_lag is None else int(max_lag)
    gamma = np.zeros(max(max_lag, k) + 1)
    if k == 0:
        gamma[0] = sigma**2
        return gamma[: max_lag + 1]
    check_stationarity(rho)
    # Equations l = 0..k over the unknowns gamma(0..k)
    system = np.eye(k + 1)
    for lag in range(k + 1):
        for j in range(1, k + 1):
            system[lag, abs(lag - j)] -= rho[j - 1]
    rhs = np.zeros(k + 1)
    rhs[0] = sigma**2
    gamma[: k + 1] = linalg.solve(system, rhs)
    for lag in range(k + 1, max_lag + 1):
        gamma[lag] = np.dot(rho, gamma[lag - k : lag][::-1])
    return gamma[: max_lag + 1]


def ar_covariance_matrix(rho, n, sigma=1.0):
    """Return the n x n Toeplitz covariance matrix of n consecutive AR errors."""
    return linalg.toeplitz(ar_autocovariances(rho, sigma=sigma, max_lag=n - 1))


def gen_ar_errors(ar: ARSpec, n: int, rng, burn_in: int = BURN_IN):
    """
    Simulate n consecutive errors of an AR[k] process with Gaussian innovations.

    The recursion starts at zero and the first burn_in values are discarded.

    Parameters
    ----------
    ar : ARSpec
        Error process.
    n : int
        Number of returned errors.
    rng : numpy.random.Generator
        Random generator.

    Returns
    -------
    np.ndarray
    """
    if n < 1:
        raise ValueError("'n' must be a positive integer.")
    rho = ar.rho_array
    if rho.size == 0:
        return ar.sigma * rng.standard_normal(n)
    check_stationarity(rho)
    innovations = ar.sigma * rng.standard_normal(n + burn_in)
    errors = signal.lfilter([1.0], np.concatenate([[1.0], -rho]), innovations)
    return errors[burn_in:]
