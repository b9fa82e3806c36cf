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
"""Container of an MG-ITSA fit."""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from itsalab.model.design import COEF_LABELS, COEF_NAMES, N_COEFS

OLS_NW = "OLS_NW"
PW = "PW"
METHODS = [OLS_NW, PW]


@dataclass
class FitResult:
    """
    Estimates of the MG-ITSA regression.

    Attributes
    ----------
    method : str
        Estimator tag, either "OLS_NW" or "PW".
    beta : np.ndarray
        Coefficients beta_0..beta_7.
    cov : np.ndarray
        8 x 8 coefficient covariance matrix.
    n_obs : int
        Number of stacked observations N.
    df : int
        Residual degrees of freedom N - 8.
    rho_hat, rho_cov : np.ndarray, optional
        AR parameter estimates and their covariance (Prais-Winsten only).
    iterations : int, optional
        Number of GLS iterations (Prais-Winsten only).
    converged : bool, optional
        Convergence flag (Prais-Winsten only).
    lag_used : int, optional
        HAC bandwidth (Newey-West only).
    """

    method: str
    beta: np.ndarray
    cov: np.ndarray
    n_obs: int
    df: int
    rho_hat: Optional[np.ndarray] = None
    rho_cov: Optional[np.ndarray] = None
    iterations: Optional[int] = None
    converged: Optional[bool] = None
    lag_used: Optional[int] = None
    sigma2: Optional[float] = None
    se: np.ndarray = field(init=False)

    def __post_init__(self):
        self.beta = np.asarray(self.beta, dtype=float)
        self.cov = np.asarray(self.cov, dtype=float)
        if self.beta.shape != (N_COEFS,):
            raise ValueError(f"'beta' must have length {N_COEFS}.")
        if self.cov.shape != (N_COEFS, N_COEFS):
            raise ValueError(f"'cov' must be a {N_COEFS}x{N_COEFS} matrix.")
        if self.method not in METHODS:
            raise ValueError(f"Invalid method '{self.method}'. Valid methods are {METHODS}.")
        # Symmetrize round-off of the sandwich products
        self.cov = (self.cov + self.cov.T) / 2
        self.se = np.sqrt(np.clip(np.diag(self.cov), 0, None))

    @property
    def rho_se(self):
        if self.rho_cov is None:
            return None
        return np.sqrt(np.clip(np.diag(self.rho_cov), 0, None))

    def coef_table(self, alpha=0.05) -> pd.DataFrame:
        """Return the coefficient table with estimates, standard errors, t, p and confidence intervals."""
        from itsalab.model.wald import wald_test

        records = []
        for idx, name in enumerate(COEF_NAMES):
            record = {"coef": name, "label": COEF_LABELS[idx], "estimate": self.beta[idx], "se": self.se[idx]}
            if self.se[idx] > 0:
                wald = wald_test(self, idx, null_value=0.0, alpha=alpha)
                record.update(
                    {"t": wald.statistic, "p_value": wald.p_value, "ci_low": wald.ci_low, "ci_high": wald.ci_high}
                )
            else:
                record.update({"t": np.nan, "p_value": np.nan, "ci_low": np.nan, "ci_high": np.nan})
            records.append(record)
        return pd.DataFrame.from_records(records).set_index("coef")

    def to_dict(self) -> dict:
        """Return a JSON-serializable dictionary of the fit."""
        dictionary = {
            "method": self.method,
            "coef_names": list(COEF_NAMES),
            "beta": self.beta.tolist(),
            "se": self.se.tolist(),
            "cov": self.cov.tolist(),
            "n_obs": int(self.n_obs),
            "df": int(self.df),
        }
        if self.rho_hat is not None:
            dictionary["rho_hat"] = np.asarray(self.rho_hat).tolist()
            dictionary["rho_se"] = self.rho_se.tolist() if self.rho_cov is not None else None
            dictionary["iterations"] = self.iterations
            dictionary["converged"] = self.converged
        if self.lag_used is not None:
            dictionary["lag_used"] = int(self.lag_used)
        return dictionary
