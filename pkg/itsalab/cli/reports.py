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
"""Text reports printed by the command-line interface."""
import numpy as np
import pandas as pd

from itsalab.model.design import COEF_NAMES
from itsalab.model.results import OLS_NW, PW

METHOD_LABELS = {OLS_NW: "OLS with Newey-West standard errors", PW: "Prais-Winsten FGLS"}
DID_ROWS = {"level": COEF_NAMES[6], "trend": COEF_NAMES[7]}


def _format_float(value):
    return "." if not np.isfinite(value) else f"{value:.6g}"


def format_fit_report(fit, alpha=0.05) -> str:
    """Return the coefficient table of a fit, with the AR estimates of Prais-Winsten fits."""
    lines = [
        METHOD_LABELS[fit.method],
        f"Observations: {fit.n_obs}   Residual df: {fit.df}",
    ]
    if fit.lag_used is not None:
        lines.append(f"Newey-West lag: {fit.lag_used}")
    table = fit.coef_table(alpha=alpha)
    lines.append(table.to_string(float_format=_format_float))
    if fit.rho_hat is not None:
        rho = pd.DataFrame(
            {
                "rho": np.asarray(fit.rho_hat, dtype=float),
                "se": fit.rho_se if fit.rho_cov is not None else np.nan,
            },
            index=[f"rho_{j}" for j in range(1, len(fit.rho_hat) + 1)],
        )
        lines.append(rho.to_string(float_format=_format_float))
        lines.append(f"Iterations: {fit.iterations}   Converged: {'yes' if fit.converged else 'no'}")
    return "\n".join(lines)


def did_record(fit, kind="trend", alpha=0.05) -> dict:
    """Return the estimate, standard error, confidence interval and p-value of a difference-in-differences."""
    row = fit.coef_table(alpha=alpha).loc[DID_ROWS[kind]]
    return {
        "method": fit.method,
        "estimate": row["estimate"],
        "se": row["se"],
        "ci_low": row["ci_low"],
        "ci_high": row["ci_high"],
        "p_value": row["p_value"],
    }


def format_example_report(fits, ar_order, rho, true_effect, seed, alpha=0.05) -> str:
    """Return the comparison of the trend effect estimated by each method on the applied example."""
    records = pd.DataFrame([did_record(fit, "trend", alpha=alpha) for fit in fits]).set_index("method")
    lines = [
        f"Applied example: AR[{ar_order}] errors, rho = {list(rho)}, seed {seed}",
        "Note: values come from the NumPy PCG64 random stream and are not bit-compatible with other software.",
        "",
        "Difference-in-differences in trend",
        records.to_string(float_format=_format_float),
        "",
        f"True effect: {true_effect:g}",
    ]
    if OLS_NW in records.index and PW in records.index:
        ratio = records.loc[PW, "se"] / records.loc[OLS_NW, "se"]
        lines.append(f"SE ratio PW / OLS-NW: {ratio:.2f}")
        significant = {method: records.loc[method, "p_value"] < alpha for method in (OLS_NW, PW)}
        agree = significant[OLS_NW] == significant[PW]
        lines.append(f"Methods {'agree' if agree else 'disagree'} on significance at alpha = {alpha:g}.")
    lines.append(
        "Single realization: estimates and p-values change with the seed. With persistent higher-order "
        "errors, Newey-West standard errors tend to be too small, so the methods may reach opposite conclusions."
    )
    return "\n".join(lines)
