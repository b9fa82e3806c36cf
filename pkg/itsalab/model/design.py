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
"""MG-ITSA design matrix."""
from dataclasses import dataclass

import numpy as np

from itsalab.errors import DegenerateDesignError
from itsalab.model.panel import validate_panel

COEF_NAMES = [
    "_cons",
    "_t",
    "_x",
    "_x_t",
    "_z",
    "_z_t",
    "_z_x",
    "_z_x_t",
]

COEF_LABELS = [
    "Controls' starting level",
    "Controls' pre-intervention trend",
    "Controls' level change at intervention",
    "Controls' post-intervention trend change",
    "Treated-controls baseline level difference",
    "Treated-controls baseline trend difference",
    "Difference-in-differences in level",
    "Difference-in-differences in trend",
]

N_COEFS = len(COEF_NAMES)


@dataclass(frozen=True)
class DesignMatrix:
    """
    Stacked MG-ITSA regressors.

    Attributes
    ----------
    rows : np.ndarray
        N x 8 matrix with columns [1, T, X, X*T, Z, Z*T, Z*X, Z*X*T].
    row_unit : np.ndarray
        Unit id of each row. Rows of a unit are contiguous and ordered in time.
    row_time : np.ndarray
        Period of each row.
    """

    rows: np.ndarray
    row_unit: np.ndarray
    row_time: np.ndarray

    @property
    def n_obs(self):
        return self.rows.shape[0]

    @property
    def segment_lengths(self):
        """Number of rows of each unit, in row order."""
        _, counts = np.unique(self.row_unit, return_counts=True)
        return counts

    def segment_slices(self):
        """Yield one slice per contiguous unit block."""
        boundaries = np.flatnonzero(np.diff(self.row_unit) != 0) + 1
        starts = np.concatenate([[0], boundaries])
        stops = np.concatenate([boundaries, [self.n_obs]])
        return [slice(int(start), int(stop)) for start, stop in zip(starts, stops)]


def design_columns(t, post, treated):
    """Return the eight MG-ITSA regressors of raw time, post and treated indicators."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(post, dtype=float)
    z = np.asarray(treated, dtype=float)
    return np.column_stack([np.ones_like(t), t, x, x * t, z, z * t, z * x, z * x * t])


def build_design(panel, intervention_time: int) -> DesignMatrix:
    """
    Build the MG-ITSA design matrix of a panel.

    The post indicator is recomputed as t >= intervention_time; the raw period index
    is used for the time regressor (no recentering at the intervention).

    Parameters
    ----------
    panel : pandas.DataFrame
        Panel with columns unit_id, t, treated, post, y.
    intervention_time : int
        First post-intervention period.

    Returns
    -------
    DesignMatrix
    """
    panel = validate_panel(panel)
    t = panel["t"].to_numpy()
    intervention_time = int(intervention_time)
    post = t >= intervention_time
    if post.all() or not post.any():
        raise DegenerateDesignError(
            f"Intervention at t={intervention_time} leaves all observations "
            f"{'post' if post.all() else 'pre'}-intervention (periods {t.min()}..{t.max()})."
        )
    rows = design_columns(t, post, panel["treated"].to_numpy())
    return DesignMatrix(rows=rows, row_unit=panel["unit_id"].to_numpy(), row_time=t)
