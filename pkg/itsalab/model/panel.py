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
"""Panel layout of a multiple-group interrupted time series.

A panel is a pandas DataFrame in long format with one row per unit and period and
the columns ``unit_id, t, treated, post, y``.
"""
import numpy as np
import pandas as pd

from itsalab.errors import DegenerateDesignError, MissingObservationError, PanelError

PANEL_COLUMNS = ["unit_id", "t", "treated", "post", "y"]


def halfway_intervention(n_periods: int) -> int:
    """Return the first post-intervention period of a series starting at t=1."""
    return int(n_periods) // 2 + 1


def _check_columns(panel):
    if not isinstance(panel, pd.DataFrame):
        raise PanelError("The panel must be a pandas.DataFrame.")
    missing = [column for column in PANEL_COLUMNS if column not in panel.columns]
    if missing:
        raise PanelError(f"The panel is missing the columns {missing}. Expected {PANEL_COLUMNS}.")
    if len(panel) == 0:
        raise PanelError("The panel is empty.")


def _check_binary(panel, column):
    invalid = ~panel[column].isin([0, 1, True, False])
    if invalid.any():
        row = int(np.flatnonzero(invalid.to_numpy())[0])
        raise PanelError(f"Column '{column}' must be 0/1. Invalid value at row {row}.")


def _check_periods(panel):
    periods = np.sort(panel["t"].unique())
    for unit_id, unit in panel.groupby("unit_id", sort=True):
        t = unit["t"].to_numpy()
        if len(np.unique(t)) != len(t):
            raise PanelError(f"Unit {unit_id} has duplicated periods.")
        if np.any(np.diff(t) != 1):
            gap = int(t[np.flatnonzero(np.diff(t) != 1)[0]])
            raise MissingObservationError(f"Unit {unit_id} has a gap in its periods after t={gap}.")
        if len(t) != len(periods) or np.any(t != periods):
            missing = np.setdiff1d(periods, t)
            raise MissingObservationError(f"Unit {unit_id} lacks the periods {missing.tolist()}.")


def _check_treatment(panel):
    treated_by_unit = panel.groupby("unit_id")["treated"].agg(["min", "max"])
    inconsistent = treated_by_unit.index[treated_by_unit["min"] != treated_by_unit["max"]]
    if len(inconsistent) > 0:
        raise PanelError(f"The 'treated' flag varies within unit {inconsistent[0]}.")
    n_treated = int(treated_by_unit["max"].sum())
    if n_treated != 1:
        raise PanelError(f"Exactly one unit must have treated=1, found {n_treated}.")


def _check_post(panel):
    for unit_id, unit in panel.groupby("unit_id", sort=True):
        if np.any(np.diff(unit["post"].to_numpy()) < 0):
            raise PanelError(f"The 'post' flag of unit {unit_id} is not monotone nondecreasing in t.")


def validate_panel(panel: pd.DataFrame) -> pd.DataFrame:
    """
    Check a panel and return its canonical copy.

    The canonical panel is sorted by unit_id then t and has integer
    unit_id, t, treated, post columns and a float y column.

    Raises
    ------
    PanelError
        If columns are missing, flags are not binary, the treated flag varies within a unit,
        the number of treated units differs from one or post decreases in time.
    MissingObservationError
        If any unit lacks a period or has a gap.
    """
    _check_columns(panel)
    panel = panel[PANEL_COLUMNS].copy()
    if panel[["unit_id", "t", "y"]].isna().any().any():
        raise PanelError("The panel contains missing values.")
    _check_binary(panel, "treated")
    _check_binary(panel, "post")
    panel = panel.astype({"unit_id": np.int64, "t": np.int64, "treated": np.int64, "post": np.int64, "y": float})
    panel = panel.sort_values(["unit_id", "t"], kind="stable").reset_index(drop=True)
    _check_periods(panel)
    _check_treatment(panel)
    _check_post(panel)
    return panel


def infer_intervention_time(panel: pd.DataFrame) -> int:
    """Return the first period flagged post in the panel."""
    post_periods = panel.loc[panel["post"] == 1, "t"]
    if len(post_periods) == 0:
        raise DegenerateDesignError("No observation is flagged as post-intervention.")
    return int(post_periods.min())
