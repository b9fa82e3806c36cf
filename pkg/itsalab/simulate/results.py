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
"""Long-format simulation results and their metadata sidecar."""
import datetime
import os

import pandas as pd

from itsalab.utils.directories import ensure_directory, remove_file_if_exists
from itsalab.utils.json import dict_hash, write_json
from itsalab.utils.rng import RNG_NAME

RESULT_COLUMNS = [
    "mode",
    "ar_order",
    "scenario",
    "effect_kind",
    "effect_size",
    "T",
    "method",
    "fit_order",
    "replications",
    "power",
    "coverage",
    "type1_applicable",
    "pct_bias",
    "rmse",
    "empirical_se",
    "mean_model_se",
    "n_failed",
]


def results_to_frame(records) -> pd.DataFrame:
    """
    Build the results table from (condition, method, PerfSummary) records.

    The ``pct_bias`` column holds the absolute bias for Type I error conditions (true effect 0).
    """
    rows = []
    for cond, method, summary in records:
        rows.append(
            {
                **_condition_values(cond),
                "method": method,
                "power": summary.power,
                "coverage": summary.coverage,
                "type1_applicable": bool(cond.is_null),
                "pct_bias": summary.bias if cond.is_null else summary.pct_bias,
                "rmse": summary.rmse,
                "empirical_se": summary.empirical_se,
                "mean_model_se": summary.mean_model_se,
                "n_failed": summary.n_failed,
            },
        )
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)


def write_partial(frame, filepath):
    ensure_directory(os.path.dirname(filepath) or ".")
    frame.to_csv(filepath, index=False, lineterminator="\n", float_format="%.17g")


def _condition_values(cond):
    return {
        "mode": cond.mode,
        "ar_order": cond.ar_order,
        "scenario": cond.scenario_name,
        "effect_kind": cond.effect_kind,
        "effect_size": cond.effect_input,
        "T": cond.n_periods,
        "fit_order": cond.fit_order,
        "replications": cond.replications,
    }


def read_partial(filepath, cond=None) -> pd.DataFrame:
    """
    Read the results of a completed condition.

    Raises
    ------
    ValueError
        If the file is not a results file, or if ``cond`` is given and the rows
        do not belong to it (other settings or methods).
    """
    frame = pd.read_csv(filepath, dtype={"scenario": str, "mode": str, "effect_kind": str, "method": str})
    if list(frame.columns) != RESULT_COLUMNS:
        raise ValueError(f"{filepath} is not a simulation results file.")
    frame["type1_applicable"] = frame["type1_applicable"].astype(bool)
    if cond is not None:
        mismatched = [
            column for column, value in _condition_values(cond).items() if not (frame[column] == value).all()
        ]
        if frame["method"].tolist() != list(cond.methods):
            mismatched.append("method")
        if mismatched:
            raise ValueError(f"{filepath} does not match the condition settings (columns {mismatched}).")
    return frame


def write_results(frame, filepath, force=False):
    """Write the results table as CSV (UTF-8, LF)."""
    remove_file_if_exists(filepath, force=force)
    ensure_directory(os.path.dirname(filepath) or ".")
    frame.to_csv(filepath, index=False, lineterminator="\n", float_format="%.10g")


def run_metadata(config, seed) -> dict:
    """Return the fields identifying a run: package version, random generator, seed and configuration hash."""
    from itsalab import __version__

    return {
        "itsalab_version": __version__,
        "rng": RNG_NAME,
        "seed": None if seed is None else int(seed),
        "config_hash": dict_hash(config),
    }


def write_metadata(filepath, config, seed, wall_time, n_conditions=None, force=False, extra=None):
    """
    Write the JSON sidecar needed to reproduce a run.

    Parameters
    ----------
    filepath : str
        Output JSON file path.
    config : dict
        Validated run configuration.
    seed : int
        Base seed of the run.
    wall_time : float
        Elapsed seconds.
    extra : dict, optional
        Additional entries written before the configuration (e.g. fit results).
    """
    remove_file_if_exists(filepath, force=force)
    metadata = {
        **run_metadata(config, seed),
        "wall_time_s": round(float(wall_time), 3),
        "n_conditions": n_conditions,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        **(extra or {}),
        "config": config,
    }
    write_json(metadata, filepath)
    return metadata


def summary_table(frame, value="power") -> pd.DataFrame:
    """Pivot a results table into one column per method (plot data)."""
    index = ["mode", "ar_order", "scenario", "effect_kind", "effect_size", "fit_order", "T"]
    table = frame.pivot_table(index=index, columns="method", values=value, aggfunc="first")
    table.columns.name = None
    return table
