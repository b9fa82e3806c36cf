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
"""Read and write panel CSV files."""
import json

import pandas as pd

from itsalab.errors import PanelError
from itsalab.model.panel import PANEL_COLUMNS, validate_panel
from itsalab.utils.directories import remove_file_if_exists


def write_panel_csv(panel, filepath, metadata=None, force=False):
    """Write a panel CSV (UTF-8, LF, header ``unit_id,t,treated,post,y``).

    Metadata entries are written first as ``# key: <json value>`` comment lines.
    """
    remove_file_if_exists(filepath, force=force)
    panel = validate_panel(panel)
    with open(filepath, "w", encoding="utf-8", newline="\n") as f:
        for key, value in (metadata or {}).items():
            f.write(f"# {key}: {json.dumps(value)}\n")
        panel.to_csv(f, index=False, lineterminator="\n")


def read_panel_metadata(filepath) -> dict:
    """Read the ``#``-prefixed metadata of a panel CSV."""
    metadata = {}
    with open(filepath, encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition(":")
            try:
                metadata[key.strip()] = json.loads(value)
            except json.JSONDecodeError:
                metadata[key.strip()] = value.strip()
    return metadata


def read_panel_csv(filepath) -> pd.DataFrame:
    """
    Read and validate a panel CSV file.

    Raises
    ------
    PanelError
        If the header differs from ``unit_id,t,treated,post,y`` or a value cannot be parsed.
    """
    try:
        panel = pd.read_csv(filepath, comment="#")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise PanelError(f"Unable to parse the panel file {filepath}: {e}")
    if list(panel.columns) != PANEL_COLUMNS:
        raise PanelError(f"Invalid panel header {list(panel.columns)}. Expected {PANEL_COLUMNS}.")
    for column in PANEL_COLUMNS:
        if not pd.api.types.is_numeric_dtype(panel[column]):
            invalid = pd.to_numeric(panel[column], errors="coerce").isna()
            row = int(invalid.to_numpy().nonzero()[0][0])
            raise PanelError(f"Non-numeric value in column '{column}' at data row {row + 1}.")
    return validate_panel(panel)
