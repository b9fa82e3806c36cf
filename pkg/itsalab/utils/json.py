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
"""JSON utility."""
import hashlib
import json

import numpy as np


def _to_builtin(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable.")


def read_json(filepath: str) -> dict:
    """Read a JSON file into a dictionary."""
    with open(filepath, encoding="utf-8") as f:
        return json.load(f)


def write_json(dictionary, filepath, indent=2):
    """Write a dictionary (numpy values allowed) into a JSON file."""
    with open(filepath, "w", encoding="utf-8", newline="\n") as f:
        json.dump(dictionary, f, indent=indent, default=_to_builtin)
        f.write("\n")


def dict_hash(dictionary) -> str:
    """Return the SHA-256 hex digest of the canonical JSON encoding of a dictionary."""
    payload = json.dumps(dictionary, sort_keys=True, separators=(",", ":"), default=_to_builtin)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
