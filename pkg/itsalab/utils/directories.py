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
"""Filesystem helpers."""
import os
import pathlib


def remove_file_if_exists(filepath, force=False):
    """Remove an existing file when `force=True`, otherwise refuse to overwrite it.

    Raise an error if the filepath is an existing directory.
    """
    if not os.path.exists(filepath):
        return
    if os.path.isdir(filepath):
        raise ValueError(f"The specified {filepath} file path is an existing directory !")
    if not force:
        raise ValueError(f"The {filepath} file already exists ! Use force=True to overwrite it.")
    os.remove(filepath)


def ensure_directory(dir_path):
    """Create a directory (and parents) if it does not exist and return its path."""
    os.makedirs(dir_path, exist_ok=True)
    return str(dir_path)


def list_files(dir_path, glob_pattern, recursive=False):
    """Return the sorted list of file paths matching a glob pattern (directories excluded)."""
    dir_path = pathlib.Path(dir_path)
    paths = dir_path.rglob(glob_pattern) if recursive else dir_path.glob(glob_pattern)
    return sorted(str(path) for path in paths if path.is_file())


def get_etc_directory():
    """Return the directory of the resources bundled with itsalab."""
    return os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "etc")
