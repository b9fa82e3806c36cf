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
"""Define functions to read and write run configuration files."""
import os

from itsalab.settings.run_config import RunConfig
from itsalab.utils.directories import remove_file_if_exists
from itsalab.utils.json import read_json, write_json
from itsalab.utils.yaml import read_yaml, write_yaml

JSON_EXTENSIONS = [".json"]
YAML_EXTENSIONS = [".yaml", ".yml"]


def _get_format(filepath):
    extension = os.path.splitext(filepath)[1].lower()
    if extension in JSON_EXTENSIONS:
        return "json"
    if extension in YAML_EXTENSIONS:
        return "yaml"
    raise ValueError(f"Unsupported configuration file extension '{extension}'. Use .json, .yaml or .yml.")


def read_run_config(filepath) -> RunConfig:
    """Read and validate a JSON or YAML run configuration file."""
    fmt = _get_format(filepath)
    if not os.path.isfile(filepath):
        raise ValueError(f"The configuration file {filepath} does not exist.")
    config_dict = read_json(filepath) if fmt == "json" else read_yaml(filepath)
    if not isinstance(config_dict, dict):
        raise ValueError(f"The configuration file {filepath} does not contain a mapping.")
    return RunConfig(**config_dict)


def write_run_config(config, filepath, force=False):
    """Write a run configuration to a JSON or YAML file (validated first)."""
    fmt = _get_format(filepath)
    config_dict = RunConfig.model_validate(config).to_dict()
    remove_file_if_exists(filepath, force=force)
    if fmt == "json":
        write_json(config_dict, filepath)
    else:
        write_yaml(config_dict, filepath)
