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
"""Multiple-group interrupted time series analysis with AR[k] errors."""
import os
from importlib.metadata import PackageNotFoundError, version

from itsalab.dgp import ARSpec, ScenarioConfig, ar_scenarios, gen_panel, read_panel_csv, write_panel_csv  # noqa
from itsalab.estimation import HacConfig, PwConfig, fit_ols_nw, fit_pw  # noqa
from itsalab.model import FitResult, did_level, did_trend, validate_panel, wald_test  # noqa
from itsalab.settings import (  # noqa
    PresetRegistry,
    RunConfig,
    available_presets,
    get_preset,
    read_run_config,
    register_presets,
    validate_run_config,
)
from itsalab.simulate import GridSpec, SimCondition, expand_grid, run_condition, run_grid, summarize  # noqa
from itsalab.utils.directories import get_etc_directory

etc_directory = get_etc_directory()

# Create a module-level instance of PresetRegistry with the bundled presets
presets = PresetRegistry.get_instance()
register_presets(os.path.join(etc_directory, "presets"), verbose=False)

__all__ = []

# Get version
try:
    __version__ = version("itsalab")
except PackageNotFoundError:
    # package is not installed
    __version__ = "0.0.0"
