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
"""Shared fixtures of the itsalab test suite."""
import numpy as np
import pandas as pd
import pytest

from itsalab.dgp.ar_process import ARSpec
from itsalab.dgp.generator import gen_panel
from itsalab.dgp.scenario import ScenarioConfig
from itsalab.settings.preset_registry import PresetRegistry


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="Run the slow Monte Carlo tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: Monte Carlo reproduction with thousands of replications")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def make_random_panel(rng, n_periods, n_units=2, intervention=None):
    """Return a panel with standard normal outcomes; the last unit is treated."""
    t = np.arange(1, n_periods + 1)
    intervention = n_periods // 2 + 1 if intervention is None else intervention
    frames = [
        pd.DataFrame(
            {
                "unit_id": unit_id,
                "t": t,
                "treated": int(unit_id == n_units - 1),
                "post": (t >= intervention).astype(int),
                "y": rng.standard_normal(n_periods),
            },
        )
        for unit_id in range(n_units)
    ]
    return pd.concat(frames, ignore_index=True)


@pytest.fixture
def noise_free_scenario():
    return ScenarioConfig(
        n_periods=20,
        level_treated=12.0,
        trend_treated=1.5,
        level_change_control=1.0,
        level_change_treated=3.0,
        post_trend_control=1.2,
        post_trend_treated=2.5,
        ar=ARSpec(rho=[0.5], sigma=0.0),
    )


@pytest.fixture
def noise_free_panel(noise_free_scenario):
    return gen_panel(noise_free_scenario)


@pytest.fixture
def ar1_panel():
    return gen_panel(ScenarioConfig(n_periods=200, ar=ARSpec(rho=[0.6]), seed=123))


@pytest.fixture
def preset_registry():
    """Yield the preset registry and restore the bundled presets afterwards."""
    registry = PresetRegistry.get_instance()
    saved = dict(registry.registry)
    registry.reset()

    yield registry

    registry.reset()
    registry.registry.update(saved)
