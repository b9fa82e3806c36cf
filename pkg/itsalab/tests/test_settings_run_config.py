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
"""Test the RunConfig validator."""
import pytest
from pydantic import ValidationError

from itsalab.settings.run_config import RunConfig, validate_run_config

SCENARIO_DICT = {"n_periods": 40, "post_trend_treated": 0.5, "ar": {"rho": [0.7, 0.2], "sigma": 3.0}, "seed": 5}


class TestRunConfig:
    def test_grid_defaults(self):
        config = RunConfig(grids=[{}])
        assert config.schema_version == 1
        assert len(config.conditions()) == 120

    def test_schema_alias(self):
        config = RunConfig(**{"schema": 1, "grids": [{"ar_order": 3}]})
        assert config.to_dict()["schema"] == 1

    def test_unsupported_schema(self):
        with pytest.raises(ValidationError):
            RunConfig(**{"schema": 2, "grids": [{}]})

    def test_empty(self):
        with pytest.raises(ValidationError) as excinfo:
            RunConfig()
        assert "The configuration must define 'grids' or a 'scenario'" in str(excinfo.value)

    def test_unknown_key(self):
        with pytest.raises(ValidationError):
            RunConfig(grids=[{}], threads=4)

    def test_validate_run_config(self):
        config_dict = validate_run_config({"grids": [{"n_periods": [20]}]})
        assert config_dict["grids"][0]["replications"] == 2000
        assert config_dict["grids"][0]["n_periods"] == [20]

    def test_conditions_of_all_grids(self):
        config = RunConfig(grids=[{"n_periods": [20]}, {"ar_order": 3, "n_periods": [20, 30]}])
        assert len(config.conditions()) == 12 + 24

    def test_with_replications(self):
        config = RunConfig(grids=[{"n_periods": [20]}, {"ar_order": 3}])
        updated = config.with_replications(10)
        assert [grid.replications for grid in updated.grids] == [10, 10]
        assert updated.grids[1].ar_order == 3
        assert config.grids[0].replications == 2000


class TestScenarioConfig:
    def test_scenario_for(self):
        config = RunConfig(scenario=SCENARIO_DICT, ar_variants={1: [0.7], 3: [0.6, 0.25, 0.1]})
        assert config.scenario_for() == config.scenario
        scenario = config.scenario_for(ar_order=3, seed=9)
        assert scenario.ar.rho == [0.6, 0.25, 0.1]
        assert scenario.ar.sigma == 3.0
        assert scenario.seed == 9
        assert scenario.n_periods == 40

    def test_missing_variant(self):
        config = RunConfig(scenario=SCENARIO_DICT, ar_variants={1: [0.7]})
        with pytest.raises(ValueError) as excinfo:
            config.scenario_for(ar_order=2)
        assert "No AR[2] variant" in str(excinfo.value)

    def test_without_scenario(self):
        with pytest.raises(ValueError):
            RunConfig(grids=[{}]).scenario_for()

    @pytest.mark.parametrize(
        "ar_variants,message",
        [
            ({2: [0.7]}, "The AR[2] variant must have 2 coefficients"),
            ({2: [0.7, 0.35]}, "is not stationary"),
        ],
    )
    def test_invalid_variants(self, ar_variants, message):
        with pytest.raises(ValidationError) as excinfo:
            RunConfig(scenario=SCENARIO_DICT, ar_variants=ar_variants)
        assert message in str(excinfo.value)

    def test_variants_require_scenario(self):
        with pytest.raises(ValidationError) as excinfo:
            RunConfig(grids=[{}], ar_variants={1: [0.5]})
        assert "'ar_variants' requires a 'scenario'" in str(excinfo.value)

    def test_to_dict_round_trip(self):
        config = RunConfig(scenario=SCENARIO_DICT, ar_variants={1: [0.7]})
        assert RunConfig(**config.to_dict()) == config
