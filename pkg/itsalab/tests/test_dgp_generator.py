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
"""Test the panel generator."""
import numpy as np
import pytest

from itsalab.dgp.ar_process import ARSpec
from itsalab.dgp.generator import gen_panel, unit_ids
from itsalab.dgp.scenario import ScenarioConfig
from itsalab.model.design import design_columns
from itsalab.model.panel import PANEL_COLUMNS, validate_panel
from itsalab.utils.rng import make_seed_sequence


def test_unit_ids():
    assert unit_ids(4) == ([0, 1, 2, 3], 4)


class TestGenPanel:
    def test_layout(self):
        panel = gen_panel(ScenarioConfig(n_periods=12, n_controls=3))
        assert list(panel.columns) == PANEL_COLUMNS
        assert len(panel) == 48
        assert panel.loc[panel["treated"] == 1, "unit_id"].unique().tolist() == [3]
        np.testing.assert_array_equal(panel["post"], (panel["t"] >= 7).astype(int))
        validate_panel(panel)

    def test_noise_free_mean(self, noise_free_scenario, noise_free_panel):
        """Without noise, y is exactly the design times the resolved coefficients."""
        rows = design_columns(noise_free_panel["t"], noise_free_panel["post"], noise_free_panel["treated"])
        expected = rows @ noise_free_scenario.resolve_betas()
        np.testing.assert_allclose(noise_free_panel["y"], expected, rtol=0, atol=1e-12)

    def test_same_seed_same_panel(self):
        scenario = ScenarioConfig(n_periods=30, ar=ARSpec(rho=[0.7, 0.2]), seed=42)
        assert gen_panel(scenario).equals(gen_panel(scenario))

    def test_seed_changes_panel(self):
        scenario = ScenarioConfig(n_periods=30, ar=ARSpec(rho=[0.7]), seed=42)
        other = scenario.model_copy(update={"seed": 43})
        assert not np.allclose(gen_panel(scenario)["y"], gen_panel(other)["y"])

    def test_units_have_independent_streams(self):
        panel = gen_panel(ScenarioConfig(n_periods=30, seed=5))
        y = panel["y"].to_numpy().reshape(5, 30)
        assert not np.allclose(y[0], y[1])

    def test_seed_sequence(self):
        """A SeedSequence overrides the scenario seed."""
        scenario = ScenarioConfig(n_periods=20, seed=0)
        panel1 = gen_panel(scenario, rng=make_seed_sequence(9, "condition", 3))
        panel2 = gen_panel(scenario, rng=make_seed_sequence(9, "condition", 3))
        panel3 = gen_panel(scenario, rng=make_seed_sequence(9, "condition", 4))
        assert panel1.equals(panel2)
        assert not panel1.equals(panel3)

    @pytest.mark.parametrize("n_controls", [1, 6])
    def test_number_of_controls(self, n_controls):
        panel = gen_panel(ScenarioConfig(n_periods=10, n_controls=n_controls))
        assert panel["unit_id"].nunique() == n_controls + 1
