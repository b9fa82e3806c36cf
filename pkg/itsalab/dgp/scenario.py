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
"""Scenario inputs of the MG-ITSA data-generating process."""
import os
from functools import lru_cache
from typing import Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from itsalab.dgp.ar_process import ARSpec, spectral_radius
from itsalab.model.panel import halfway_intervention
from itsalab.utils.directories import get_etc_directory
from itsalab.utils.yaml import read_yaml

EFFECT_KINDS = ["level", "trend"]


class ScenarioConfig(BaseModel):
    """
    Group-level inputs of the data-generating process.

    Levels, trends and changes are given per group and resolved into the eight
    MG-ITSA coefficients by :meth:`resolve_betas`.
    Defaults reproduce the null scenario of the simulation design
    (level 10, trend 1, no change, 100 periods, 4 controls, iid unit noise).
    """

    model_config = ConfigDict(extra="forbid")

    n_periods: int = 100
    n_controls: int = 4
    intervention: Union[Literal["halfway"], int] = "halfway"
    level_control: float = 10.0
    level_treated: float = 10.0
    trend_control: float = 1.0
    trend_treated: float = 1.0
    level_change_control: float = 0.0
    level_change_treated: float = 0.0
    post_trend_control: float = 1.0
    post_trend_treated: float = 1.0
    ar: ARSpec = Field(default_factory=ARSpec)
    seed: int = 0

    @field_validator("n_periods")
    @classmethod
    def validate_n_periods(cls, v):
        assert v >= 10, "'n_periods' must be at least 10."
        return v

    @field_validator("n_controls")
    @classmethod
    def validate_n_controls(cls, v):
        assert v >= 1, "'n_controls' must be a positive integer."
        return v

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v):
        assert 0 <= v < 2**64, "'seed' must be a 64-bit nonnegative integer."
        return v

    @field_validator("ar")
    @classmethod
    def validate_ar(cls, v):
        radius = spectral_radius(v.rho)
        assert radius < 1, f"The AR coefficients {v.rho} are not stationary (spectral radius {radius:.4f})."
        return v

    @model_validator(mode="after")
    def check_intervention(self):
        t_star = self.intervention_time()
        assert 3 <= t_star <= self.n_periods - 1, (
            f"The intervention must leave at least two pre and two post periods, got t*={t_star} "
            f"with {self.n_periods} periods."
        )
        return self

    def intervention_time(self) -> int:
        """Return the first post-intervention period."""
        if self.intervention == "halfway":
            return halfway_intervention(self.n_periods)
        return int(self.intervention)

    def resolve_betas(self) -> np.ndarray:
        """Solve the group-level inputs for the coefficients beta_0..beta_7."""
        beta3 = self.post_trend_control - self.trend_control
        return np.array(
            [
                self.level_control,
                self.trend_control,
                self.level_change_control,
                beta3,
                self.level_treated - self.level_control,
                self.trend_treated - self.trend_control,
                self.level_change_treated - self.level_change_control,
                self.post_trend_treated - self.trend_treated - beta3,
            ],
        )

    def true_effect(self, effect_kind: str) -> float:
        """Return beta_6 (``"level"``) or beta_7 (``"trend"``)."""
        if effect_kind not in EFFECT_KINDS:
            raise ValueError(f"Invalid effect_kind '{effect_kind}'. Valid values are {EFFECT_KINDS}.")
        return float(self.resolve_betas()[6 if effect_kind == "level" else 7])

    def null_effect_input(self, effect_kind: str) -> float:
        """Return the treated-side input that makes the chosen difference-in-differences zero."""
        if effect_kind == "level":
            return self.level_change_control
        return self.trend_treated + self.post_trend_control - self.trend_control

    def with_effect(self, effect_kind: str, value: float) -> "ScenarioConfig":
        """Return a copy with the treated level change or post-trend set to ``value``."""
        field = "level_change_treated" if effect_kind == "level" else "post_trend_treated"
        return self.model_copy(update={field: float(value)})


@lru_cache(maxsize=1)
def _read_ar_scenarios():
    filepath = os.path.join(get_etc_directory(), "scenarios", "ar_scenarios.yaml")
    return {int(order): scenarios for order, scenarios in read_yaml(filepath).items()}


def ar_scenarios(order: int) -> dict:
    """Return the named AR coefficient scenarios of an AR order."""
    scenarios = _read_ar_scenarios()
    if order not in scenarios:
        raise ValueError(f"No AR scenarios are defined for order {order}. Available orders: {sorted(scenarios)}.")
    return {name: list(rho) for name, rho in scenarios[order].items()}
