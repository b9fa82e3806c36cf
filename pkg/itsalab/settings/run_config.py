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
"""Implementation of the pydantic validator of run configurations."""
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from itsalab.dgp.ar_process import ARSpec, is_stationary
from itsalab.dgp.scenario import ScenarioConfig
from itsalab.simulate.condition import GridSpec, expand_grid

SCHEMA_VERSION = 1


class RunConfig(BaseModel):
    """
    A validator of itsalab run configurations.

    A configuration holds simulation grids (``simulate``), a single scenario (``dgp``), or both.
    Omitted fields take the defaults of the simulation design.

    Attributes
    ----------
    schema : int
        Version of the configuration schema. Only 1 is supported.
    description : str
        Free text.
    grids : list of GridSpec
        Monte Carlo grids, run in order.
    scenario : ScenarioConfig, optional
        Scenario of the generated dataset.
    ar_variants : dict
        Named AR coefficient vectors, by AR order, that replace the scenario errors
        (e.g. the applied example with AR[1], AR[2] or AR[3] errors).
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    description: str = ""
    grids: list[GridSpec] = Field(default_factory=list)
    scenario: Optional[ScenarioConfig] = None
    ar_variants: dict[int, list[float]] = Field(default_factory=dict)

    @field_validator("ar_variants")
    @classmethod
    def validate_ar_variants(cls, v):
        for order, rho in v.items():
            assert len(rho) == order, f"The AR[{order}] variant must have {order} coefficients."
            assert is_stationary(rho), f"The AR[{order}] variant {rho} is not stationary."
        return v

    @model_validator(mode="after")
    def check_content(self):
        assert self.grids or self.scenario is not None, "The configuration must define 'grids' or a 'scenario'."
        assert not self.ar_variants or self.scenario is not None, "'ar_variants' requires a 'scenario'."
        return self

    def conditions(self) -> list:
        """Return the conditions of all grids."""
        conditions = []
        for grid in self.grids:
            conditions.extend(expand_grid(grid))
        return conditions

    def with_replications(self, replications: int) -> "RunConfig":
        """Return a copy with the number of replications of every grid replaced."""
        grids = [grid.model_copy(update={"replications": int(replications)}) for grid in self.grids]
        return RunConfig.model_validate({**self.to_dict(), "grids": [grid.model_dump() for grid in grids]})

    def scenario_for(self, ar_order: Optional[int] = None, seed: Optional[int] = None) -> ScenarioConfig:
        """Return the scenario, with the errors of an AR variant and/or another seed."""
        if self.scenario is None:
            raise ValueError("The configuration does not define a scenario.")
        update = {}
        if ar_order is not None:
            if ar_order not in self.ar_variants:
                raise ValueError(f"No AR[{ar_order}] variant. Available orders: {sorted(self.ar_variants)}.")
            update["ar"] = ARSpec(rho=self.ar_variants[ar_order], sigma=self.scenario.ar.sigma)
        if seed is not None:
            update["seed"] = int(seed)
        return ScenarioConfig.model_validate({**self.scenario.model_dump(), **update})

    def to_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


def validate_run_config(config_dict: dict) -> dict:
    """
    Validate a run configuration dictionary.

    Returns
    -------
    dict
        The validated configuration, with defaults filled in.

    Raises
    ------
    pydantic.ValidationError
        If the configuration is invalid or contains unknown keys.
    """
    return RunConfig(**config_dict).to_dict()
