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
"""Monte Carlo conditions and grids."""
import itertools
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from itsalab.dgp.ar_process import ARSpec
from itsalab.dgp.scenario import EFFECT_KINDS, ScenarioConfig, ar_scenarios
from itsalab.errors import InvalidOrderError
from itsalab.estimation.olsnw import HacConfig
from itsalab.estimation.praisk import PwConfig
from itsalab.model.results import METHODS
from itsalab.utils.json import dict_hash

MODES = ["primary", "sensitivity", "misspecification"]

# Treated unit inputs (level change, post-treatment trend) of the effect-size axis
DEFAULT_EFFECT_SIZES = {"level": [2.0, 2.5, 3.0], "trend": [1.25, 1.5, 2.0]}

DEFAULT_N_PERIODS = list(range(10, 101, 10))


def _check_methods(methods):
    assert len(methods) > 0, "At least one method is required."
    invalid = [m for m in methods if m not in METHODS]
    assert not invalid, f"Invalid methods {invalid}. Valid methods are {METHODS}."
    assert len(set(methods)) == len(methods), "'methods' contains duplicates."
    return methods


class SimCondition(BaseModel):
    """
    One cell of a Monte Carlo design.

    Attributes
    ----------
    scenario : ScenarioConfig
        Data-generating inputs, including the series length and the AR error process.
    effect_kind : str
        Target coefficient: ``"level"`` (beta_6) or ``"trend"`` (beta_7).
    effect_input : float
        Treated-unit input of the effect-size axis (level change or post-treatment trend).
        Filled from the scenario if not specified.
    true_effect : float
        True value of the target coefficient, 0 for Type I error conditions.
        Filled from the scenario if not specified.
    fit_order : int
        AR order fitted by Prais-Winsten. Defaults to the order of the errors (at least 1).
    """

    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioConfig
    scenario_name: str = "custom"
    mode: Literal["primary", "sensitivity", "misspecification"] = "primary"
    effect_kind: Literal["level", "trend"] = "trend"
    effect_input: Optional[float] = None
    true_effect: Optional[float] = None
    fit_order: Optional[int] = None
    methods: list[str] = Field(default_factory=lambda: list(METHODS))
    replications: int = 2000
    alpha: float = 0.05
    base_seed: int = 0
    hac: HacConfig = Field(default_factory=HacConfig)
    pw: PwConfig = Field(default_factory=PwConfig)

    @field_validator("methods")
    @classmethod
    def validate_methods(cls, v):
        return _check_methods(v)

    @field_validator("replications")
    @classmethod
    def validate_replications(cls, v):
        assert v >= 2, "At least 2 replications are required."
        return v

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v):
        assert 0 < v < 1, "'alpha' must be in (0, 1)."
        return v

    @field_validator("pw")
    @classmethod
    def validate_pw(cls, v):
        assert v.fixed_rho is None, "'fixed_rho' cannot be used in simulations."
        return v

    @model_validator(mode="after")
    def fill_effect(self):
        truth = self.scenario.true_effect(self.effect_kind)
        if self.true_effect is None:
            self.true_effect = truth
        assert abs(self.true_effect - truth) <= 1e-9, (
            f"'true_effect'={self.true_effect} does not match the scenario {self.effect_kind} effect {truth}."
        )
        if self.effect_input is None:
            field = "level_change_treated" if self.effect_kind == "level" else "post_trend_treated"
            self.effect_input = float(getattr(self.scenario, field))
        if self.fit_order is None:
            self.fit_order = max(self.scenario.ar.k, 1)
        assert self.fit_order >= 1, "'fit_order' must be a positive integer."
        return self

    @property
    def ar_order(self) -> int:
        return self.scenario.ar.k

    @property
    def n_periods(self) -> int:
        return self.scenario.n_periods

    @property
    def is_null(self) -> bool:
        return self.true_effect == 0

    @property
    def coef_index(self) -> int:
        return 6 if self.effect_kind == "level" else 7

    def pw_config(self) -> PwConfig:
        return self.pw.model_copy(update={"k": self.fit_order})


def condition_key(cond: SimCondition) -> str:
    """Return a stable, filename-safe key identifying a condition."""
    return (
        f"{cond.mode}_ar{cond.ar_order}_{cond.scenario_name}_{cond.effect_kind}"
        f"_{cond.effect_input:g}_T{cond.n_periods}_fit{cond.fit_order}"
    )


def condition_hash(cond: SimCondition) -> str:
    """Return a short hash of every setting of a condition (replications, seed, estimators included)."""
    return dict_hash(cond.model_dump(mode="json"))[:12]


def dataset_key(cond: SimCondition) -> str:
    """Return the key of the simulated datasets of a condition.

    Conditions sharing the same scenario (whatever the mode, target coefficient or fitted order)
    are evaluated on the same datasets.
    """
    return dict_hash(cond.scenario.model_dump(exclude={"seed"}))[:16]


def condition_sort_key(cond: SimCondition):
    return (
        MODES.index(cond.mode),
        cond.ar_order,
        cond.scenario_name,
        EFFECT_KINDS.index(cond.effect_kind),
        cond.effect_input,
        cond.n_periods,
        cond.fit_order,
    )


def misspec_condition(scenario: ScenarioConfig, fit_order: int, **kwargs) -> SimCondition:
    """
    Return the condition fitting Prais-Winsten with AR order ``fit_order`` to the scenario data.

    Only underspecification (1 <= fit_order <= AR order of the errors) is allowed.
    Newey-West fits do not depend on the fitted order.
    """
    k = scenario.ar.k
    if not 1 <= fit_order <= k:
        raise InvalidOrderError(f"The fitted AR order must be in 1..{k}, got {fit_order}.")
    mode = kwargs.pop("mode", "misspecification" if fit_order < k else "primary")
    return SimCondition(scenario=scenario, fit_order=fit_order, mode=mode, **kwargs)


####-------------------------------------------------------------------------------------------------------------------.
#### Grids


class GridSpec(BaseModel):
    """
    Axes of a Monte Carlo study.

    The grid is the cartesian product of scenarios, effect kinds, effect sizes,
    series lengths and fitted AR orders. In ``"sensitivity"`` mode the effect sizes come from
    the scenario overrides (combined level and trend change) and both coefficients are evaluated.
    """

    model_config = ConfigDict(extra="forbid")

    mode: Literal["primary", "sensitivity", "misspecification"] = "primary"
    ar_order: int = 2
    scenarios: Optional[list[str]] = None
    custom_scenarios: dict[str, list[float]] = Field(default_factory=dict)
    effect_kinds: list[Literal["level", "trend"]] = Field(default_factory=lambda: ["trend"])
    effect_sizes: Optional[list[float]] = None
    include_null: bool = True
    n_periods: list[int] = Field(default_factory=lambda: list(DEFAULT_N_PERIODS))
    fit_orders: Optional[list[int]] = None
    methods: list[str] = Field(default_factory=lambda: list(METHODS))
    replications: int = 2000
    base_seed: int = 0
    alpha: float = 0.05
    n_controls: int = 4
    sigma: float = 1.0
    scenario: dict = Field(default_factory=dict)
    hac: HacConfig = Field(default_factory=HacConfig)
    pw: PwConfig = Field(default_factory=PwConfig)

    @field_validator("ar_order")
    @classmethod
    def validate_ar_order(cls, v):
        assert v >= 0, "'ar_order' must be a nonnegative integer."
        return v

    @field_validator("methods")
    @classmethod
    def validate_methods(cls, v):
        return _check_methods(v)

    @field_validator("n_periods")
    @classmethod
    def validate_n_periods(cls, v):
        assert len(v) > 0, "'n_periods' must list at least one series length."
        return v

    @field_validator("effect_kinds")
    @classmethod
    def validate_effect_kinds(cls, v):
        assert len(v) > 0, "'effect_kinds' must list at least one effect kind."
        return v

    @field_validator("scenario")
    @classmethod
    def validate_scenario_overrides(cls, v):
        forbidden = {"n_periods", "n_controls", "ar", "seed"}.intersection(v)
        assert not forbidden, f"The scenario overrides cannot set {sorted(forbidden)}. Use the grid axes."
        ScenarioConfig(**v)
        return v

    @model_validator(mode="after")
    def check_orders(self):
        for fit_order in self.fit_orders or []:
            assert 1 <= fit_order <= max(self.ar_order, 1), (
                f"Fitted AR orders must be in 1..{max(self.ar_order, 1)}, got {fit_order}."
            )
        if self.effect_sizes is not None:
            assert self.mode != "sensitivity", "'effect_sizes' cannot be set in sensitivity mode."
            assert len(self.effect_kinds) == 1, "'effect_sizes' requires a single effect kind."
        return self

    def rho_scenarios(self) -> dict:
        """Return the AR coefficient scenarios of the grid, by name."""
        if self.custom_scenarios:
            available = dict(self.custom_scenarios)
        else:
            available = ar_scenarios(self.ar_order)
        names = list(available) if self.scenarios is None else self.scenarios
        missing = [name for name in names if name not in available]
        if missing:
            raise ValueError(f"Unknown AR scenarios {missing}. Available scenarios: {list(available)}.")
        rho_scenarios = {name: available[name] for name in names}
        for name, rho in rho_scenarios.items():
            if len(rho) != self.ar_order:
                raise ValueError(f"The AR scenario '{name}' has {len(rho)} coefficients, expected {self.ar_order}.")
        return rho_scenarios

    def resolved_fit_orders(self) -> list:
        if self.fit_orders is not None:
            return list(self.fit_orders)
        if self.mode == "misspecification":
            return list(range(1, self.ar_order + 1))
        return [max(self.ar_order, 1)]

    def effect_inputs(self, base: ScenarioConfig, effect_kind: str) -> list:
        """Return the treated-unit inputs evaluated for an effect kind (null first, if included)."""
        if self.mode == "sensitivity":
            field = "level_change_treated" if effect_kind == "level" else "post_trend_treated"
            inputs = [float(getattr(base, field))]
        elif self.effect_sizes is not None:
            inputs = list(self.effect_sizes)
        else:
            inputs = list(DEFAULT_EFFECT_SIZES[effect_kind])
        if self.include_null:
            inputs = [base.null_effect_input(effect_kind), *inputs]
        return list(dict.fromkeys(float(v) for v in inputs))


def expand_grid(spec) -> list:
    """
    Expand a grid specification into the sorted list of its conditions.

    Parameters
    ----------
    spec : GridSpec or dict
        Grid axes.

    Returns
    -------
    list of SimCondition
    """
    spec = GridSpec.model_validate(spec)
    conditions = []
    for name, rho in spec.rho_scenarios().items():
        ar = ARSpec(rho=rho, sigma=spec.sigma)
        for effect_kind, n_periods in itertools.product(spec.effect_kinds, spec.n_periods):
            base = ScenarioConfig(**spec.scenario, n_periods=n_periods, n_controls=spec.n_controls, ar=ar)
            for effect_input, fit_order in itertools.product(
                spec.effect_inputs(base, effect_kind),
                spec.resolved_fit_orders(),
            ):
                conditions.append(
                    SimCondition(
                        scenario=base.with_effect(effect_kind, effect_input),
                        scenario_name=name,
                        mode=spec.mode,
                        effect_kind=effect_kind,
                        effect_input=effect_input,
                        fit_order=fit_order,
                        methods=spec.methods,
                        replications=spec.replications,
                        alpha=spec.alpha,
                        base_seed=spec.base_seed,
                        hac=spec.hac,
                        pw=spec.pw,
                    ),
                )
    if not conditions:
        raise ValueError("The grid is empty.")
    return sorted(conditions, key=condition_sort_key)
