"""Closed-form economic primitives of the data-market entry game.

Two aggregators buy data: the incumbent D1 buys ``d0`` from its exclusive
producer P0 and ``d1`` from the shared producer P1; the challenger D2 buys
``d2`` from P1 after paying the entry cost ``F``. Producers are price takers
with quadratic costs, so prices follow the inverse supply ``w = 2 c d``.

Value of data is the logistic scale curve applied to the (scope-combined)
quantity. Two value models are available:

``"printed"``
    Scope ``((d0+1)^p + (d1+1)^p)^(1+delta) - 1`` with ``p = 1/(1+delta)``
    and revenue equal to the scale value. Here ``scope(0, 0) > 0`` and a
    challenger with no data still earns ``eta_0``.
``"normalized"`` (default)
    Scope ``((d0+1)^p + (d1+1)^p - 1)^(1+delta) - 1`` so that
    ``scope(d, 0) == d``, and revenue measured relative to the zero-data
    value, ``scale(d) - eta_0``.

All functions accept floats or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Literal

import numpy as np

ValueModel = Literal["normalized", "printed"]
VALUE_MODELS = ("normalized", "printed")


class ParameterError(ValueError):
    """Raised when a model parameter or quantity is outside its domain."""

    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}")
        self.name = name


def _check_nonneg(name, value):
    if np.any(np.asarray(value) < 0):
        raise ParameterError(name, f"must be >= 0, got {value!r}")


@dataclass(frozen=True)
class MarketParams:
    """Exogenous constants of the model.

    Defaults are the baseline calibration: ``eta_max=1``, ``eta_0=0.05``,
    ``k=3``, ``delta=1``, ``c=2/3``, ``c0=5/6`` and the medium entry cost
    ``F=0.0005``.
    """

    eta_max: float = 1.0
    eta_0: float = 0.05
    k: float = 3.0
    delta: float = 1.0
    c: float = 2.0 / 3.0
    c0: float = 5.0 / 6.0
    F: float = 0.0005
    value_model: ValueModel = "normalized"

    def __post_init__(self):
        for f in fields(self):
            if f.name == "value_model":
                continue
            v = getattr(self, f.name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ParameterError(f.name, f"must be a finite number, got {v!r}")
            object.__setattr__(self, f.name, float(v))
        if self.eta_max <= 0:
            raise ParameterError("eta_max", "must be > 0")
        if not 0 < self.eta_0 < self.eta_max:
            raise ParameterError("eta_0", f"must satisfy 0 < eta_0 < eta_max={self.eta_max}")
        if self.k <= 0:
            raise ParameterError("k", "must be > 0")
        if self.delta < 0:
            raise ParameterError("delta", "must be >= 0")
        if self.c <= 0:
            raise ParameterError("c", "must be > 0")
        if self.c0 <= 0:
            raise ParameterError("c0", "must be > 0")
        if self.F < 0:
            raise ParameterError("F", "must be >= 0")
        if self.value_model not in VALUE_MODELS:
            raise ParameterError("value_model", f"must be one of {VALUE_MODELS}")

    def replace(self, **changes) -> "MarketParams":
        return replace(self, **changes)

    @property
    def d_m(self) -> float:
        return derive_dm(self)

    @property
    def revenue_offset(self) -> float:
        """Constant subtracted from scale value to obtain revenue."""
        return self.eta_0 if self.value_model == "normalized" else 0.0


def derive_dm(params: MarketParams) -> float:
    """Diminishing-return threshold such that the scale curve passes through eta_0 at zero."""
    if not 0 < params.eta_0 < params.eta_max:
        raise ParameterError("eta_0", "must satisfy 0 < eta_0 < eta_max")
    return math.log(params.eta_max / params.eta_0 - 1.0) / params.k


@dataclass(frozen=True)
class ScaleCurve:
    """Logistic scale-effect curve with its threshold precomputed."""

    params: MarketParams
    d_m: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "d_m", derive_dm(self.params))

    def __call__(self, d):
        return scale_value(self, d)

    def derivative(self, d):
        v = scale_value(self, d)
        return self.params.k * v * (1.0 - v / self.params.eta_max)


def scale_value(curve: ScaleCurve, d):
    """``eta_max / (1 + exp(-k (d - d_m)))``."""
    _check_nonneg("d", d)
    p = curve.params
    return p.eta_max / (1.0 + np.exp(-p.k * (d - curve.d_m)))


def _scope(delta, d1, d2, inner_offset):
    if delta == 0:
        return d1 + d2 + (1.0 - inner_offset)
    p = 1.0 / (1.0 + delta)
    s = (d1 + 1.0) ** p + (d2 + 1.0) ** p - inner_offset
    return s ** (1.0 + delta) - 1.0


def scope_value(params: MarketParams, d1, d2):
    """Superadditive combination of two data sources, as printed.

    ``((d1+1)^(1/(1+delta)) + (d2+1)^(1/(1+delta)))^(1+delta) - 1``.
    Note ``scope_value(p, 0, 0) == 2**(1+delta) - 1``.
    """
    _check_nonneg("d1", d1)
    _check_nonneg("d2", d2)
    return _scope(params.delta, d1, d2, 0.0)


def scope_value_normalized(params: MarketParams, d1, d2):
    """Scope combination shifted so that a single source passes through unchanged.

    ``((d1+1)^p + (d2+1)^p - 1)^(1+delta) - 1`` with ``p = 1/(1+delta)``;
    equals ``d1`` when ``d2 == 0`` and ``d1 + d2`` when ``delta == 0``.
    """
    _check_nonneg("d1", d1)
    _check_nonneg("d2", d2)
    return _scope(params.delta, d1, d2, 1.0)


def combined_quantity(params: MarketParams, d0, d1):
    """Scope-combined quantity fed to D1's scale curve under the active value model."""
    if params.value_model == "normalized":
        return scope_value_normalized(params, d0, d1)
    return scope_value(params, d0, d1)


def incumbent_revenue(params: MarketParams, d0, d1, curve: ScaleCurve | None = None):
    """D1 gross revenue from ``d0`` exclusive and ``d1`` shared data."""
    curve = curve or ScaleCurve(params)
    return scale_value(curve, combined_quantity(params, d0, d1)) - params.revenue_offset


def challenger_revenue(params: MarketParams, d2, curve: ScaleCurve | None = None):
    """D2 gross revenue from ``d2`` shared data."""
    curve = curve or ScaleCurve(params)
    return scale_value(curve, d2) - params.revenue_offset


def inverse_supply(cost_coeff: float, d):
    """Price at which a quadratic-cost, price-taking producer supplies ``d``."""
    _check_nonneg("d", d)
    return 2.0 * cost_coeff * d


def producer_profit(cost_coeff: float, w, d):
    """``w d - cost_coeff d^2``."""
    _check_nonneg("d", d)
    _check_nonneg("w", w)
    return w * d - cost_coeff * d * d


@dataclass(frozen=True)
class AgentProfits:
    """Profits of the four agents; ``sw`` is always their sum in fixed order."""

    pi1: float
    pi2: float
    pi_p1: float
    pi_p0: float
    sw: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sw", ((self.pi1 + self.pi2) + self.pi_p1) + self.pi_p0)


def aggregator_profits(params: MarketParams, d0: float, d1: float, d2: float,
                       entered: bool) -> AgentProfits:
    """Profit accounting for all agents along a given path of play.

    When the challenger stays out, ``d2`` is ignored and its profit is zero.
    """
    _check_nonneg("d0", d0)
    _check_nonneg("d1", d1)
    _check_nonneg("d2", d2)
    if not entered:
        d2 = 0.0
    curve = ScaleCurve(params)
    w = inverse_supply(params.c, d1 + d2)
    w0 = inverse_supply(params.c0, d0)
    pi1 = incumbent_revenue(params, d0, d1, curve) - w * d1 - w0 * d0
    pi2 = challenger_revenue(params, d2, curve) - w * d2 - params.F if entered else 0.0
    return AgentProfits(
        pi1=float(pi1),
        pi2=float(pi2),
        pi_p1=float(producer_profit(params.c, w, d1 + d2)),
        pi_p0=float(producer_profit(params.c0, w0, d0)),
    )
