"""Comparative statics over c0, delta or F.

Each grid point is solved from scratch (no warm starts), so a row never
depends on its neighbours. Both stage-0 branches are kept in every row so
that deter-vs-accommodate curves can be drawn even where one branch loses.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field

from .diagnostics import strategic_effects
from .model import AgentProfits, MarketParams, ParameterError
from .solve import SolveSettings
from .spne import Regime, StageZeroOutcome, solve_spne

log = logging.getLogger(__name__)

SWEEPABLE = ("c0", "delta", "F")
F_LEVELS = {"low": 5e-5, "medium": 5e-4, "high": 7e-4}
DEFAULT_GRIDS = {"c0": (3 / 6, 4 / 6, 5 / 6, 6 / 6), "delta": (0.0, 1.0, 2.0, 3.0, 4.0),
                 "F": tuple(F_LEVELS.values())}
DENSE_RANGES = {"c0": (3 / 6, 6 / 6), "delta": (0.0, 4.0), "F": (5e-5, 7e-4)}


def dense_grid(parameter: str, n: int = 25) -> tuple[float, ...]:
    a, b = DENSE_RANGES[parameter]
    return tuple(a + (b - a) * i / (n - 1) for i in range(n))


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    grid: tuple[float, ...] = ()
    f_levels: tuple[float, ...] = (F_LEVELS["medium"],)
    base: MarketParams = field(default_factory=MarketParams)

    def __post_init__(self):
        if self.parameter not in SWEEPABLE:
            raise ParameterError("parameter", f"must be one of {SWEEPABLE}, got {self.parameter!r}")
        grid = tuple(float(v) for v in (self.grid or DEFAULT_GRIDS.get(self.parameter, ())))
        if not grid:
            raise ParameterError("grid", "must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ParameterError("grid", "must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        levels = (None,) if self.parameter == "F" else tuple(float(f) for f in self.f_levels)
        if not levels:
            raise ParameterError("f_levels", "must be nonempty")
        object.__setattr__(self, "f_levels", levels)
        list(self.points())  # MarketParams validates every grid value

    def points(self):
        """``(param_value, F, MarketParams)`` in output order: F level outer, grid inner."""
        for F in self.f_levels:
            for v in self.grid:
                changes = {self.parameter: v}
                if F is not None:
                    changes["F"] = F
                p = self.base.replace(**changes)
                yield v, p.F, p


@dataclass(frozen=True)
class SweepRow:
    param_value: float
    F: float
    regime: Regime | None
    d0_det: float | None = None
    pi1_det: float | None = None
    d0_acc: float | None = None
    pi1_acc: float | None = None
    d0_monopsony: float | None = None
    d0: float | None = None
    d1: float | None = None
    d2: float | None = None
    w: float | None = None
    w0: float | None = None
    profits: AgentProfits | None = None
    profits_det: AgentProfits | None = None
    profits_acc: AgentProfits | None = None
    sed: float | None = None
    sea: float | None = None
    slope_br2: float | None = None
    slope_br1: float | None = None
    direct_effect: float | None = None
    diag_d0: float | None = None
    error: str | None = None

    @property
    def both_feasible(self) -> bool:
        return self.profits_det is not None and self.profits_acc is not None


def _row(value, F, params, settings, diagnose) -> SweepRow:
    try:
        out: StageZeroOutcome = solve_spne(params, settings)
    except Exception as exc:  # per-row failure is recorded, sweep continues
        log.warning("row %g (F=%g) failed: %s", value, F, exc)
        return SweepRow(param_value=value, F=F, regime=None, error=f"{type(exc).__name__}: {exc}")
    det, acc = out.deter, out.accommodate
    down = out.downstream
    kw = dict(
        param_value=value, F=F, regime=out.regime,
        d0_det=det and det.d0, pi1_det=det and det.pi1,
        d0_acc=acc and acc.d0, pi1_acc=acc and acc.pi1,
        d0_monopsony=det and det.d0_monopsony,
        d0=out.d0, d1=getattr(down, "d1m", None) if not out.entered else down.d1,
        d2=down.d2 if out.entered else 0.0, w=down.w, w0=out.w0, profits=out.profits,
        profits_det=det and det.profits, profits_acc=acc and acc.profits)
    if diagnose:
        d0 = acc.d0 if acc is not None else det.d0
        try:
            d = strategic_effects(params, d0, settings=settings)
            kw.update(sed=d.sed, sea=d.sea, slope_br2=d.slope_br2, slope_br1=d.slope_br1,
                      direct_effect=d.direct_effect, diag_d0=d0)
        except Exception as exc:
            kw.update(diag_d0=d0, error=f"diagnostics: {type(exc).__name__}: {exc}")
    return SweepRow(**kw)


def run_sweep(spec: SweepSpec, settings: SolveSettings | None = None, diagnose: bool = True,
              executor: Executor | None = None) -> list[SweepRow]:
    """Solve the game at every (F level, grid value) pair.

    Diagnostics are taken at the accommodation optimum when accommodation is
    feasible, otherwise at the deterrence ``d0``. Rows come back in the
    order of :meth:`SweepSpec.points` whether or not ``executor`` is used.
    """
    pts = list(spec.points())
    if executor is None:
        return [_row(v, F, p, settings, diagnose) for v, F, p in pts]
    futs = [executor.submit(_row, v, F, p, settings, diagnose) for v, F, p in pts]
    return [f.result() for f in futs]


@dataclass(frozen=True)
class WelfareFinding:
    param_value: float
    F: float
    applicable: bool
    sw_gap: float = math.nan  # sw under deterrence minus sw under accommodation
    d2_prefers_accommodation: bool | None = None
    p1_prefers_accommodation: bool | None = None
    p0_prefers_deterrence: bool | None = None


def welfare_comparison(rows: list[SweepRow]) -> list[WelfareFinding]:
    """Branch-by-branch comparison of welfare and per-agent preferences."""
    out = []
    for r in rows:
        if not r.both_feasible:
            out.append(WelfareFinding(r.param_value, r.F, applicable=False))
            continue
        det, acc = r.profits_det, r.profits_acc
        out.append(WelfareFinding(
            r.param_value, r.F, applicable=True, sw_gap=det.sw - acc.sw,
            d2_prefers_accommodation=acc.pi2 >= det.pi2,
            p1_prefers_accommodation=acc.pi_p1 > det.pi_p1,
            p0_prefers_deterrence=det.pi_p0 > acc.pi_p0))
    return out
