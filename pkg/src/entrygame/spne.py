"""Backward induction through the four stages of the entry game.

Stage 2.b  D1 alone buys ``d1`` from P1 (monopsony).
Stage 2.a  D1 and D2 choose ``d1``, ``d2`` simultaneously (Cournot duopsony).
Stage 1    D2 enters iff its duopsony profit is nonnegative.
Stage 0    D1 picks ``d0`` either to keep D2 out (deter / blockade) or to
           maximize its duopsony profit once D2 is in (accommodate).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import brentq

from .model import AgentProfits, MarketParams, _scope, aggregator_profits, derive_dm
from .solve import (FixedPointReport, SolverError, SolveSettings, best_response_fixed_point,
                    golden_section, maximize_scalar)

log = logging.getLogger(__name__)

DEFAULT_SETTINGS = SolveSettings()


class Regime(str, enum.Enum):
    BLOCKADE = "Blockade"
    DETER = "Deter"
    ACCOMMODATE = "Accommodate"

    def __str__(self):
        return self.value


class Game:
    """Objectives and their derivatives for fixed parameters.

    Skips the domain checks of :mod:`entrygame.model` since solvers only
    evaluate inside ``[0, hi]``.
    """

    def __init__(self, params: MarketParams, settings: SolveSettings | None = None):
        self.params = params
        self.settings = settings or DEFAULT_SETTINGS
        self.d_m = derive_dm(params)
        self.hi = self.settings.hi if self.settings.hi is not None else 5.0 * self.d_m
        self.inner = self.settings.with_bounds(self.settings.lo, self.hi)
        self._off = 1.0 if params.value_model == "normalized" else 0.0

    def _scale(self, d):
        p = self.params
        return p.eta_max / (1.0 + np.exp(-p.k * (d - self.d_m)))

    def _dscale(self, d):
        v = self._scale(d)
        return self.params.k * v * (1.0 - v / self.params.eta_max)

    def scope(self, d0, d1):
        return _scope(self.params.delta, d0, d1, self._off)

    def dscope(self, d0, d1):
        """Derivative of the scope combination in its second argument."""
        delta = self.params.delta
        if delta == 0:
            return 1.0
        p = 1.0 / (1.0 + delta)
        s = (d0 + 1.0) ** p + (d1 + 1.0) ** p - self._off
        return s**delta * (d1 + 1.0) ** (p - 1.0)

    def revenue1(self, d0, d1):
        return self._scale(self.scope(d0, d1)) - self.params.revenue_offset

    def revenue2(self, d2):
        return self._scale(d2) - self.params.revenue_offset

    def profit1(self, d0, d1, d2):
        """D1 profit including the exclusive-data payment ``w0 d0``."""
        c, c0 = self.params.c, self.params.c0
        return self.revenue1(d0, d1) - 2.0 * c * (d1 + d2) * d1 - 2.0 * c0 * d0 * d0

    def profit2(self, d1, d2):
        return self.revenue2(d2) - 2.0 * self.params.c * (d1 + d2) * d2 - self.params.F

    def dprofit1(self, d0, d1, d2):
        """Derivative of :meth:`profit1` in ``d1``."""
        q = self.scope(d0, d1)
        return self._dscale(q) * self.dscope(d0, d1) - 2.0 * self.params.c * (2.0 * d1 + d2)

    def dprofit2(self, d1, d2):
        """Derivative of :meth:`profit2` in ``d2``."""
        return self._dscale(d2) - 2.0 * self.params.c * (d1 + 2.0 * d2)

    def br1(self, d0, d2):
        x, _ = maximize_scalar(lambda x: self.profit1(d0, x, d2), self.inner,
                               df=lambda x: self.dprofit1(d0, x, d2))
        self._check_interior("d1", x)
        return x

    def br2(self, d1):
        x, _ = maximize_scalar(lambda x: self.profit2(d1, x), self.inner,
                               df=lambda x: self.dprofit2(d1, x))
        self._check_interior("d2", x)
        return x

    def _check_interior(self, name, x):
        if x >= self.hi:
            raise SolverError(f"{name} optimum hit the upper search bound {self.hi:.6g}; raise hi")


@dataclass(frozen=True)
class MonopsonyOutcome:
    d0: float
    d1m: float
    w: float
    w0: float
    pi1: float


@dataclass(frozen=True)
class DuopsonyEquilibrium:
    d0: float
    d1: float
    d2: float
    w: float
    w0: float
    pi1: float
    pi2: float
    report: FixedPointReport

    @property
    def converged(self) -> bool:
        return self.report.converged


def _game(params, settings):
    return params if isinstance(params, Game) else Game(params, settings)


def solve_monopsony(params: MarketParams | Game, d0: float,
                    settings: SolveSettings | None = None) -> MonopsonyOutcome:
    """Stage 2.b: D1's optimal purchase from P1 when D2 stayed out."""
    g = _game(params, settings)
    if d0 < 0:
        raise ValueError(f"d0 must be >= 0, got {d0}")
    d1 = g.br1(d0, 0.0)
    p = g.params
    return MonopsonyOutcome(d0=float(d0), d1m=d1, w=2.0 * p.c * d1, w0=2.0 * p.c0 * d0,
                            pi1=float(g.profit1(d0, d1, 0.0)))


def solve_duopsony(params: MarketParams | Game, d0: float, settings: SolveSettings | None = None,
                   init: tuple[float, float] = (0.0, 0.0)) -> DuopsonyEquilibrium:
    """Stage 2.a: Nash equilibrium in purchased quantities, by damped best responses.

    Non-convergence is flagged in ``report``; the caller decides what to do.
    """
    g = _game(params, settings)
    if d0 < 0:
        raise ValueError(f"d0 must be >= 0, got {d0}")
    (d1, d2), report = best_response_fixed_point(
        lambda y: g.br1(d0, y), g.br2, init, g.settings)
    p = g.params
    return DuopsonyEquilibrium(
        d0=float(d0), d1=d1, d2=d2, w=2.0 * p.c * (d1 + d2), w0=2.0 * p.c0 * d0,
        pi1=float(g.profit1(d0, d1, d2)), pi2=float(g.profit2(d1, d2)), report=report)


def entry_decision(params: MarketParams, eq: DuopsonyEquilibrium) -> bool:
    """Stage 1: the challenger enters iff its duopsony profit is nonnegative."""
    return eq.pi2 >= 0.0


@dataclass(frozen=True)
class DeterrenceResult:
    d0: float
    pi1: float
    blockaded: bool
    d0_monopsony: float
    pi1_monopsony: float
    downstream: MonopsonyOutcome
    counterfactual: DuopsonyEquilibrium
    profits: AgentProfits


@dataclass(frozen=True)
class AccommodationResult:
    d0: float
    pi1: float
    downstream: DuopsonyEquilibrium
    profits: AgentProfits
    interior: bool


class Stage0Scan:
    """Coarse scan of ``d0`` with the counterfactual duopsony solved at every point.

    Holds the feasible intervals for deterrence (``pi2 <= -eps_det``) and
    accommodation (``pi2 >= 0``) with their ends refined by root finding.
    Grid points whose inner fixed point did not converge are dropped and
    counted in ``invalid``.
    """

    def __init__(self, game: Game):
        self.game = game
        s = game.settings
        self.grid = np.linspace(s.lo, game.hi, s.stage0_grid_n + 1)
        self.eqs = [solve_duopsony(game, float(d0)) for d0 in self.grid]
        self.valid = np.array([e.converged for e in self.eqs])
        self.invalid = int((~self.valid).sum())
        if self.invalid:
            log.warning("%d of %d stage-0 scan points had a non-convergent duopsony",
                        self.invalid, len(self.grid))
        self.pi2 = np.array([e.pi2 if e.converged else math.nan for e in self.eqs])
        self.pi1 = np.array([e.pi1 if e.converged else math.nan for e in self.eqs])

    def _pi2(self, d0):
        eq = solve_duopsony(self.game, d0)
        if not eq.converged:
            raise SolverError(f"duopsony did not converge at d0={d0!r}")
        return eq.pi2

    def _boundary(self, inside, outside, level, keep):
        """Point closest to the ``pi2 == level`` crossing that still satisfies ``keep``."""
        fun = lambda d0: self._pi2(d0) - level
        try:
            r = brentq(fun, inside, outside, xtol=1e-13)
        except (ValueError, SolverError):
            return inside
        step = 1e-13 * (1 if inside > outside else -1)
        for _ in range(64):
            if keep(self._pi2(r)):
                return r
            r += step
            step *= 2
        return inside

    def _intervals(self, member, level, keep):
        out = []
        n = len(self.grid)
        j = 0
        while j < n:
            if not (self.valid[j] and member[j]):
                j += 1
                continue
            start = j
            while j + 1 < n and self.valid[j + 1] and member[j + 1]:
                j += 1
            lo, hi = self.grid[start], self.grid[j]
            if start > 0 and self.valid[start - 1]:
                lo = self._boundary(self.grid[start], self.grid[start - 1], level, keep)
            if j + 1 < n and self.valid[j + 1]:
                hi = self._boundary(self.grid[j], self.grid[j + 1], level, keep)
            out.append((float(lo), float(hi)))
            j += 1
        return out

    @cached_property
    def deter_intervals(self):
        eps = self.game.settings.eps_det
        return self._intervals(self.pi2 <= -eps, -eps, lambda v: v <= -eps)

    @cached_property
    def accommodate_intervals(self):
        return self._intervals(self.pi2 >= 0.0, 0.0, lambda v: v >= 0.0)


def _monopsony_value(game, d0):
    return solve_monopsony(game, d0).pi1


def _maximize_on(fun, lo, hi, settings, n):
    if hi - lo <= settings.tol_x:
        return lo, fun(lo)
    return maximize_scalar(fun, SolveSettings(lo=lo, hi=hi, grid_n=n, tol_x=settings.tol_x))


def solve_deterrence(params: MarketParams | Game, settings: SolveSettings | None = None,
                     scan: Stage0Scan | None = None) -> DeterrenceResult | None:
    """Best entry-proof ``d0`` given monopsony continuation, or ``None`` if none exists.

    The challenger is kept out when its counterfactual duopsony profit is at
    most ``-eps_det``. Entry is blockaded when the unconstrained monopsony
    optimum already satisfies that.
    """
    g = _game(params, settings)
    s = g.settings
    scan = scan or Stage0Scan(g)
    value = lambda d0: _monopsony_value(g, float(d0))
    d0u, piu = maximize_scalar(value, SolveSettings(lo=s.lo, hi=g.hi, grid_n=s.stage0_grid_n,
                                                    tol_x=s.tol_x))
    if d0u >= g.hi:
        log.warning("unconstrained d0 optimum sits on the upper bound %.6g", g.hi)
    cf_u = solve_duopsony(g, d0u)
    if cf_u.converged and cf_u.pi2 <= -s.eps_det:
        best = (d0u, piu)
    else:
        best = None
        for lo, hi in scan.deter_intervals:
            cand = _maximize_on(value, lo, hi, s, max(8, s.stage0_grid_n // 4))
            if best is None or cand[1] > best[1]:
                best = cand
        if best is None:
            return None
    d0, pi1 = float(best[0]), float(best[1])
    mono = solve_monopsony(g, d0)
    cf = cf_u if d0 == d0u else solve_duopsony(g, d0)
    return DeterrenceResult(
        d0=d0, pi1=pi1, blockaded=abs(d0 - d0u) <= 10 * s.tol_x, d0_monopsony=d0u,
        pi1_monopsony=piu, downstream=mono, counterfactual=cf,
        profits=aggregator_profits(g.params, d0, mono.d1m, 0.0, entered=False))


def solve_accommodation(params: MarketParams | Game, settings: SolveSettings | None = None,
                        scan: Stage0Scan | None = None) -> AccommodationResult | None:
    """Best ``d0`` given that the challenger enters, or ``None`` if entry never pays."""
    g = _game(params, settings)
    s = g.settings
    scan = scan or Stage0Scan(g)

    def value(d0):
        eq = solve_duopsony(g, float(d0))
        return eq.pi1 if eq.converged else -math.inf

    best = None
    for lo, hi in scan.accommodate_intervals:
        cands = [lo, hi]
        idx = np.flatnonzero((scan.grid >= lo) & (scan.grid <= hi) & scan.valid)
        vals = scan.pi1[idx]
        for m, j in enumerate(idx):
            left = vals[m - 1] if m > 0 else -math.inf
            right = vals[m + 1] if m + 1 < len(idx) else -math.inf
            if vals[m] >= left and vals[m] >= right:
                a = max(lo, scan.grid[j - 1]) if j > 0 else lo
                b = min(hi, scan.grid[j + 1]) if j + 1 < len(scan.grid) else hi
                cands.append(golden_section(value, a, b, s.tol_x) if b > a else a)
        for d0 in cands:
            v = value(d0)
            if best is None or v > best[1] or (v == best[1] and d0 < best[0]):
                best = (float(d0), v)
    if best is None:
        return None
    d0 = best[0]
    eq = solve_duopsony(g, d0)
    if eq.pi2 < 0:
        raise SolverError(f"accommodation optimum d0={d0!r} is not entry-feasible")
    interior = all(not (abs(d0 - lo) <= 10 * s.tol_x or abs(d0 - hi) <= 10 * s.tol_x)
                   for lo, hi in scan.accommodate_intervals)
    return AccommodationResult(
        d0=d0, pi1=eq.pi1, downstream=eq, interior=interior,
        profits=aggregator_profits(g.params, d0, eq.d1, eq.d2, entered=True))


@dataclass(frozen=True)
class StageZeroOutcome:
    """Subgame-perfect outcome plus the value of both stage-0 branches."""

    params: MarketParams
    regime: Regime
    d0: float
    w0: float
    entered: bool
    downstream: MonopsonyOutcome | DuopsonyEquilibrium
    profits: AgentProfits
    deter: DeterrenceResult | None
    accommodate: AccommodationResult | None
    invalid_scan_points: int = 0

    @property
    def pi1_deter(self) -> float | None:
        return None if self.deter is None else self.deter.pi1

    @property
    def pi1_accommodate(self) -> float | None:
        return None if self.accommodate is None else self.accommodate.pi1


def solve_spne(params: MarketParams, settings: SolveSettings | None = None) -> StageZeroOutcome:
    """Full subgame-perfect equilibrium; ties between branches go to deterrence."""
    g = _game(params, settings)
    scan = Stage0Scan(g)
    det = solve_deterrence(g, scan=scan)
    acc = solve_accommodation(g, scan=scan)
    if det is None and acc is None:
        raise SolverError("neither deterrence nor accommodation is feasible within the d0 bounds")
    if det is not None and (acc is None or det.pi1 >= acc.pi1):
        regime = Regime.BLOCKADE if det.blockaded else Regime.DETER
        d0, down, profits = det.d0, det.downstream, det.profits
    else:
        regime = Regime.ACCOMMODATE
        d0, down, profits = acc.d0, acc.downstream, acc.profits
    return StageZeroOutcome(
        params=g.params, regime=regime, d0=d0, w0=2.0 * g.params.c0 * d0,
        entered=regime is Regime.ACCOMMODATE, downstream=down, profits=profits,
        deter=det, accommodate=acc, invalid_scan_points=scan.invalid)
