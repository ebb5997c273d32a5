"""Scalar maximization and best-response fixed points.

Every decision variable in the game is a bounded nonnegative scalar, so a
coarse grid scan followed by local refinement is enough to locate global
maxima reliably. When the caller supplies the objective's derivative, the
refinement solves the first-order condition with Brent's method, which pins
the argmax far below the ``sqrt(eps)`` floor of derivative-free search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.optimize import brentq

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class SolverError(RuntimeError):
    """Numerical failure inside a solver (non-finite objective, bad bracket...)."""


@dataclass(frozen=True)
class SolveSettings:
    """Numerical settings shared by all stage solvers.

    ``hi=None`` means "five diminishing-return thresholds", resolved per
    model by the stage solvers. ``stage0_grid_n`` is the resolution of the
    outer scan over ``d0`` (each point costs one duopsony solve).
    ``eps_det`` is the margin by which the challenger's counterfactual profit
    must be negative for entry to count as deterred.
    """

    lo: float = 0.0
    hi: float | None = None
    grid_n: int = 400
    tol_x: float = 1e-9
    tol_fp: float = 1e-10
    max_iter: int = 500
    damping: float = 0.5
    stage0_grid_n: int = 120
    eps_det: float = 1e-9

    def __post_init__(self):
        if self.hi is not None and not self.lo < self.hi:
            raise ValueError(f"lo must be < hi, got lo={self.lo}, hi={self.hi}")
        if self.grid_n < 2 or self.stage0_grid_n < 2:
            raise ValueError("grid resolutions must be >= 2")
        if self.tol_x <= 0 or self.tol_fp <= 0 or self.eps_det < 0:
            raise ValueError("tolerances must be > 0")
        if not 0 < self.damping <= 1:
            raise ValueError(f"damping must lie in (0, 1], got {self.damping}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")

    def with_bounds(self, lo: float, hi: float) -> "SolveSettings":
        return replace(self, lo=float(lo), hi=float(hi))


@dataclass(frozen=True)
class FixedPointReport:
    converged: bool
    iterations: int
    residual: float


def _evaluate_grid(f, xs):
    try:
        v = np.asarray(f(xs), dtype=float)
        if v.shape != xs.shape:
            raise ValueError
    except (ValueError, TypeError):
        v = np.array([f(float(x)) for x in xs], dtype=float)
    if not np.all(np.isfinite(v)):
        bad = xs[~np.isfinite(v)][0]
        raise SolverError(f"objective is not finite at x={bad!r}")
    return v


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Maximize a unimodal ``f`` on ``[a, b]`` to bracket width ``tol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _refine(f, df, xs, i, tol_x):
    n = len(xs) - 1
    a, xm, b = xs[max(i - 1, 0)], xs[i], xs[min(i + 1, n)]
    if df is not None:
        ga, gm, gb = float(df(a)), float(df(xm)), float(df(b))
        if gm == 0.0:
            return xm
        if gm < 0 and i > 0 and ga > 0:
            return brentq(df, a, xm, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        if gm > 0 and i < n and gb < 0:
            return brentq(df, xm, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        if (i == 0 and gm < 0) or (i == n and gm > 0):
            return xm
    if a == b:
        return xm
    return golden_section(lambda t: float(f(t)), a, b, tol_x)


def maximize_scalar(f: Callable, settings: SolveSettings, df: Callable | None = None):
    """Global maximum of ``f`` on ``[settings.lo, settings.hi]``.

    Scans ``grid_n + 1`` equispaced points (ties go to the smaller
    argument), then refines inside the two cells around the best grid point.
    Endpoints are admissible answers.

    Returns:
        ``(argmax, max_value)``.
    """
    if settings.hi is None:
        raise SolverError("maximize_scalar needs a finite upper bound")
    xs = np.linspace(settings.lo, settings.hi, settings.grid_n + 1)
    v = _evaluate_grid(f, xs)
    i = int(np.argmax(v))
    x = float(_refine(f, df, xs, i, settings.tol_x))
    fx = float(f(x))
    if not math.isfinite(fx):
        raise SolverError(f"objective is not finite at x={x!r}")
    if not fx > v[i]:
        return float(xs[i]), float(v[i])
    return x, fx


def best_response_fixed_point(br1: Callable[[float], float], br2: Callable[[float], float],
                              init: tuple[float, float], settings: SolveSettings):
    """Damped simultaneous best-response iteration.

    ``x <- (1 - damping) x + damping BR(x)`` until the largest coordinate
    step is at most ``tol_fp`` or ``max_iter`` is reached.

    Returns:
        ``((d1, d2), FixedPointReport)``. On convergence the pair is the last
        undamped best response. Non-convergence is reported, not raised.
    """
    a = settings.damping
    d1, d2 = float(init[0]), float(init[1])
    residual = math.inf
    for it in range(1, settings.max_iter + 1):
        b1, b2 = br1(d2), br2(d1)
        n1 = (1.0 - a) * d1 + a * b1
        n2 = (1.0 - a) * d2 + a * b2
        residual = max(abs(n1 - d1), abs(n2 - d2))
        d1, d2 = n1, n2
        if residual <= settings.tol_fp:
            # the last best responses sit on corners exactly; damped iterates only approach them
            return (b1, b2), FixedPointReport(True, it, residual)
    return (d1, d2), FixedPointReport(False, settings.max_iter, residual)
