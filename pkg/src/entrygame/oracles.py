"""Brute-force reference solutions on uniform grids.

These deliberately avoid the solver machinery: profits are rebuilt from the
public primitives in :mod:`entrygame.model` and maximized by exhaustive
enumeration.
"""

from __future__ import annotations

import numpy as np

from .model import (MarketParams, ScaleCurve, challenger_revenue, derive_dm, incumbent_revenue,
                    inverse_supply)


def _grid(params, step, hi):
    hi = 5.0 * derive_dm(params) if hi is None else hi
    return np.arange(0.0, hi + 0.5 * step, step)


def grid_argmax(f, lo: float, hi: float, step: float) -> float:
    xs = np.arange(lo, hi + 0.5 * step, step)
    return float(xs[int(np.argmax(f(xs)))])


def monopsony_grid(params: MarketParams, d0: float, step: float = 1e-5, hi: float | None = None):
    xs = _grid(params, step, hi)
    curve = ScaleCurve(params)
    v = incumbent_revenue(params, d0, xs, curve) - inverse_supply(params.c, xs) * xs
    return float(xs[int(np.argmax(v))])


def duopsony_grid_nash(params: MarketParams, d0: float, step: float = 1e-3, hi: float = 2.0):
    """Grid pair with the smallest worst-player regret against unilateral grid deviations.

    Returns ``(d1, d2, regret)``; ``regret == 0`` means an exact grid Nash
    equilibrium.
    """
    xs = np.arange(0.0, hi + 0.5 * step, step)
    curve = ScaleCurve(params)
    d1 = xs[:, None]
    d2 = xs[None, :]
    w = inverse_supply(params.c, d1 + d2)
    pi1 = incumbent_revenue(params, d0, d1, curve) - w * d1
    regret = pi1.max(axis=0, keepdims=True) - pi1
    del pi1
    pi2 = challenger_revenue(params, d2, curve) - w * d2
    regret = np.maximum(regret, pi2.max(axis=1, keepdims=True) - pi2)
    i, j = np.unravel_index(int(np.argmin(regret)), regret.shape)
    return float(xs[i]), float(xs[j]), float(regret[i, j])


def random_draw(rng: np.random.Generator) -> tuple[MarketParams, float]:
    """Random parameters in the oracle-equivalence box plus a random ``d0``."""
    p = MarketParams(c=rng.uniform(0.4, 1.2), c0=rng.uniform(0.4, 1.2),
                     delta=rng.uniform(0.0, 3.0), F=rng.uniform(1e-5, 1e-3))
    return p, float(rng.uniform(0.0, 1.0))
