"""Strategic-effect decomposition of the incumbent's stage-0 choice.

Total derivative of the challenger's profit in ``d0``::

    dPi2/dd0 = dPi2/dd0|direct + dPi2/dd1 * dd1*/dd0 + dPi2/dd2 * dd2*/dd0

The second term is the deterrence strategic effect (SED). The analogous
cross term for the incumbent, ``dPi1/dd2 * dd2*/dd0``, is the accommodation
strategic effect (SEA). With strategic substitutes the two have opposite
signs.

Partial derivatives hold the equilibrium quantities fixed and re-evaluate
profit functions; derivatives of equilibrium selections re-run the solver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import MarketParams
from .solve import SolverError, SolveSettings
from .spne import Game, _game, solve_duopsony

DEAD_BAND = 1e-8


class Taxonomy(str, enum.Enum):
    TOP_DOG = "TopDog"
    PUPPY_DOG = "PuppyDog"
    LEAN_AND_HUNGRY = "LeanAndHungry"
    FAT_CAT = "FatCat"

    def __str__(self):
        return self.value


class IndeterminateStrategy(ValueError):
    """The effect deciding the classification lies inside the dead-band."""


class IllConditioned(SolverError):
    """Finite-difference estimates disagree across step sizes (equilibrium jump)."""


def _sign(x, band):
    return 0 if abs(x) < band else (1 if x > 0 else -1)


@dataclass(frozen=True)
class StrategicDiagnostics:
    d0: float
    h: float
    d1: float
    d2: float
    sed: float
    sea: float
    direct_effect: float
    direct_effect_pi1: float
    total_pi1: float
    total_pi2: float
    dd1_dd0: float
    dd2_dd0: float
    slope_br2: float
    slope_br1: float
    dead_band: float = DEAD_BAND

    @property
    def substitutes(self) -> bool:
        return self.slope_br2 < 0 and self.slope_br1 < 0

    @property
    def complements(self) -> bool:
        return self.slope_br2 > 0 and self.slope_br1 > 0

    @property
    def consistency_ok(self) -> bool:
        """``sign(sea) == sign(sed) * sign(slope_br2)``; vacuous inside the dead-band."""
        s_sea = _sign(self.sea, self.dead_band)
        s_sed = _sign(self.sed, self.dead_band)
        s_br = _sign(self.slope_br2, self.dead_band)
        if 0 in (s_sea, s_sed, s_br):
            return True
        return s_sea == s_sed * s_br

    @property
    def taxonomy(self) -> Taxonomy | None:
        """Accommodation-mode label, or ``None`` when indeterminate."""
        try:
            return classify_strategy(self, "accommodate")
        except IndeterminateStrategy:
            return None


def _central(f, x, h):
    lo = max(x - h, 0.0)
    return (f(x + h) - f(lo)) / (x + h - lo)


def _raw_effects(g: Game, d0: float, h: float):
    eq = solve_duopsony(g, d0)
    if not eq.converged:
        raise SolverError(f"duopsony did not converge at d0={d0!r}")
    d1, d2 = eq.d1, eq.d2

    def eq_at(x):
        e = solve_duopsony(g, x)
        if not e.converged:
            raise SolverError(f"duopsony did not converge at d0={x!r}")
        return e

    lo = max(d0 - h, 0.0)
    e_hi, e_lo = eq_at(d0 + h), eq_at(lo)
    span = d0 + h - lo
    dd1 = (e_hi.d1 - e_lo.d1) / span
    dd2 = (e_hi.d2 - e_lo.d2) / span
    total_pi1 = (e_hi.pi1 - e_lo.pi1) / span
    total_pi2 = (e_hi.pi2 - e_lo.pi2) / span

    dpi2_dd1 = _central(lambda x: g.profit2(x, d2), d1, h)
    dpi1_dd2 = _central(lambda x: g.profit1(d0, d1, x), d2, h)
    # structurally zero: D2's profit never reads d0
    direct = _central(lambda x: g.profit2(d1, d2), d0, h)
    direct1 = _central(lambda x: g.profit1(x, d1, d2), d0, h)

    slope_br2 = _central(g.br2, d1, h)
    slope_br1 = _central(lambda y: g.br1(d0, y), d2, h)
    return dict(d1=d1, d2=d2, sed=dpi2_dd1 * dd1, sea=dpi1_dd2 * dd2, direct_effect=direct,
                direct_effect_pi1=direct1, total_pi1=total_pi1, total_pi2=total_pi2,
                dd1_dd0=dd1, dd2_dd0=dd2, slope_br2=slope_br2, slope_br1=slope_br1)


def strategic_effects(params: MarketParams | Game, d0: float, h: float = 1e-4,
                      settings: SolveSettings | None = None, check_steps: bool = True,
                      dead_band: float = DEAD_BAND) -> StrategicDiagnostics:
    """Finite-difference strategic effects at ``d0``.

    With ``check_steps`` the estimates are repeated at ``h/2``; a relative
    disagreement above 10% in SED, SEA or either slope raises
    :class:`IllConditioned`.
    """
    g = _game(params, settings)
    r = _raw_effects(g, d0, h)
    if check_steps:
        r2 = _raw_effects(g, d0, h / 2)
        for key in ("sed", "sea", "slope_br2", "slope_br1"):
            a, b = r[key], r2[key]
            if max(abs(a), abs(b)) >= dead_band and abs(a - b) > 0.1 * max(abs(a), abs(b)):
                raise IllConditioned(f"{key} changes from {a:.6g} to {b:.6g} when halving h")
    return StrategicDiagnostics(d0=float(d0), h=h, dead_band=dead_band, **r)


def classify_strategy(diag: StrategicDiagnostics, mode: str) -> Taxonomy:
    """Label the incumbent's posture.

    Deterrence: SED < 0 is top dog, SED > 0 lean and hungry. Accommodation
    with substitutes: SEA > 0 top dog, SEA < 0 lean and hungry; with
    complements: SEA < 0 puppy dog, SEA > 0 fat cat.
    """
    band = diag.dead_band
    if mode in ("deter", "deterrence"):
        s = _sign(diag.sed, band)
        if s == 0:
            raise IndeterminateStrategy(f"|SED|={abs(diag.sed):.3g} is inside the dead-band")
        return Taxonomy.TOP_DOG if s < 0 else Taxonomy.LEAN_AND_HUNGRY
    if mode not in ("accommodate", "accommodation"):
        raise ValueError(f"mode must be 'deter' or 'accommodate', got {mode!r}")
    s = _sign(diag.sea, band)
    if s == 0:
        raise IndeterminateStrategy(f"|SEA|={abs(diag.sea):.3g} is inside the dead-band")
    if diag.substitutes:
        return Taxonomy.TOP_DOG if s > 0 else Taxonomy.LEAN_AND_HUNGRY
    if diag.complements:
        return Taxonomy.FAT_CAT if s > 0 else Taxonomy.PUPPY_DOG
    raise IndeterminateStrategy("best-response slopes have mixed signs")
