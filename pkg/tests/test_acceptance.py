"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run under pytest (lines are printed even with output capture on) or
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from entrygame.diagnostics import DEAD_BAND, strategic_effects
from entrygame.model import (MarketParams, ScaleCurve, scale_value, scope_value,
                             scope_value_normalized)
from entrygame.oracles import duopsony_grid_nash, monopsony_grid, random_draw
from entrygame.spne import (Game, Regime, entry_decision, solve_duopsony, solve_monopsony,
                            solve_spne)
from entrygame.statics import F_LEVELS, SweepSpec, run_sweep, welfare_comparison

LOW, MED, HIGH = F_LEVELS["low"], F_LEVELS["medium"], F_LEVELS["high"]
B, D, A = Regime.BLOCKADE, Regime.DETER, Regime.ACCOMMODATE
P = MarketParams()
SEED = 20240601
H = 1e-6


def _all_rows(ctx):
    return [r for sweep in (ctx["c0"], ctx["delta"]) for rows in sweep.values() for r in rows]


def crit1(ctx):
    got = [r.regime for r in ctx["c0"][MED]]
    return got == [B, B, D, D], "medium F: " + ", ".join(map(str, got))


def crit2(ctx):
    got = [r.regime for r in ctx["c0"][LOW]]
    return got == [B, D, A, A], "low F: " + ", ".join(map(str, got))


def crit3(ctx):
    feas = {F: {r.param_value for r in ctx["c0"][F] if r.d0_acc is not None} for F in (MED, HIGH)}
    ok = feas[HIGH] <= feas[MED]
    return ok, f"high-F feasible c0 {sorted(feas[HIGH])} within medium-F {sorted(feas[MED])}"


def crit4(ctx):
    rows = _all_rows(ctx)
    findings = [w for w in welfare_comparison(rows) if w.applicable]
    worst = min(w.sw_gap for w in findings)
    return bool(findings) and worst >= -1e-9, \
        f"{len(findings)} both-feasible points, min(sw_det - sw_acc) = {worst:.3e}"


def crit5(ctx):
    rows = [r for r in _all_rows(ctx) if r.both_feasible]
    pi2 = min(r.profits_acc.pi2 for r in rows)
    p0 = all(r.profits_det.pi_p0 > r.profits_acc.pi_p0 for r in rows)
    return bool(rows) and pi2 >= 0 and p0, \
        f"{len(rows)} points, min pi2_acc = {pi2:.3e}, P0 prefers deter everywhere: {p0}"


def crit6(ctx):
    rows = [r for r in _all_rows(ctx) if r.d0_acc is not None]
    bad = [r for r in rows
           if r.error or r.diag_d0 != r.d0_acc or not (r.slope_br2 < -DEAD_BAND)
           or not (r.slope_br1 < -DEAD_BAND) or not (r.sea > DEAD_BAND)
           or not abs(r.direct_effect) <= 1e-10]
    worst = max(abs(r.direct_effect) for r in rows)
    return bool(rows) and not bad, \
        f"{len(rows)} accommodation optima, {len(bad)} violations, max |direct| = {worst:.1e}"


def crit7(ctx):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    ok = True
    for _ in range(10):
        p, d0 = random_draw(rng)
        m, m_ref = solve_monopsony(p, d0).d1m, monopsony_grid(p, d0, step=1e-3)
        eq = solve_duopsony(p, d0)
        r1, r2, _ = duopsony_grid_nash(p, d0, step=1e-3)
        err = max(abs(m - m_ref), abs(eq.d1 - r1), abs(eq.d2 - r2))
        worst = max(worst, err)
        ok &= eq.converged and err <= 5e-3
    return ok, f"10 draws (seed {SEED}), max coordinate error = {worst:.2e}"


def _invariants(ctx):
    """Yield (name, ok) for every invariant."""
    qs = np.linspace(0.0, 3.0, 13)
    for delta in (0.0, 0.5, 1.0, 3.0):
        p = P.replace(delta=delta)
        yield "eta_A(0) = eta_0", abs(scale_value(ScaleCurve(p), 0.0) - p.eta_0) <= 1e-12
        for a, b in itertools.product(qs, qs):
            yield "superadditivity floor", scope_value(p, a, b) >= a + b + 1 - 1e-12
            yield "symmetry", scope_value(p, a, b) == scope_value(p, b, a)
            yield "normalized symmetry", \
                scope_value_normalized(p, a, b) == scope_value_normalized(p, b, a)
            if delta == 0.0:
                yield "delta=0 collapse", scope_value(p, a, b) == a + b + 1.0
    out = ctx["spne"]
    g = Game(P)
    paths = [out.accommodate.downstream, out.deter.counterfactual,
             solve_duopsony(g, 0.0), solve_duopsony(g, 0.3)]
    for eq in paths:
        for q, f in ((eq.d1, lambda x: g.profit1(eq.d0, x, eq.d2)),
                     (eq.d2, lambda x: g.profit2(eq.d1, x))):
            if q > 1e-9:
                yield "FOC residual", abs((f(q + H) - f(q - H)) / (2 * H)) <= 1e-5
            else:
                yield "corner KKT", (f(q + H) - f(q)) / H <= 1e-5
    m = out.deter.downstream
    f = lambda x: g.profit1(m.d0, x, 0.0)
    yield "monopsony FOC", abs((f(m.d1m + H) - f(m.d1m - H)) / (2 * H)) <= 1e-5
    for rows in ctx["c0"].values():
        for r in rows:
            if r.regime is D:
                cf = solve_duopsony(P.replace(c0=r.param_value, F=r.F), r.d0)
                yield "entry-proof Deter", cf.pi2 < 0
    yield "backward induction: monopsony", \
        abs(solve_monopsony(P, out.d0).d1m - m.d1m) <= 1e-9
    yield "backward induction: no entry", not entry_decision(P, solve_duopsony(P, out.d0))
    acc = out.accommodate
    eq = solve_duopsony(P, acc.d0)
    yield "backward induction: duopsony", max(abs(eq.d1 - acc.downstream.d1),
                                              abs(eq.d2 - acc.downstream.d2)) <= 1e-9


def crit8(ctx):
    failed = sorted({name for name, ok in _invariants(ctx) if not ok})
    n = sum(1 for _ in _invariants(ctx))
    return not failed, f"{n} checks" + (", failed: " + "; ".join(failed) if failed else "")


def crit9(ctx):
    d = strategic_effects(P, ctx["spne"].accommodate.d0)
    gap = abs(d.direct_effect_pi1 + d.sea - d.total_pi1)
    return abs(d.total_pi1) <= 1e-4 and gap <= 1e-4, \
        f"dPi1/dd0 = {d.total_pi1:.2e}, |direct + SEA - total| = {gap:.2e}"


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9]


def report(n, ok, detail):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.fixture(scope="module")
def ctx(c0_sweep, delta_sweep, default_spne):
    return {"c0": c0_sweep, "delta": delta_sweep, "spne": default_spne}


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, ctx, capsys):
    ok, detail = CRITERIA[n - 1](ctx)
    with capsys.disabled():
        print("\n" + report(n, ok, detail))
    assert ok, detail


def build_context():
    levels = (LOW, MED, HIGH)

    def sweep(param):
        rows = run_sweep(SweepSpec(parameter=param, f_levels=levels))
        return {F: [r for r in rows if r.F == F] for F in levels}

    return {"c0": sweep("c0"), "delta": sweep("delta"), "spne": solve_spne(P)}


if __name__ == "__main__":
    import sys
    c = build_context()
    results = [fn(c) for fn in CRITERIA]
    for n, (ok, detail) in enumerate(results, 1):
        print(report(n, ok, detail))
    sys.exit(0 if all(ok for ok, _ in results) else 1)
