"""
Regime map over the exclusive-data cost
=======================================

Cheap exclusive data lets the incumbent grow so large that entry never pays
(blockade). As ``c0`` rises, keeping the challenger out needs a deliberate
overinvestment (deterrence). With a low entry cost that overinvestment is
eventually too expensive and the incumbent accommodates.
"""

from entrygame import F_LEVELS, SweepSpec, run_sweep

levels = tuple(F_LEVELS.values())
rows = run_sweep(SweepSpec("c0", f_levels=levels), diagnose=False)

# %%
# One line per entry cost, one column per c0 in {3/6, 4/6, 5/6, 6/6}.
for name, F in F_LEVELS.items():
    labels = [f"{r.regime!s:12}" for r in rows if r.F == F]
    print(f"{name:6} F={F:<8g} " + " ".join(labels))

# %%
# Deterrence holds d0 at the entry-proof threshold, so it does not move with
# c0 inside a Deter segment while the incumbent's profit keeps falling.
for r in rows:
    if r.F == F_LEVELS["medium"]:
        print(f"c0={r.param_value:.3f}  {r.regime!s:12} d0={r.d0:.5f}  pi1={r.profits.pi1:.6f}")
