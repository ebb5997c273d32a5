"""
Why revenue is measured relative to the zero-data value
=======================================================

The scale curve passes through ``eta_0`` at zero data. If a challenger's
revenue were the raw curve value, it would earn ``eta_0`` without buying
anything. Entry would then pay whenever ``F < eta_0``, which covers every
entry cost studied here. The ``"printed"`` value model keeps that literal
reading. The default ``"normalized"`` model subtracts ``eta_0`` and shifts
the scope function so that a single source passes through unchanged.
"""

from entrygame import MarketParams, solve_spne

for model in ("printed", "normalized"):
    p = MarketParams(value_model=model)
    out = solve_spne(p)
    print(f"{model:10}  regime={out.regime!s:12} pi2={out.profits.pi2:.5f}  "
          f"deterrence feasible: {out.deter is not None}")
