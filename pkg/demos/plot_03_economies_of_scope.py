"""
Economies of scope and the choice to deter
==========================================

``delta`` controls how much extra value D1 extracts by combining its two
data sources. With ``delta = 0`` the sources simply add up. Stronger scope
economies make each unit of exclusive data more valuable to D1, so
deterrence becomes cheaper relative to sharing the market.
"""

from entrygame import F_LEVELS, MarketParams, SweepSpec, run_sweep, scope_value_normalized

p = MarketParams()
for delta in (0.0, 1.0, 3.0):
    q = scope_value_normalized(p.replace(delta=delta), 0.1, 0.1)
    print(f"delta={delta}: combining 0.1 + 0.1 is worth {q:.4f} units of data")

# %%
# Sweep delta at the low entry cost and report both branches.
rows = run_sweep(SweepSpec("delta", f_levels=(F_LEVELS["low"],)), diagnose=False)
for r in rows:
    print(f"delta={r.param_value:.0f}  {r.regime!s:12} pi1 deter={r.pi1_det:.6f}  "
          f"accommodate={r.pi1_acc:.6f}")
