"""
Solving the entry game at the baseline calibration
==================================================

The incumbent D1 first buys exclusive data ``d0`` from P0. It then faces a
challenger D2 that enters only if the post-entry duopsony pays off. Backward
induction solves the downstream markets for every ``d0`` and lets D1 pick
the better of two branches: keep the challenger out, or let it in.
"""

from entrygame import MarketParams, solve_spne

# Baseline constants with the medium entry cost F = 0.0005.
params = MarketParams()
print(params)
print(f"diminishing-return threshold d_m = {params.d_m:.4f}")

# %%
# The solver returns the chosen regime together with both branches.
out = solve_spne(params)
print(f"regime: {out.regime}  (d0 = {out.d0:.5f}, challenger enters: {out.entered})")

det, acc = out.deter, out.accommodate
print(f"deterrence   d0 = {det.d0:.5f}  pi1 = {det.pi1:.6f}  "
      f"(unconstrained monopsony d0 = {det.d0_monopsony:.5f})")
print(f"accommodate  d0 = {acc.d0:.5f}  pi1 = {acc.pi1:.6f}")

# %%
# Deterrence binds: D1 buys just enough exclusive data that the challenger's
# post-entry profit falls below zero.
print(f"challenger profit if it entered anyway: {det.counterfactual.pi2:.3e}")

# %%
# Profits of all four agents along the equilibrium path; welfare is their sum.
pr = out.profits
print(f"D1 {pr.pi1:.6f}  D2 {pr.pi2:.6f}  P1 {pr.pi_p1:.6f}  P0 {pr.pi_p0:.6f}  SW {pr.sw:.6f}")
