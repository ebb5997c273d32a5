"""
Strategic effects and the business-strategy taxonomy
====================================================

How does an extra unit of exclusive data change the downstream contest?
The strategic effects are finite differences through the duopsony
equilibrium. SED is the effect on the challenger's profit and SEA the
effect on the incumbent's own profit through the rival's response.
"""

from entrygame import MarketParams, classify_strategy, solve_spne, strategic_effects

params = MarketParams()
acc = solve_spne(params).accommodate
d = strategic_effects(params, acc.d0)

print(f"best-response slopes: dBR2/dd1 = {d.slope_br2:.3f}, dBR1/dd2 = {d.slope_br1:.3f}")
print(f"strategic substitutes: {d.substitutes}")
print(f"SED = {d.sed:.4e}   SEA = {d.sea:.4e}   direct effect on D2 = {d.direct_effect}")

# %%
# Quantities are strategic substitutes, so more exclusive data makes D1 tough:
# it hurts the challenger (SED < 0) and helps D1 (SEA > 0). Both branches
# call for overinvestment.
print("deterrence posture:   ", classify_strategy(d, "deter"))
print("accommodation posture:", classify_strategy(d, "accommodate"))

# %%
# At an interior accommodation optimum the direct effect and SEA cancel.
print(f"dPi1/dd0 = {d.total_pi1:.2e} = direct {d.direct_effect_pi1:.4e} + SEA {d.sea:.4e}")
