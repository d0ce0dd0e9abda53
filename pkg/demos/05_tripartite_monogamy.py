# %% [markdown]
# # Residual contangles and where monogamy bends
#
# For each triple the report keeps the minimum over focus modes of
# C_{r|st} - C_{r|s} - C_{r|t}, with contangle = squared log-negativity.
# For mixed states this squared negativity is not a convex-roof measure,
# so nothing forces the residual to stay non-negative. This script finds
# a point of the two-sphere model where it does go negative.

# %%
import numpy as np

from cavmagnon import TWO_PI, solve_point, table1_setup
from cavmagnon.entanglement import all_residual_contangles, entanglement_report

wb, G = TWO_PI * 10e6, TWO_PI * 4e6
double = table1_setup(g1=G, g2=G)

# %%
sol = solve_point(double.with_(delta_1=-wb, delta_2=-wb))
report = entanglement_report(sol.V, True)
print({k: round(report[k], 5) for k in ("R_am1m2", "R_bm1m2")})

# %% [markdown]
# Scan the anti-diagonal Delta_1 = -Delta_2 and track the smallest of the
# twelve residuals (four triples times three focus choices).

# %%
worst = (0.0, None, None)
for d in np.linspace(-1.5, 1.5, 61):
    sol = solve_point(double.with_(delta_1=d * wb, delta_2=-d * wb))
    if not sol.stability.stable:
        continue
    for (triple, focus), r in all_residual_contangles(sol.V).items():
        if r < worst[0]:
            worst = (r, d, (tuple(m.label for m in triple), focus.label))
print(f"most negative residual {worst[0]:.3e} at Delta_1 = {worst[1]:.2f} omega_b, "
      f"triple/focus {worst[2]}")
