# %% [markdown]
# # Cavity-mechanics entanglement: detuning and temperature
#
# Two 1-D sweeps with the magnons switched off: E_N^{ab} against the cavity
# detuning for three coupling strengths, then against bath temperature.

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cavmagnon import get_preset, measure_array, sweep1d

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for run in get_preset("fig2a", n1=121).runs:
    recs = sweep1d(run.base, run.axes[0])
    x, y = run.axes[0].normalized, measure_array(recs, "EN_ab")
    ax1.plot(x, y, label=f"G = {run.settings['G/kappa_a']:g} kappa_a")
    print(f"{run.name}: peak {np.nanmax(y):.4f} at {x[np.nanargmax(y)]:.3f} omega_b")
ax1.set_xlabel("Delta_a / omega_b")
ax1.set_ylabel("E_N^{ab}")
ax1.legend()

# %% [markdown]
# Gaps in the G = 5 kappa_a curve near zero detuning are unstable points,
# reported as NaN rather than plotted.

# %%
(run,) = get_preset("fig2b", n1=121).runs
recs = sweep1d(run.base, run.axes[0])
T, y = run.axes[0].normalized, measure_array(recs, "EN_ab")
ax2.plot(T, y)
ax2.set_xlabel("T (mK)")
ax2.set_ylabel("E_N^{ab}")
last = T[np.flatnonzero(y > 0)[-1]]
print(f"entanglement last positive at {last:.1f} mK on this grid")

fig.tight_layout()
fig.savefig("optomechanics.png", dpi=120)
