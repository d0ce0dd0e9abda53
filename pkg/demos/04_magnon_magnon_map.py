# %% [markdown]
# # Magnon-magnon entanglement over both magnon detunings
#
# A coarse version of the two-sphere density map. With identical spheres
# the map must be symmetric under Delta_1 <-> Delta_2, which we check
# explicitly.

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cavmagnon import get_preset, measure_array, sweep2d

(run,) = get_preset("fig4a", n2=41).runs
ax1, ax2 = run.axes
grid = sweep2d(run.base, ax1, ax2)
Z = measure_array(grid, "EN_m1m2")
print("max asymmetry:", np.nanmax(np.abs(Z - Z.T)))

i, j = np.unravel_index(np.nanargmax(Z), Z.shape)
print(f"optimum E_N = {Z[i, j]:.4f} at Delta_1 = {ax1.normalized[i]:.2f}, "
      f"Delta_2 = {ax2.normalized[j]:.2f} (omega_b units)")

# %%
plt.pcolormesh(ax2.normalized, ax1.normalized, Z, shading="auto")
plt.xlabel("Delta_2 / omega_b")
plt.ylabel("Delta_1 / omega_b")
plt.colorbar(label="E_N^{m1 m2}")
plt.plot([-2, 2], [-2, 2], "w--", lw=0.8)
plt.savefig("magnon_magnon.png", dpi=120)
