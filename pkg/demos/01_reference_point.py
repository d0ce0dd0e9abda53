# %% [markdown]
# # One operating point, end to end
#
# The reference point has no magnons coupled (g1 = g2 = 0), a cavity
# detuned by 0.9 omega_b on the red side and G = 4 kappa_a at 20 mK.
# We build the drift and diffusion matrices, check stability, solve for
# the steady-state covariance and read off the entanglement report.

# %%
import numpy as np

from cavmagnon import (
    TWO_PI, assess_stability, build_diffusion, build_drift, entanglement_report,
    solve_lyapunov, table1_setup,
)

np.set_printoptions(precision=3, linewidth=120)

setup = table1_setup()
e = setup.effective()
print(f"thermal phonons n_b = {e.nbar_b:.3f}, cavity photons n_a = {e.nbar_a:.2e}")

# %%
A = build_drift(e)
D = build_diffusion(e)
print("drift / (2 pi MHz):")
print(A / (TWO_PI * 1e6))

# %% [markdown]
# Stability: every eigenvalue of A must sit in the left half plane.

# %%
st = assess_stability(A)
print("stable:", st.stable)
for w in st.eigenvalues:
    print(f"  {w.real / TWO_PI:12.3f} {w.imag / TWO_PI:+14.3f}i  Hz")

# %%
V = solve_lyapunov(A, D)
report = entanglement_report(V, st.stable)
for k, v in report.values.items():
    print(f"{k:8s} {v:.6f}")

# %% [markdown]
# Only the cavity-mechanics pair is entangled; everything involving the
# magnons is exactly zero because they are decoupled.

# %%
# swap in the typeset +gamma_b: it is hidden by optical damping here ...
print(assess_stability(build_drift(setup.with_(printed_damping_sign=True).effective())).stable)
# ... but exposed as soon as the cavity stops cooling the resonator
print(assess_stability(build_drift(setup.with_(G=0.0, printed_damping_sign=True).effective())).stable)
