# %% [markdown]
# # Two unrelated ways to the steady state
#
# ``solve_lyapunov`` vectorises A V + V A^T + D = 0 into a 64 x 64 linear
# system. ``solve_lyapunov_ode`` instead relaxes dV/dt = A V + V A^T + D
# from V = 0 with fixed-step RK4. They share no code beyond numpy, so
# agreement is a meaningful check.

# %%
import numpy as np

from cavmagnon import TWO_PI, solve_lyapunov, solve_lyapunov_ode, solve_point, table1_setup
from cavmagnon.linalg import lyapunov_residual

setup = table1_setup(g1=TWO_PI * 4e6, g2=TWO_PI * 4e6,
                     delta_1=-TWO_PI * 10e6, delta_2=-TWO_PI * 10e6)
sol = solve_point(setup)
V = solve_lyapunov(sol.A, sol.D)
W = solve_lyapunov_ode(sol.A, sol.D)
print("relative Frobenius gap:", np.linalg.norm(V - W) / np.linalg.norm(V))
print("residual (direct):", lyapunov_residual(sol.A, V, sol.D))
print("residual (RK4):   ", lyapunov_residual(sol.A, W, sol.D))

# %% [markdown]
# The RK4 step is h = 0.1 / |A|_inf, about 0.2 ns here, while the slowest
# mode decays over milliseconds. Plain stepping would take ~10^7 steps;
# the oracle composes the one-step affine map with itself instead, so it
# reaches 2^k steps after k squarings.

# %%
from itertools import islice

from cavmagnon.linalg import rk4_doubling

h = 0.1 / np.linalg.norm(sol.A, np.inf)
for steps, Vk in islice(rk4_doubling(sol.A, sol.D, h), 0, 22, 3):
    print(f"{steps:>14d} steps  t = {steps * h:9.3e} s  gap = "
          f"{np.linalg.norm(Vk - V) / np.linalg.norm(V):.2e}")
