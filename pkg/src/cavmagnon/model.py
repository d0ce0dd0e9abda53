"""Linearised four-mode cavity-magnon optomechanics.

Quadrature ordering everywhere is ``[x1, y1, x2, y2, xa, ya, q, p]``:
two Kittel magnon modes, the cavity mode, then the mechanical resonator.
All rates and frequencies are angular (rad/s); temperatures are in kelvin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import ContractError, ConvergenceError, DomainError, SingularDetuningError
from .linalg import eigenvalues

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K
TWO_PI = 2.0 * math.pi

#: Relative stability margin: stable iff max Re(lambda) < -STABILITY_EPS * |A|_inf.
STABILITY_EPS = 1e-12
STEADY_STATE_RTOL = 1e-12
STEADY_STATE_MAXITER = 1000


def thermal_occupation(omega, T):
    """Bose-Einstein occupation ``1 / (exp(hbar omega / k_B T) - 1)``.

    Zero at ``T = 0``. Raises :class:`DomainError` for ``omega <= 0`` or ``T < 0``.
    """
    if not omega > 0:
        raise DomainError(f"thermal occupation needs omega > 0, got {omega!r}")
    if T < 0:
        raise DomainError(f"temperature must be >= 0, got {T!r}")
    if T == 0:
        return 0.0
    x = HBAR * omega / (K_B * T)
    # exp(-x) / (1 - exp(-x)) underflows gracefully instead of overflowing
    return math.exp(-x) / -math.expm1(-x)


def _check_nonneg(obj, names):
    for name in names:
        value = getattr(obj, name)
        if not (np.isfinite(value) and value >= 0):
            raise ContractError(f"{type(obj).__name__}.{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory-frame parameters (angular frequencies in rad/s, T in K)."""

    omega_a: float
    omega_b: float
    omega_1: float
    omega_2: float
    omega_0: float
    kappa_a: float
    kappa_1: float
    kappa_2: float
    gamma_b: float
    g0: float
    g1: float
    g2: float
    Omega: float
    T: float

    def __post_init__(self):
        _check_nonneg(self, [f.name for f in self.__dataclass_fields__.values()])
        if not self.omega_b > 0:
            raise ContractError("omega_b must be > 0")

    @property
    def delta_a(self):
        return self.omega_a - self.omega_0

    @property
    def delta_1(self):
        return self.omega_1 - self.omega_0

    @property
    def delta_2(self):
        return self.omega_2 - self.omega_0


@dataclass(frozen=True)
class EffectiveParams:
    """Inputs of the linearised model.

    ``printed_damping_sign`` reproduces the ``+gamma_b`` typo in the drift
    matrix as typeset. The bare resonator is then anti-damped; only optical
    damping from a red-detuned cavity (roughly ``G > 0.02 kappa_a`` at the
    reference point) can hide the error.
    """

    delta_a_tilde: float
    delta_1: float
    delta_2: float
    G: float
    g1: float
    g2: float
    kappa_a: float
    kappa_1: float
    kappa_2: float
    gamma_b: float
    omega_b: float
    nbar_a: float = 0.0
    nbar_1: float = 0.0
    nbar_2: float = 0.0
    nbar_b: float = 0.0
    printed_damping_sign: bool = False

    def __post_init__(self):
        _check_nonneg(self, ["G", "nbar_a", "nbar_1", "nbar_2", "nbar_b"])
        for name in ("kappa_a", "kappa_1", "kappa_2", "gamma_b", "omega_b"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ContractError(f"EffectiveParams.{name} must be > 0, got {value!r}")
        for name in ("delta_a_tilde", "delta_1", "delta_2", "g1", "g2"):
            if not np.isfinite(getattr(self, name)):
                raise ContractError(f"EffectiveParams.{name} must be finite")

    def swapped_spheres(self):
        """Same system with the two YIG spheres relabelled."""
        return replace(
            self,
            delta_1=self.delta_2, delta_2=self.delta_1,
            g1=self.g2, g2=self.g1,
            kappa_1=self.kappa_2, kappa_2=self.kappa_1,
            nbar_1=self.nbar_2, nbar_2=self.nbar_1,
        )


@dataclass(frozen=True)
class SteadyState:
    a_mean: float
    q_mean: float
    p_mean: float
    m_mean_1: complex
    m_mean_2: complex
    delta_a_tilde: float
    G: float
    iterations: int = 0


def steady_state(p: PhysicalParams) -> SteadyState:
    """Mean fields in the large-detuning approximation.

    Iterates ``|a| = Omega / |sum_j g_j^2/Delta_j - Delta_a - g0 <q>|`` together
    with ``<q> = -g0 |a|^2 / omega_b`` until the relative change in ``|a|`` drops
    below 1e-12. The drive phase is chosen so ``<a>`` is real and positive.
    """
    S = 0.0
    for g, d in ((p.g1, p.delta_1), (p.g2, p.delta_2)):
        if g != 0:
            if d == 0:
                raise SingularDetuningError("magnon detuning is zero with nonzero coupling")
            S += g * g / d

    if p.Omega == 0:
        return SteadyState(0.0, 0.0, 0.0, 0j, 0j, p.delta_a, 0.0, 0)

    a = 0.0
    q = 0.0
    for it in range(1, STEADY_STATE_MAXITER + 1):
        delta_eff = p.delta_a + p.g0 * q
        denom = S - delta_eff
        if denom == 0:
            raise SingularDetuningError("effective cavity detuning cancels the magnon shift")
        a_new = p.Omega / abs(denom)
        q = -p.g0 * a_new * a_new / p.omega_b
        if abs(a_new - a) <= STEADY_STATE_RTOL * abs(a_new):
            a = a_new
            break
        a = a_new
    else:
        raise ConvergenceError(
            f"mean-field fixed point did not converge in {STEADY_STATE_MAXITER} iterations"
        )

    delta_eff = p.delta_a + p.g0 * q
    m1 = -p.g1 * a / p.delta_1 if p.g1 else 0.0
    m2 = -p.g2 * a / p.delta_2 if p.g2 else 0.0
    return SteadyState(
        a_mean=a,
        q_mean=q,
        p_mean=0.0,
        m_mean_1=complex(m1),
        m_mean_2=complex(m2),
        delta_a_tilde=delta_eff,
        G=math.sqrt(2.0) * p.g0 * a,
        iterations=it,
    )


def build_drift(e: EffectiveParams) -> np.ndarray:
    """8 x 8 drift matrix of the quadrature fluctuations."""
    A = np.zeros((8, 8))
    k1, k2, ka = e.kappa_1, e.kappa_2, e.kappa_a
    d1, d2, da = e.delta_1, e.delta_2, e.delta_a_tilde
    g1, g2, G = e.g1, e.g2, e.G

    A[0, 0], A[0, 1], A[0, 5] = -k1, d1, g1
    A[1, 0], A[1, 1], A[1, 4] = -d1, -k1, -g1
    A[2, 2], A[2, 3], A[2, 5] = -k2, d2, g2
    A[3, 2], A[3, 3], A[3, 4] = -d2, -k2, -g2
    A[4, 1], A[4, 3], A[4, 4], A[4, 5] = g1, g2, -ka, da
    A[5, 0], A[5, 2], A[5, 4], A[5, 5], A[5, 6] = -g1, -g2, -da, -ka, -G
    A[6, 7] = e.omega_b
    A[7, 4], A[7, 6] = -G, -e.omega_b
    A[7, 7] = e.gamma_b if e.printed_damping_sign else -e.gamma_b
    return A


def build_diffusion(e: EffectiveParams) -> np.ndarray:
    """Diagonal diffusion matrix; the position quadrature receives no noise."""
    d1 = e.kappa_1 * (2 * e.nbar_1 + 1)
    d2 = e.kappa_2 * (2 * e.nbar_2 + 1)
    da = e.kappa_a * (2 * e.nbar_a + 1)
    return np.diag([d1, d1, d2, d2, da, da, 0.0, e.gamma_b * (2 * e.nbar_b + 1)])


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    max_real_part: float
    eigenvalues: np.ndarray = field(repr=False)


def assess_stability(A) -> StabilityReport:
    """Hurwitz test with a relative margin of ``STABILITY_EPS * |A|_inf``."""
    A = np.asarray(A, dtype=float)
    w = eigenvalues(A)
    w = w[np.lexsort((w.imag, -w.real))]
    max_re = float(w[0].real)
    threshold = -STABILITY_EPS * np.linalg.norm(A, np.inf)
    return StabilityReport(stable=bool(max_re < threshold), max_real_part=max_re, eigenvalues=w)


@dataclass(frozen=True)
class Setup:
    """A complete operating point: effective couplings plus the thermal bath.

    Occupations follow from ``T`` and the carrier frequencies: the cavity sits
    at ``omega_a``, the magnons at ``omega_0 + delta_j`` and the resonator at
    ``omega_b``. Any ``nbar_*`` given explicitly pins that occupation.
    """

    delta_a_tilde: float
    delta_1: float
    delta_2: float
    G: float
    g1: float
    g2: float
    kappa_a: float
    kappa_1: float
    kappa_2: float
    gamma_b: float
    omega_b: float
    omega_a: float
    omega_0: float
    T: float
    nbar_a: Optional[float] = None
    nbar_1: Optional[float] = None
    nbar_2: Optional[float] = None
    nbar_b: Optional[float] = None
    printed_damping_sign: bool = False

    def _occupation(self, pinned, omega):
        if pinned is not None:
            return pinned
        if omega <= 0:
            raise DomainError(f"mode frequency {omega:.6g} rad/s is not positive")
        return thermal_occupation(omega, self.T)

    def effective(self) -> EffectiveParams:
        return EffectiveParams(
            delta_a_tilde=self.delta_a_tilde,
            delta_1=self.delta_1,
            delta_2=self.delta_2,
            G=self.G,
            g1=self.g1,
            g2=self.g2,
            kappa_a=self.kappa_a,
            kappa_1=self.kappa_1,
            kappa_2=self.kappa_2,
            gamma_b=self.gamma_b,
            omega_b=self.omega_b,
            nbar_a=self._occupation(self.nbar_a, self.omega_a),
            nbar_1=self._occupation(self.nbar_1, self.omega_0 + self.delta_1),
            nbar_2=self._occupation(self.nbar_2, self.omega_0 + self.delta_2),
            nbar_b=self._occupation(self.nbar_b, self.omega_b),
            printed_damping_sign=self.printed_damping_sign,
        )

    def with_(self, **changes) -> "Setup":
        return replace(self, **changes)

    @classmethod
    def from_physical(cls, p: PhysicalParams, **pins) -> "Setup":
        """Linearise a laboratory-frame parameter set around its mean fields."""
        ss = steady_state(p)
        return cls(
            delta_a_tilde=ss.delta_a_tilde,
            delta_1=p.delta_1,
            delta_2=p.delta_2,
            G=ss.G,
            g1=p.g1,
            g2=p.g2,
            kappa_a=p.kappa_a,
            kappa_1=p.kappa_1,
            kappa_2=p.kappa_2,
            gamma_b=p.gamma_b,
            omega_b=p.omega_b,
            omega_a=p.omega_a,
            omega_0=p.omega_0,
            T=p.T,
            **pins,
        )


def table1_setup(**overrides) -> Setup:
    """Reference operating point of the figures.

    omega_a/2pi = omega_1,2/2pi = 10 GHz, omega_b/2pi = 10 MHz,
    kappa_a/2pi = kappa_1,2/2pi = 1 MHz, gamma_b/2pi = 100 Hz,
    omega_0/2pi = 9.95 GHz, T = 20 mK, effective cavity detuning 0.9 omega_b,
    magnon detunings 5 omega_b, G = 4 kappa_a, magnons uncoupled.
    """
    omega_b = TWO_PI * 10e6
    kappa_a = TWO_PI * 1e6
    base = dict(
        delta_a_tilde=0.9 * omega_b,
        delta_1=5 * omega_b,
        delta_2=5 * omega_b,
        G=4 * kappa_a,
        g1=0.0,
        g2=0.0,
        kappa_a=kappa_a,
        kappa_1=kappa_a,
        kappa_2=kappa_a,
        gamma_b=TWO_PI * 100.0,
        omega_b=omega_b,
        omega_a=TWO_PI * 10e9,
        omega_0=TWO_PI * 9.95e9,
        T=20e-3,
    )
    base.update(overrides)
    return Setup(**base)


def table1_physical(**overrides) -> PhysicalParams:
    """Laboratory-frame counterpart of :func:`table1_setup` (g0 must be supplied)."""
    base = dict(
        omega_a=TWO_PI * 10e9,
        omega_b=TWO_PI * 10e6,
        omega_1=TWO_PI * 10e9,
        omega_2=TWO_PI * 10e9,
        omega_0=TWO_PI * 9.95e9,
        kappa_a=TWO_PI * 1e6,
        kappa_1=TWO_PI * 1e6,
        kappa_2=TWO_PI * 1e6,
        gamma_b=TWO_PI * 100.0,
        g0=0.0,
        g1=0.0,
        g2=0.0,
        Omega=TWO_PI * 0.4e9,
        T=20e-3,
    )
    base.update(overrides)
    return PhysicalParams(**base)
