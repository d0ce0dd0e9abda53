"""Gaussian entanglement measures on the steady-state covariance matrix.

Conventions: vacuum variance 1/2, so a two-mode state is entangled iff the
smallest symplectic eigenvalue of its partial transpose is below 1/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np

from .errors import ContractError, PhysicalityError
from .linalg import det, symplectic_eigenvalues

#: Symplectic eigenvalues below 1/2 minus this are rejected as unphysical.
PHYSICALITY_TOL = 1e-6
#: Negative discriminants down to -this * Sigma^2 are treated as rounding.
DISCRIMINANT_TOL = 1e-12
#: Residual contangles down to -this are clamped to zero.
RESIDUAL_CLAMP = 1e-9


class Mode(enum.IntEnum):
    """Modes of the hybrid system; the value indexes the quadrature pair."""

    M1 = 0
    M2 = 1
    CAV = 2
    MECH = 3

    @property
    def quadratures(self):
        return (2 * self.value, 2 * self.value + 1)

    @property
    def label(self):
        return _LABELS[self]


_LABELS = {Mode.CAV: "a", Mode.MECH: "b", Mode.M1: "m1", Mode.M2: "m2"}

# canonical output order (column order of the sweep CSV)
PAIRS = (
    (Mode.CAV, Mode.MECH),
    (Mode.CAV, Mode.M1),
    (Mode.CAV, Mode.M2),
    (Mode.MECH, Mode.M1),
    (Mode.MECH, Mode.M2),
    (Mode.M1, Mode.M2),
)
TRIPLES = (
    (Mode.CAV, Mode.MECH, Mode.M1),
    (Mode.CAV, Mode.MECH, Mode.M2),
    (Mode.CAV, Mode.M1, Mode.M2),
    (Mode.MECH, Mode.M1, Mode.M2),
)


def pair_key(pair):
    return "EN_" + "".join(m.label for m in pair)


def triple_key(triple):
    return "R_" + "".join(m.label for m in triple)


MEASURE_KEYS = tuple(pair_key(p) for p in PAIRS) + tuple(triple_key(t) for t in TRIPLES)


def reduce(V, modes: Sequence[Mode]):
    """Covariance submatrix of the listed modes, in list order."""
    modes = [Mode(m) for m in modes]
    if len(set(modes)) != len(modes):
        raise ContractError(f"duplicate modes in {modes}")
    if not 1 <= len(modes) <= 4:
        raise ContractError("between one and four modes required")
    idx = [i for m in modes for i in m.quadratures]
    return np.asarray(V)[np.ix_(idx, idx)]


def partial_transpose(V, transposed=()):
    """Flip the momentum quadrature of each mode position in ``transposed``."""
    V = np.array(V, dtype=float, copy=True)
    k = V.shape[0] // 2
    signs = np.ones(2 * k)
    for pos in transposed:
        if not 0 <= pos < k:
            raise ContractError(f"mode position {pos} out of range for {k} modes")
        signs[2 * pos + 1] = -1.0
    return V * np.outer(signs, signs)


def _check_physical(nu_min, what):
    if nu_min < 0.5 - PHYSICALITY_TOL:
        raise PhysicalityError(f"{what}: symplectic eigenvalue {nu_min:.9g} < 1/2")


def two_mode_symplectic(V4):
    """``(nu_-, nu_+)`` of a two-mode covariance from its block invariants."""
    V4 = np.asarray(V4, dtype=float)
    A, B, C = V4[:2, :2], V4[2:, 2:], V4[:2, 2:]
    delta = det(A) + det(B) + 2 * det(C)
    d4 = det(V4)
    disc = max(delta * delta - 4 * d4, 0.0)
    lo = max(0.5 * (delta - math.sqrt(disc)), 0.0)
    return math.sqrt(lo), math.sqrt(0.5 * (delta + math.sqrt(disc)))


def eta_minus(V4):
    """Smallest partially transposed symplectic eigenvalue, closed form.

    ``eta^- = 2^{-1/2} [Sigma - (Sigma^2 - 4 det V4)^{1/2}]^{1/2}`` with
    ``Sigma = det A + det B - 2 det C``.
    """
    V4 = np.asarray(V4, dtype=float)
    if V4.shape != (4, 4):
        raise ContractError(f"two-mode covariance must be 4x4, got {V4.shape}")
    A, B, C = V4[:2, :2], V4[2:, 2:], V4[:2, 2:]
    sigma = det(A) + det(B) - 2 * det(C)
    d4 = det(V4)
    disc = sigma * sigma - 4 * d4
    if disc < 0:
        if disc < -DISCRIMINANT_TOL * max(sigma * sigma, 1.0):
            raise PhysicalityError(f"negative discriminant {disc:.3e} in eta^-")
        disc = 0.0
    inner = max(sigma - math.sqrt(disc), 0.0)
    return math.sqrt(inner / 2.0)


def ln_bipartite(V4):
    """Logarithmic negativity ``max(0, -ln 2 eta^-)`` of a two-mode state."""
    nu_min, _ = two_mode_symplectic(V4)
    _check_physical(nu_min, "two-mode covariance")
    eta = eta_minus(V4)
    if eta == 0.0:
        raise PhysicalityError("eta^- vanished; covariance is singular")
    return max(0.0, -math.log(2.0 * eta))


def _ln_cut(V6, focus):
    nu = symplectic_eigenvalues(partial_transpose(V6, {focus}))[0]
    if nu <= 0:
        raise PhysicalityError("partially transposed spectrum reached zero")
    return max(0.0, -math.log(2.0 * nu))


def _check_three_mode(V6):
    V6 = np.asarray(V6, dtype=float)
    if V6.shape != (6, 6):
        raise ContractError(f"three-mode covariance must be 6x6, got {V6.shape}")
    _check_physical(symplectic_eigenvalues(V6)[0], "three-mode covariance")
    return V6


def _pair_block(V6, i, j):
    idx = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
    return V6[np.ix_(idx, idx)]


def ln_one_vs_two(V6, focus: int):
    """Logarithmic negativity across the cut ``focus | rest`` of a three-mode state."""
    return _ln_cut(_check_three_mode(V6), focus)


def _residual(V6, focus, pair_sq):
    others = [k for k in range(3) if k != focus]
    if len(others) != 2:
        raise ContractError(f"focus must be 0, 1 or 2, got {focus}")
    whole = _ln_cut(V6, focus) ** 2
    return whole - sum(pair_sq[frozenset((focus, o))] for o in others)


def _pair_contangles(V6):
    return {
        frozenset((i, j)): ln_bipartite(_pair_block(V6, i, j)) ** 2
        for i, j in ((0, 1), (0, 2), (1, 2))
    }


def residual_contangle(V6, focus: int):
    """``C_{r|st} - C_{r|s} - C_{r|t}`` with contangle = squared log-negativity."""
    V6 = _check_three_mode(V6)
    return _residual(V6, focus, _pair_contangles(V6))


def _min_residual(V6, pair_sq):
    r = min(_residual(V6, f, pair_sq) for f in range(3))
    if -RESIDUAL_CLAMP <= r < 0:
        r = 0.0
    return r


def min_residual_contangle(V6):
    """Minimal residual contangle over the three choices of focus mode."""
    V6 = _check_three_mode(V6)
    return _min_residual(V6, _pair_contangles(V6))


@dataclass
class EntanglementReport:
    """Pairwise log-negativities and tripartite minimal residual contangles.

    ``values`` maps measure keys (``EN_ab``, ``R_am1m2``, ...) to floats, or
    to ``None`` when the point is unstable. ``flags`` records entries that
    failed a physicality check (value ``nan``) or came out negative beyond
    rounding (value kept).
    """

    stable: bool
    values: Dict[str, Optional[float]]
    flags: Dict[str, str] = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    @property
    def pairwise(self):
        return {p: self.values[pair_key(p)] for p in PAIRS}

    @property
    def tripartite(self):
        return {t: self.values[triple_key(t)] for t in TRIPLES}


def entanglement_report(V8, stable: bool) -> EntanglementReport:
    """Evaluate all six pairs and four triples of the 8 x 8 covariance."""
    if not stable:
        return EntanglementReport(False, {k: None for k in MEASURE_KEYS})
    V8 = np.asarray(V8, dtype=float)
    values: Dict[str, Optional[float]] = {}
    flags: Dict[str, str] = {}
    for pair in PAIRS:
        key = pair_key(pair)
        try:
            values[key] = ln_bipartite(reduce(V8, pair))
        except PhysicalityError as exc:
            values[key], flags[key] = math.nan, str(exc)
    for triple in TRIPLES:
        key = triple_key(triple)
        # the pair log-negativities of the triple are already in ``values``
        pair_sq = {}
        for i, j in ((0, 1), (0, 2), (1, 2)):
            pair = next(p for p in PAIRS if set(p) == {triple[i], triple[j]})
            pair_sq[frozenset((i, j))] = values[pair_key(pair)] ** 2
        try:
            V6 = _check_three_mode(reduce(V8, triple))
            if any(math.isnan(v) for v in pair_sq.values()):
                pair_sq = _pair_contangles(V6)  # raises with the precise reason
            r = _min_residual(V6, pair_sq)
        except PhysicalityError as exc:
            values[key], flags[key] = math.nan, str(exc)
            continue
        values[key] = r
        if r < 0:
            flags[key] = f"negative residual contangle {r:.3e}"
    return EntanglementReport(True, values, flags)


def all_residual_contangles(V8):
    """Every ``(triple, focus) -> residual`` for the four triples (12 numbers)."""
    out = {}
    for triple in TRIPLES:
        V6 = _check_three_mode(reduce(V8, triple))
        pair_sq = _pair_contangles(V6)
        for f, mode in enumerate(triple):
            out[(triple, mode)] = _residual(V6, f, pair_sq)
    return out
