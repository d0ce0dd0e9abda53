"""Grid evaluation of the build -> stability -> Lyapunov -> entanglement pipeline."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .entanglement import MEASURE_KEYS, EntanglementReport, entanglement_report
from .errors import CavMagnonError, ContractError
from .linalg import solve_lyapunov
from .model import EffectiveParams, Setup, StabilityReport, assess_stability, build_diffusion, build_drift

DEFAULT_COUNT_1D = 201
DEFAULT_COUNT_2D = 101


class Param(enum.Enum):
    """Sweepable parameters. Compound ones move both spheres together."""

    DeltaATilde = "DeltaATilde"
    Delta1 = "Delta1"
    Delta2 = "Delta2"
    DeltaM = "DeltaM"
    G = "G"
    Gm = "Gm"
    G1 = "G1"
    G2 = "G2"
    KappaM = "KappaM"
    Temperature = "Temperature"


_FIELDS = {
    Param.DeltaATilde: ("delta_a_tilde",),
    Param.Delta1: ("delta_1",),
    Param.Delta2: ("delta_2",),
    Param.DeltaM: ("delta_1", "delta_2"),
    Param.G: ("G",),
    Param.Gm: ("g1", "g2"),
    Param.G1: ("g1",),
    Param.G2: ("g2",),
    Param.KappaM: ("kappa_1", "kappa_2"),
    Param.Temperature: ("T",),
}


@dataclass(frozen=True)
class Axis:
    """A linear grid over one parameter.

    ``start`` and ``stop`` are in the parameter's natural unit (rad/s, or K
    for temperature). ``reference`` optionally rescales the reported axis
    values, e.g. ``reference=omega_b, label="omega_b"`` gives ``Delta/omega_b``.
    """

    param: Param
    start: float
    stop: float
    count: int
    reference: Optional[float] = None
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "param", Param(self.param))
        if int(self.count) != self.count or self.count < 2:
            raise ContractError(f"axis count must be an integer >= 2, got {self.count!r}")
        if self.start == self.stop:
            raise ContractError("axis start and stop coincide")
        if self.reference is not None and not self.reference > 0:
            raise ContractError("axis normalisation reference must be > 0")

    @classmethod
    def scaled(cls, param, start, stop, count, reference, label):
        """Axis specified in units of ``reference`` (as the figure axes are)."""
        return cls(param, start * reference, stop * reference, count, reference, label)

    @property
    def values(self):
        return np.linspace(self.start, self.stop, int(self.count))

    @property
    def normalized(self):
        ref = self.reference if self.reference is not None else 1.0
        return self.values / ref

    @property
    def column(self):
        name = self.param.value
        return f"{name}/{self.label}" if self.label else f"{name}/1"

    def apply(self, setup: Setup, value: float) -> Setup:
        return setup.with_(**{f: float(value) for f in _FIELDS[self.param]})


@dataclass
class SweepRecord:
    """Outcome of one grid point.

    ``coords`` holds ``(normalized, raw)`` per axis. ``values`` maps every
    measure key to a float, or to ``None`` when the point is unstable or the
    solve failed (then ``error`` says why).
    """

    coords: Tuple[Tuple[float, float], ...]
    stable: bool
    max_real_part: float
    values: Dict[str, Optional[float]]
    flags: Dict[str, str] = field(default_factory=dict)
    error: Optional[str] = None

    def __getitem__(self, key):
        return self.values[key]


@dataclass
class PointSolution:
    effective: EffectiveParams
    A: np.ndarray
    D: np.ndarray
    stability: StabilityReport
    V: Optional[np.ndarray]


def _effective(base) -> EffectiveParams:
    return base.effective() if isinstance(base, Setup) else base


def solve_point(base: Union[Setup, EffectiveParams]) -> PointSolution:
    """Drift, diffusion, stability and (when stable) the steady-state covariance."""
    e = _effective(base)
    A = build_drift(e)
    D = build_diffusion(e)
    st = assess_stability(A)
    V = solve_lyapunov(A, D, check_stability=False) if st.stable else None
    return PointSolution(e, A, D, st, V)


def evaluate_point(base: Union[Setup, EffectiveParams], coords=()) -> SweepRecord:
    """Run the full pipeline at one operating point; failures are recorded, not raised."""
    empty = {k: None for k in MEASURE_KEYS}
    try:
        sol = solve_point(base)
    except CavMagnonError as exc:
        return SweepRecord(tuple(coords), False, math.nan, empty, error=f"{type(exc).__name__}: {exc}")
    if not sol.stability.stable:
        return SweepRecord(tuple(coords), False, sol.stability.max_real_part, empty)
    report: EntanglementReport = entanglement_report(sol.V, True)
    return SweepRecord(
        tuple(coords), True, sol.stability.max_real_part, dict(report.values), dict(report.flags)
    )


def _evaluate_chunk(items):
    return [evaluate_point(setup, coords) for setup, coords in items]


def _run(items, workers):
    if workers is None or workers <= 1 or len(items) < 2:
        return _evaluate_chunk(items)
    n_chunks = min(len(items), 4 * workers)
    bounds = np.linspace(0, len(items), n_chunks + 1).astype(int)
    chunks = [items[a:b] for a, b in zip(bounds[:-1], bounds[1:])]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves chunk order, so slot placement is schedule-independent
        results = list(pool.map(_evaluate_chunk, chunks))
    return [rec for chunk in results for rec in chunk]


def grid_points(base: Setup, axes: Sequence[Axis]):
    """Row-major ``(setup, coords)`` list for one or two axes."""
    if len({a.param for a in axes}) != len(axes):
        raise ContractError("sweep axes must use distinct parameters")
    items = []
    if len(axes) == 1:
        (ax,) = axes
        for n, v in zip(ax.normalized, ax.values):
            items.append((ax.apply(base, v), ((float(n), float(v)),)))
    elif len(axes) == 2:
        ax1, ax2 = axes
        for n1, v1 in zip(ax1.normalized, ax1.values):
            s1 = ax1.apply(base, v1)
            for n2, v2 in zip(ax2.normalized, ax2.values):
                items.append((ax2.apply(s1, v2), ((float(n1), float(v1)), (float(n2), float(v2)))))
    else:
        raise ContractError("sweeps take one or two axes")
    return items


def sweep1d(base: Setup, axis: Axis, workers: int = 1) -> List[SweepRecord]:
    """Records in ascending axis order."""
    return _run(grid_points(base, [axis]), workers)


def sweep2d(base: Setup, axis1: Axis, axis2: Axis, workers: int = 1) -> List[List[SweepRecord]]:
    """``count1 x count2`` nested list, ``grid[i][j]`` at ``(axis1[i], axis2[j])``."""
    flat = _run(grid_points(base, [axis1, axis2]), workers)
    n2 = int(axis2.count)
    return [flat[i:i + n2] for i in range(0, len(flat), n2)]


def measure_array(records, key):
    """Measure values as a float array (``nan`` where not available)."""
    def val(r):
        v = r.values[key]
        return math.nan if v is None else v

    if records and isinstance(records[0], list):
        return np.array([[val(r) for r in row] for row in records])
    return np.array([val(r) for r in records])
