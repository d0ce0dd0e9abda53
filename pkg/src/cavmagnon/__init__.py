"""Steady-state Gaussian entanglement in linearised cavity-magnon optomechanics.

Typical use::

    from cavmagnon import table1_setup, evaluate_point
    rec = evaluate_point(table1_setup())
    rec["EN_ab"]
"""

__version__ = "0.1.0"

from .entanglement import (
    MEASURE_KEYS,
    EntanglementReport,
    Mode,
    entanglement_report,
    ln_bipartite,
    ln_one_vs_two,
    min_residual_contangle,
    partial_transpose,
    reduce,
    residual_contangle,
)
from .errors import (
    CavMagnonError,
    ConfigError,
    ContractError,
    ConvergenceError,
    DomainError,
    NoUniqueSolutionError,
    NumericalError,
    PhysicalityError,
    SingularDetuningError,
)
from .linalg import (
    det,
    eigenvalues,
    solve_lyapunov,
    solve_lyapunov_ode,
    symplectic_eigenvalues,
)
from .model import (
    TWO_PI,
    EffectiveParams,
    PhysicalParams,
    Setup,
    SteadyState,
    StabilityReport,
    assess_stability,
    build_diffusion,
    build_drift,
    steady_state,
    table1_physical,
    table1_setup,
    thermal_occupation,
)
from .presets import FIGURE_IDS, get_preset
from .sweep import (
    Axis,
    Param,
    SweepRecord,
    evaluate_point,
    measure_array,
    solve_point,
    sweep1d,
    sweep2d,
)
