"""Dense matrix kernels for the steady-state covariance pipeline.

Two unrelated Lyapunov solvers live here on purpose: :func:`solve_lyapunov`
(Kronecker-vectorised direct solve) is the production path and
:func:`solve_lyapunov_ode` (fixed-step RK4 relaxation) is its oracle.
"""

from __future__ import annotations

import functools
import logging

import numpy as np

from .errors import ContractError, ConvergenceError, NoUniqueSolutionError, NumericalError

logger = logging.getLogger(__name__)

#: Relative residual bound promised by :func:`solve_lyapunov`.
LYAPUNOV_RESIDUAL_TOL = 1e-9
#: Relative asymmetry tolerated by :func:`symplectic_eigenvalues`.
SYMMETRY_TOL = 1e-10
#: Relative gap under which two symplectic moduli are considered one pair.
PAIRING_TOL = 1e-8
#: Iteration cap of the RK4 oracle.
ODE_MAX_STEPS = 10**7


def _as_square(M, name="matrix"):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ContractError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ContractError(f"{name} has non-finite entries")
    return M


def eigenvalues(A, verify=False):
    """Complete eigenvalue multiset of a dense square matrix.

    Parameters
    ----------
    A : array_like, shape (n, n)
    verify : bool
        Also compute eigenvectors and check ``|Av - lv| <= 1e-8 |A|`` for
        every pair.

    Returns
    -------
    numpy.ndarray of complex, shape (n,)
    """
    A = _as_square(A, "A")
    try:
        if not verify:
            return np.linalg.eigvals(A).astype(complex)
        w, v = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration did not converge: {exc}") from exc
    scale = max(np.linalg.norm(A, 2), np.finfo(float).tiny)
    resid = np.linalg.norm(A @ v - v * w, axis=0)
    if np.any(resid > 1e-8 * scale):
        raise NumericalError(f"eigenpair residual {resid.max():.3e} exceeds 1e-8*|A|")
    return w.astype(complex)


def spectral_abscissa(A):
    """Largest real part over the spectrum of ``A``."""
    return float(np.max(eigenvalues(A).real))


def kronecker_sum(A):
    """Operator ``A (x) I + I (x) A`` acting on row-major ``vec(V)``.

    With row-major flattening, ``vec(A V) = (A (x) I) vec(V)`` and
    ``vec(V A^T) = (I (x) A) vec(V)``.
    """
    n = A.shape[0]
    eye = np.eye(n)
    return np.kron(A, eye) + np.kron(eye, A)


def lyapunov_residual(A, V, D):
    """Relative Frobenius residual ``|AV + VA^T + D| / (|A||V| + |D|)``."""
    A, V, D = (np.asarray(M, dtype=float) for M in (A, V, D))
    r = np.linalg.norm(A @ V + V @ A.T + D)
    denom = np.linalg.norm(A) * np.linalg.norm(V) + np.linalg.norm(D)
    return float(r / denom) if denom > 0 else float(r)


def solve_lyapunov(A, D, check_stability=True):
    """Solve ``A V + V A^T + D = 0`` for the symmetric steady-state ``V``.

    The equation is vectorised into ``(A (x) I + I (x) A) vec(V) = -vec(D)``,
    a dense ``n^2 x n^2`` system (64 x 64 for the eight-quadrature model).

    Parameters
    ----------
    A : array_like, shape (n, n)
        Real drift matrix; must be Hurwitz-stable.
    D : array_like, shape (n, n)
        Real symmetric diffusion matrix.
    check_stability : bool
        Reject drifts whose spectral abscissa is not negative.

    Returns
    -------
    V : numpy.ndarray, shape (n, n)
        Explicitly symmetrised solution.

    Raises
    ------
    NoUniqueSolutionError
        If ``A`` is not stable or the Kronecker system is singular.
    """
    A = np.asarray(_as_square(A, "A"), dtype=float)
    D = np.asarray(_as_square(D, "D"), dtype=float)
    if A.shape != D.shape:
        raise ContractError(f"A {A.shape} and D {D.shape} differ in shape")
    n = A.shape[0]
    if check_stability:
        abscissa = spectral_abscissa(A)
        if not abscissa < 0:
            raise NoUniqueSolutionError(
                f"drift is not stable (max Re(lambda) = {abscissa:.3e}); "
                "no unique steady state"
            )
    K = kronecker_sum(A)
    try:
        v = np.linalg.solve(K, -D.reshape(n * n))
    except np.linalg.LinAlgError as exc:
        raise NoUniqueSolutionError(f"singular Kronecker system: {exc}") from exc
    V = v.reshape(n, n)
    V = 0.5 * (V + V.T)
    res = lyapunov_residual(A, V, D)
    if res > LYAPUNOV_RESIDUAL_TOL:
        # one step of iterative refinement usually recovers the lost digits
        R = A @ V + V @ A.T + D
        dv = np.linalg.solve(K, -R.reshape(n * n)).reshape(n, n)
        V = V + 0.5 * (dv + dv.T)
        res = lyapunov_residual(A, V, D)
        if res > LYAPUNOV_RESIDUAL_TOL:
            raise NoUniqueSolutionError(
                f"Lyapunov residual {res:.3e} above {LYAPUNOV_RESIDUAL_TOL:g}; "
                "system too ill-conditioned"
            )
    return V


def _rk4_step(A, D, V, h):
    def f(X):
        return A @ X + X @ A.T + D

    k1 = f(V)
    k2 = f(V + 0.5 * h * k1)
    k3 = f(V + 0.5 * h * k2)
    k4 = f(V + h * k3)
    return V + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_doubling(A, D, h):
    """Yield ``(steps, V)`` after 1, 2, 4, 8, ... fixed RK4 steps from ``V = 0``.

    One RK4 step of the affine flow is an affine map ``v -> M v + c`` on the
    entries of ``V``. ``M`` is assembled by pushing each basis matrix through
    the matrix-form update, then squared repeatedly so that each yield costs
    one ``n^2 x n^2`` product.
    """
    n = A.shape[0]
    basis = np.eye(n * n).reshape(n * n, n, n)
    M = _rk4_step(A, np.zeros_like(D), basis, h).reshape(n * n, n * n).T
    v = _rk4_step(A, D, np.zeros((n, n)), h).reshape(n * n)
    steps = 1
    while True:
        V = v.reshape(n, n)
        yield steps, 0.5 * (V + V.T)
        # v_{2s} = M^s v_s + v_s, then M <- M^2 keeps M equal to the s-step map
        v = M @ v + v
        M = M @ M
        steps *= 2


def solve_lyapunov_ode(A, D, tol=1e-10, max_steps=ODE_MAX_STEPS):
    """Steady state of ``dV/dt = AV + VA^T + D`` by fixed-step RK4 from ``V = 0``.

    Step size is ``h = 0.1 / |A|_inf``. The trajectory is advanced with
    :func:`rk4_doubling` and stops at the first power-of-two step count where
    ``|dV/dt|_F < tol |D|_F``.

    Raises
    ------
    ConvergenceError
        If the criterion is not met within ``max_steps`` steps.
    """
    A = np.asarray(_as_square(A, "A"), dtype=float)
    D = np.asarray(_as_square(D, "D"), dtype=float)
    norm_inf = np.linalg.norm(A, np.inf)
    if norm_inf == 0:
        raise ConvergenceError("zero drift never relaxes")
    target = tol * np.linalg.norm(D)
    rate = np.inf
    for steps, V in rk4_doubling(A, D, 0.1 / norm_inf):
        rate = np.linalg.norm(A @ V + V @ A.T + D)
        if rate < target:
            return V
        if 2 * steps > max_steps:
            break
    raise ConvergenceError(
        f"RK4 relaxation did not reach |dV/dt| < {tol:g}|D| within {max_steps} steps "
        f"(last relative rate {rate / np.linalg.norm(D):.3e})"
    )


def rk4_trajectory(A, D, steps, h=None):
    """Plain stepping loop for the same scheme (small ``steps`` only)."""
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    if h is None:
        h = 0.1 / np.linalg.norm(A, np.inf)
    V = np.zeros_like(D)
    for _ in range(steps):
        V = _rk4_step(A, D, V, h)
    return V


@functools.lru_cache(maxsize=None)
def _omega(m):
    J = np.kron(np.eye(m), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    J.flags.writeable = False
    return J


def symplectic_form(m):
    """``Omega = (+)_m [[0, 1], [-1, 0]]`` for xpxp-ordered quadratures."""
    return _omega(m).copy()


def symplectic_eigenvalues(V):
    """Symplectic spectrum of a ``2m x 2m`` covariance matrix, ascending.

    Computed as the moduli of the eigenvalues of ``i Omega V``; each value
    occurs twice and adjacent moduli are merged pairwise.
    """
    V = np.asarray(_as_square(V, "V"), dtype=float)
    dim = V.shape[0]
    if dim % 2:
        raise ContractError(f"covariance dimension must be even, got {dim}")
    scale = max(np.abs(V).max(), np.finfo(float).tiny)
    if np.abs(V - V.T).max() > SYMMETRY_TOL * scale:
        raise ContractError("covariance matrix is not symmetric")
    m = dim // 2
    try:
        w = np.linalg.eigvals(1j * (_omega(m) @ V))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(str(exc)) from exc
    moduli = np.sort(np.abs(w))
    lo, hi = moduli[0::2], moduli[1::2]
    gap = np.abs(hi - lo) / np.maximum(hi, np.finfo(float).tiny)
    if np.any(gap > PAIRING_TOL):
        logger.debug("symplectic moduli pair imperfectly (max gap %.2e)", gap.max())
    return 0.5 * (lo + hi)


def det(M):
    """Determinant; closed form for 2 x 2, LU with partial pivoting otherwise."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ContractError(f"det needs a square matrix, got shape {M.shape}")
    if M.shape == (2, 2):
        return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    return np.linalg.det(M)
