"""Shared fixtures: seeded random systems and the acceptance summary printer."""

import numpy as np
import pytest
from scipy.linalg import expm

from cavmagnon.linalg import symplectic_form

# one line per acceptance criterion, printed after the run whatever happens
ACCEPTANCE_LINES = {}


def record_criterion(number, passed, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


def random_stable_system(rng, n):
    """Hurwitz ``A`` (shifted Gaussian matrix) and PSD ``D``."""
    A = rng.normal(size=(n, n))
    A -= (np.max(np.linalg.eigvals(A).real) + rng.uniform(0.05, 2.0)) * np.eye(n)
    B = rng.normal(size=(n, n))
    D = B @ B.T + 1e-3 * np.eye(n)
    return A, D


def random_symplectic(rng, m, scale=0.6):
    """``exp(Omega H)`` with ``H`` symmetric is symplectic for the xpxp form."""
    H = rng.normal(scale=scale, size=(2 * m, 2 * m))
    H = 0.5 * (H + H.T)
    return expm(symplectic_form(m) @ H)


def random_physical_cm(rng, m, scale=0.6):
    """Williamson form ``S diag(nu) S^T`` with every ``nu >= 1/2``."""
    nu = 0.5 + rng.exponential(0.7, size=m)
    S = random_symplectic(rng, m, scale)
    return S @ np.diag(np.repeat(nu, 2)) @ S.T, np.sort(nu)


def tmsv(r):
    """Two-mode squeezed vacuum covariance (vacuum variance 1/2)."""
    c, s = np.cosh(2 * r) / 2, np.sinh(2 * r) / 2
    return np.array([
        [c, 0, s, 0],
        [0, c, 0, -s],
        [s, 0, c, 0],
        [0, -s, 0, c],
    ])


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
