"""Exception hierarchy used across the package."""


class CavMagnonError(Exception):
    """Base class for all errors raised by cavmagnon."""


class ContractError(CavMagnonError, ValueError):
    """An input violates a documented precondition (shape, symmetry, duplicates)."""


class DomainError(CavMagnonError, ValueError):
    """An argument lies outside the domain of a physical formula."""


class SingularDetuningError(CavMagnonError, ZeroDivisionError):
    """A magnon detuning is zero while its coupling is not."""


class ConvergenceError(CavMagnonError, RuntimeError):
    """An iterative procedure hit its iteration cap."""


class NumericalError(CavMagnonError, ArithmeticError):
    """A dense linear-algebra kernel failed (e.g. eigenvalue non-convergence)."""


class NoUniqueSolutionError(CavMagnonError, ArithmeticError):
    """The Lyapunov equation has no unique solution for the given drift."""


class PhysicalityError(CavMagnonError, ValueError):
    """A covariance matrix violates the uncertainty principle beyond tolerance."""


class ConfigError(CavMagnonError, ValueError):
    """A run configuration failed validation.

    ``diagnostics`` holds human-readable ``"line N: field: message"`` strings.
    """

    def __init__(self, message, diagnostics=()):
        self.diagnostics = list(diagnostics)
        detail = "\n".join("  " + d for d in self.diagnostics)
        super().__init__(message + ("\n" + detail if detail else ""))
