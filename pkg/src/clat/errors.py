"""Exception hierarchy shared by every module.

Validation errors mean the caller handed us something outside an
operation's domain; computation errors mean a well-posed request could
not be carried out (non-convergence, internal invariant broken).  The CLI
maps the two families to distinct exit codes.
"""


class ClatError(Exception):
    """Base class for all package errors."""


class ValidationError(ClatError, ValueError):
    """Input rejected before any work was done."""


class SelfLoopError(ValidationError):
    pass


class DuplicateEdgeError(ValidationError):
    pass


class VertexRangeError(ValidationError):
    pass


class NotRegularError(ValidationError):
    pass


class DisconnectedGraphError(ValidationError):
    pass


class NonResidueError(ValidationError):
    """Raised when a modular square root does not exist."""

    def __init__(self, value: int, modulus: int, label: str | None = None):
        self.value = value
        self.modulus = modulus
        self.label = label if label is not None else str(value)
        super().__init__(
            f"{self.label} is a quadratic non-residue mod {modulus} "
            f"({value % modulus} has no square root)"
        )


class EdgeListFormatError(ValidationError):
    pass


class ComputationError(ClatError, RuntimeError):
    """A valid request that could not be completed."""


class QuadratureError(ComputationError):
    """Successive refinement did not reach the requested tolerance."""

    def __init__(self, value: float, delta: float, grid: int, tol: float):
        self.value = value
        self.delta = delta
        self.grid = grid
        self.tol = tol
        super().__init__(
            f"quadrature not converged: |delta|={delta:.3e} > tol={tol:.1e} "
            f"at grid {grid} (last value {value:.12g})"
        )
