"""
Exception hierarchy shared by every numeric app
"""


class OpspaceError(ValueError):
    """Base class for all library failures"""


class MatrixShapeError(OpspaceError):
    """Operands have incompatible or invalid shapes"""


class NonFiniteError(OpspaceError):
    """A matrix contains NaN or Inf entries"""


class NormConvergenceError(OpspaceError):
    """The Lanczos iteration did not converge within the iteration budget"""

    def __init__(self, shape, iterations: int, last_residual: float):
        self.shape = tuple(shape)
        self.iterations = iterations
        self.last_residual = last_residual
        super().__init__(
            f"Operator norm of {self.shape[0]}x{self.shape[1]} matrix did not converge "
            f"after {iterations} iterations (last relative Ritz residual {last_residual:.3e})"
        )


class ConfigurationError(OpspaceError):
    """Invalid tolerance or run configuration"""


class CombinatorialError(OpspaceError):
    """Invalid subset, sequence or partition input"""


class PartialIsometryError(OpspaceError):
    """An input expected to satisfy v v* v = v does not"""

    def __init__(self, residual: float, label: str = "input"):
        self.residual = residual
        super().__init__(
            f"{label} is not a partial isometry: ||v v* v - v|| = {residual:.3e}"
        )


class PreconditionError(OpspaceError):
    """A structural precondition (collinearity, span membership) is violated"""


class ClassificationError(OpspaceError):
    """Computed invariants contradict the detected components"""


class ProjectionError(OpspaceError):
    """Invalid projection input (not idempotent, degenerate, zero)"""
