"""Exception hierarchy for dclgroupoid."""

from __future__ import annotations


class DclError(Exception):
    """Base class for all dclgroupoid errors."""


class DomainError(DclError, ValueError):
    """Input outside the domain of a structure map or chart.

    Raised for non-composable pairs, off-constraint Sigma points,
    non-antisymmetric matrices passed to vee, singular Cayley denominators
    and rotation angles on the log branch cut.
    """


class EvaluationError(DclError):
    """A scalar field or gradient produced a non-finite value."""


class ConfigurationError(DclError):
    """Invalid configuration, step rule or sampler."""


class SolverError(DclError):
    """Newton iteration failed to converge.

    Attributes:
        step: Trajectory step index at which the failure happened (None for a
              standalone solve)
        residual: Max-norm of the residual at the last iterate
    """

    def __init__(self, message: str, *, step: int | None = None, residual: float | None = None):
        super().__init__(message)
        self.step = step
        self.residual = residual


class RegularityError(SolverError):
    """Newton Jacobian is numerically singular (system not regular here)."""

    def __init__(
        self,
        message: str,
        *,
        condition: float,
        step: int | None = None,
        residual: float | None = None,
    ):
        super().__init__(message, step=step, residual=residual)
        self.condition = condition
