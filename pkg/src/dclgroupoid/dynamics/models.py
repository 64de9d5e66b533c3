"""Data models for discrete constrained Lagrangian systems and their trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Final

import numpy as np

from ..errors import ConfigurationError, DomainError
from ..groupoid.calculus import GradientField, ScalarField, directional_derivative
from ..groupoid.models import AlgebroidBasis, GradientMode, GroupoidModel, Matrix, Vector

# Max |phi^a(g)| for g to count as a point of N
CONSTRAINT_TOL: Final[float] = 1e-9


@dataclass(frozen=True)
class ConstrainedSystem:
    """Discrete constrained Lagrangian system (G, N, L).

    ``lagrangian`` is an extension L_hat of L to a neighbourhood of
    N = {phi^a = 0}. Gradients are ambient (length ``coord_dim``) and are only
    used when the basis is in user-supplied mode; ``constraint_gradients`` is
    either empty or has one entry per constraint.
    """

    name: str
    model: GroupoidModel
    basis: AlgebroidBasis
    lagrangian: ScalarField
    constraints: tuple[ScalarField, ...] = ()
    lagrangian_gradient: GradientField | None = None
    constraint_gradients: tuple[GradientField, ...] = ()

    def __post_init__(self) -> None:
        if self.constraint_gradients and len(self.constraint_gradients) != len(self.constraints):
            raise ConfigurationError("constraint_gradients must match constraints one to one")
        if self.m > self.model.dim_g:
            raise ConfigurationError(
                f"{self.name}: {self.m} constraints exceed dim G = {self.model.dim_g}"
            )

    @property
    def m(self) -> int:
        """Number of constraints."""
        return len(self.constraints)

    @property
    def analytic(self) -> bool:
        """True when derivatives use the supplied gradients."""
        return (
            self.basis.gradient_mode is GradientMode.USER_SUPPLIED
            and self.lagrangian_gradient is not None
            and (self.m == 0 or bool(self.constraint_gradients))
        )

    def constraint_values(self, g: Vector) -> Vector:
        return np.array([phi(g) for phi in self.constraints], dtype=float)

    def constraint_violation(self, g: Vector) -> float:
        """Max |phi^a(g)| (0 when unconstrained)."""
        values = self.constraint_values(g)
        return float(np.max(np.abs(values))) if values.size else 0.0

    def require_on_constraints(self, g: Vector) -> None:
        """Raise DomainError when g is not on N."""
        violation = self.constraint_violation(g)
        if violation > CONSTRAINT_TOL:
            raise DomainError(f"{self.name}: point violates the constraints by {violation:.3e}")

    def augmented(self, lam: Vector) -> ScalarField:
        """The scalar field L_hat + lam_a phi^a."""
        lam = np.asarray(lam, dtype=float)

        def value(g: Vector) -> float:
            total = float(self.lagrangian(g))
            for a, phi in enumerate(self.constraints):
                total += float(lam[a]) * float(phi(g))
            return total

        return value

    def augmented_gradient(self, g: Vector, lam: Vector) -> Vector:
        """Ambient gradient of L_hat + lam_a phi^a (requires analytic gradients)."""
        if self.lagrangian_gradient is None:
            raise ValueError(f"{self.name} has no Lagrangian gradient")
        grad = np.asarray(self.lagrangian_gradient(g), dtype=float).copy()
        for a, dphi in enumerate(self.constraint_gradients):
            grad = grad + float(lam[a]) * np.asarray(dphi(g), dtype=float)
        return grad

    def field_derivatives(self, g: Vector, lam: Vector, fields: Matrix) -> Vector:
        """Derivatives of L_hat + lam_a phi^a at g along each column of ``fields``."""
        g = np.asarray(g, dtype=float)
        if fields.shape[1] == 0:
            return np.zeros(0)
        if self.analytic:
            return self.augmented_gradient(g, lam) @ fields
        f = self.augmented(lam)
        columns = range(fields.shape[1])
        return np.array([directional_derivative(f, g, fields[:, i]) for i in columns])

    def constraint_jacobian(self, g: Vector, vectors: Matrix) -> Matrix:
        """(m x k) matrix of d phi^a(g) applied to the columns of ``vectors``."""
        g = np.asarray(g, dtype=float)
        k = vectors.shape[1]
        result = np.zeros((self.m, k))
        for a, phi in enumerate(self.constraints):
            gradient = self.constraint_gradients[a] if self.analytic else None
            for j in range(k):
                result[a, j] = directional_derivative(phi, g, vectors[:, j], gradient)
        return result


@dataclass(frozen=True)
class SigmaPoint:
    """Point (g, lambda) of Sigma_L, representing d(L_hat + lambda_a phi^a)(g)."""

    g: Vector
    lam: Vector

    @classmethod
    def on(cls, system: ConstrainedSystem, g: Vector, lam: Vector | None = None) -> SigmaPoint:
        """Validated point of Sigma_L; lam defaults to zero multipliers.

        Raises:
            DomainError: g is off N or lam has the wrong length
        """
        g = np.asarray(g, dtype=float)
        lam_arr = np.zeros(system.m) if lam is None else np.asarray(lam, dtype=float).ravel()
        if lam_arr.size != system.m:
            raise DomainError(f"{system.name}: expected {system.m} multipliers, got {lam_arr.size}")
        system.require_on_constraints(g)
        return cls(g=g, lam=lam_arr)


@dataclass(frozen=True)
class Covector:
    """Element of A*G: base point and components in the algebroid basis at that point."""

    base: Vector
    components: Vector

    def pair(self, v: Vector) -> float:
        """Contraction with algebroid coordinates v."""
        return float(np.asarray(self.components) @ np.asarray(v, dtype=float))


@dataclass
class Trajectory:
    """Composable sequence of Sigma_L points with per-step diagnostics.

    ``residuals[k]`` is the converged residual of the step producing
    ``points[k + 1]``.
    """

    points: list[SigmaPoint]
    residuals: list[float] = field(default_factory=list)
    composability_defects: list[float] = field(default_factory=list)
    constraint_violations: list[float] = field(default_factory=list)
    meta: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_points(cls, system: ConstrainedSystem, points: list[SigmaPoint]) -> Trajectory:
        """Trajectory of externally built points (no solver residuals)."""
        model = system.model
        defects = [
            model.composability_defect(a.g, b.g) for a, b in zip(points, points[1:])
        ]
        violations = [system.constraint_violation(p.g) for p in points]
        return cls(
            points=list(points),
            composability_defects=defects,
            constraint_violations=violations,
        )

    def __len__(self) -> int:
        return len(self.points)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def max_constraint_violation(self) -> float:
        return max(self.constraint_violations, default=0.0)

    @property
    def max_composability_defect(self) -> float:
        return max(self.composability_defects, default=0.0)
