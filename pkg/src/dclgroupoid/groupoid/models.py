"""Data models for chart-level Lie groupoids and their algebroids."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from typing import Final

import numpy as np
from numpy.typing import NDArray

from ..errors import DomainError

Vector = NDArray[np.float64]
Matrix = NDArray[np.float64]

# Max-norm mismatch allowed between beta(g) and alpha(h) for m(g, h)
COMPOSABILITY_TOL: Final[float] = 1e-9

StructureMap = Callable[[Vector], Vector]
Multiplication = Callable[[Vector, Vector], Vector]
ElementSampler = Callable[[np.random.Generator, Vector | None], Vector]


class GradientMode(StrEnum):
    """How directional derivatives along invariant fields are formed."""

    FINITE_DIFFERENCE = "finite-difference"
    USER_SUPPLIED = "user-supplied"


@dataclass(frozen=True)
class GroupoidModel:
    """Numeric realization of a Lie groupoid G over Q in one global chart.

    Elements are flat coordinate vectors of length ``coord_dim``; ``dim_g`` is
    the manifold dimension of G (for SO(3) elements are 9 matrix entries but
    ``dim_g`` is 3).
    """

    name: str
    dim_q: int
    dim_g: int
    coord_dim: int
    source: StructureMap
    target: StructureMap
    multiply: Multiplication
    invert: StructureMap
    identity_section: StructureMap
    fiber_chart: Callable[[Vector, Vector], Vector]
    local_chart: Callable[[Vector, Vector], Vector]
    algebroid_frame: Callable[[Vector], Matrix]
    fiber_coords: StructureMap | None = None
    left_translation: Multiplication | None = None
    right_translation: Multiplication | None = None
    sample: ElementSampler | None = None
    coord_names: tuple[str, ...] = ()
    base_names: tuple[str, ...] = ()

    @property
    def n_a(self) -> int:
        """Fiber dimension of the algebroid AG."""
        return self.dim_g - self.dim_q

    def composability_defect(self, g: Vector, h: Vector) -> float:
        """Max-norm of beta(g) - alpha(h)."""
        diff = np.asarray(self.target(g)) - np.asarray(self.source(h))
        return float(np.max(np.abs(diff))) if diff.size else 0.0

    def compose(self, g: Vector, h: Vector) -> Vector:
        """m(g, h) after checking that the pair is composable."""
        defect = self.composability_defect(g, h)
        if defect > COMPOSABILITY_TOL:
            raise DomainError(
                f"{self.name}: elements are not composable (base mismatch {defect:.3e})"
            )
        return np.asarray(self.multiply(g, h), dtype=float)


@dataclass(frozen=True)
class AlgebroidBasis:
    """Basis sections of AG together with the derivative mode.

    ``basis_at(q)`` returns a (coord_dim x n_a) matrix whose columns are
    alpha-vertical tangent vectors at the identity ``epsilon(q)``.
    """

    n_a: int
    basis_at: Callable[[Vector], Matrix]
    gradient_mode: GradientMode = GradientMode.USER_SUPPLIED

    def with_mode(self, mode: GradientMode) -> AlgebroidBasis:
        """Same basis with a different derivative mode."""
        return AlgebroidBasis(n_a=self.n_a, basis_at=self.basis_at, gradient_mode=mode)


def standard_basis(
    model: GroupoidModel,
    mode: GradientMode = GradientMode.USER_SUPPLIED,
) -> AlgebroidBasis:
    """The model's built-in algebroid frame as an AlgebroidBasis."""
    return AlgebroidBasis(n_a=model.n_a, basis_at=model.algebroid_frame, gradient_mode=mode)


@dataclass(frozen=True)
class Bisection:
    """Local bisection B of G given by its alpha- and beta-sections.

    ``alpha_section(q)`` is the unique element of B with source q, and
    ``beta_section(q)`` the unique element with target q.
    """

    alpha_section: StructureMap
    beta_section: StructureMap


@dataclass
class AxiomReport:
    """Max residual of each groupoid axiom over a batch of samples."""

    model: str
    samples: int
    residuals: dict[str, float]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(r < self.tolerance for r in self.residuals.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, r in self.residuals.items() if not r < self.tolerance]
