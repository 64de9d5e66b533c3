"""Data models for structural verification of discrete constrained systems."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from ..dynamics.models import SigmaPoint
from ..groupoid.models import Matrix, StructureMap, Vector


class Verdict(StrEnum):
    """Outcome of a verification."""

    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class VariationSpace:
    """Admissible variations at the junction of g1 and g2 in algebroid coordinates.

    Columns of ``basis_matrix`` are orthonormal vectors v of A_qG whose left
    field at g1 and right field at g2 are tangent to N.
    """

    base: Vector
    g1: Vector
    g2: Vector
    basis_matrix: Matrix

    @property
    def dim(self) -> int:
        return int(self.basis_matrix.shape[1])


def _zero_gauge(q: Vector) -> float:
    return 0.0


@dataclass(frozen=True)
class NoetherCandidate:
    """Algebroid section X (coordinates in the system basis) with gauge function f on Q."""

    name: str
    section: Callable[[Vector], Vector]
    gauge: Callable[[Vector], float] = _zero_gauge


Lift = Callable[[Sequence[SigmaPoint]], list[SigmaPoint]]


@dataclass(frozen=True)
class SystemMorphism:
    """Groupoid morphism Phi: G -> G' over Phi0: Q -> Q'.

    ``algebroid_map(q)`` is the matrix of A Phi at q in the two algebroid
    bases. ``lift`` builds Phi*-related points of the source system over a
    sequence of target-system points.
    """

    name: str
    phi: StructureMap
    phi0: StructureMap
    algebroid_map: Callable[[Vector], Matrix]
    lift: Lift | None = None


@dataclass
class MorphismReport:
    """Sample-based residuals of the morphism conditions.

    ``residuals`` holds the groupoid, Lagrangian and forward constraint
    conditions (g in N implies Phi(g) in N'). The reverse direction is
    counted over the sampled elements off N: ``preimage_failures`` of the
    ``preimage_samples`` elements off N were mapped into N'.
    ``algebroid_residual`` compares A Phi with the finite-difference tangent
    map of Phi on A_qG.
    """

    samples: int
    residuals: dict[str, float]
    tolerance: float
    algebroid_residual: float = 0.0
    algebroid_tolerance: float = 1e-6
    preimage_samples: int = 0
    preimage_failures: int = 0

    @property
    def conditions_passed(self) -> bool:
        """Every condition except N = Phi^-1(N') holds."""
        return (
            all(r < self.tolerance for r in self.residuals.values())
            and self.algebroid_residual < self.algebroid_tolerance
        )

    @property
    def passed(self) -> bool:
        return self.conditions_passed and self.preimage_failures == 0


@dataclass
class ReductionResult:
    """DEL residual of a lifted trajectory, or why no lift was checked."""

    verdict: Verdict
    max_residual: float = float("nan")
    max_pullback_defect: float = float("nan")
    details: list[str] = field(default_factory=list)


@dataclass
class Assertion:
    """One measured check of a verification suite."""

    suite: str
    name: str
    measured: float
    threshold: float
    passed: bool
    note: str = ""

    @classmethod
    def below(
        cls, suite: str, name: str, measured: float, threshold: float, note: str = ""
    ) -> Assertion:
        """Passes when the measured value is finite and below the threshold."""
        ok = bool(np.isfinite(measured) and measured < threshold)
        return cls(suite, name, float(measured), threshold, ok, note)

    @classmethod
    def above(
        cls, suite: str, name: str, measured: float, threshold: float, note: str = ""
    ) -> Assertion:
        """Passes when the measured value exceeds the threshold (negative controls)."""
        ok = bool(measured > threshold)
        return cls(suite, name, float(measured), threshold, ok, note)
