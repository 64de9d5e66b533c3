"""Morphisms of discrete constrained systems and reduction of their dynamics."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Final

import numpy as np

from ..dynamics.models import ConstrainedSystem, SigmaPoint, Trajectory
from ..dynamics.solver import junction_residual
from ..errors import ConfigurationError, DclError
from ..groupoid.calculus import tangent_basis, tangent_map
from ..groupoid.catalog import composable_sampler
from ..groupoid.models import Matrix, Vector
from ..numerics import residual_norm
from ..systems.time_extended import (
    AdaptiveStep,
    FixedStep,
    TimeExtendedSystem,
    lift_point,
)
from .models import MorphismReport, ReductionResult, SystemMorphism, Verdict

logger = logging.getLogger(__name__)

MORPHISM_TOL: Final[float] = 1e-10
OFF_CONSTRAINT_TOL: Final[float] = 1e-6
ALGEBROID_TOL: Final[float] = 1e-6
PULLBACK_TOL: Final[float] = 1e-6
REDUCTION_TOL: Final[float] = 1e-9


def pullback_defect(
    morphism: SystemMorphism,
    system: ConstrainedSystem,
    target: ConstrainedSystem,
    p: SigmaPoint,
    p_target: SigmaPoint,
) -> float:
    """Max over a basis w of T_gG of |d(L_hat + lam phi)(w) - d(L_hat' + lam' phi')(T Phi w)|.

    Zero when the covector of p is the pullback of the covector of p_target.
    """
    g = np.asarray(p.g, dtype=float)
    frame = tangent_basis(system.model, g)
    pushed = np.column_stack(
        [tangent_map(morphism.phi, g, frame[:, j]) for j in range(frame.shape[1])]
    )
    lhs = system.field_derivatives(g, p.lam, frame)
    rhs = target.field_derivatives(p_target.g, p_target.lam, pushed)
    return float(np.max(np.abs(lhs - rhs)))


def check_morphism(
    morphism: SystemMorphism,
    system: ConstrainedSystem,
    target: ConstrainedSystem,
    points: Sequence[SigmaPoint],
    n: int = 1000,
    *,
    seed: int = 0,
) -> MorphismReport:
    """Sampled residuals of the morphism conditions.

    The groupoid conditions (multiplicativity, compatibility with source and
    target), the algebroid map and the preimage condition use ``n`` random
    composable pairs; an element counts as off N when its constraint
    violation exceeds ``OFF_CONSTRAINT_TOL`` and as mapped into N' when the
    violation of its image is below ``MORPHISM_TOL``. The Lagrangian and
    forward constraint conditions use the given points of N.
    """
    model = system.model
    sampler = composable_sampler(model)
    rng = np.random.default_rng(seed)
    phi = morphism.phi
    phi0 = morphism.phi0
    residuals = {"homomorphism": 0.0, "source": 0.0, "target": 0.0}
    algebroid = 0.0
    off_n = 0
    failures = 0

    for _ in range(n):
        g, h, _ = sampler(rng)
        algebroid = max(algebroid, _algebroid_defect(morphism, system, target, model.source(g)))
        if system.constraint_violation(g) > OFF_CONSTRAINT_TOL:
            off_n += 1
            if target.constraint_violation(phi(g)) < MORPHISM_TOL:
                failures += 1
        gh = model.multiply(g, h)
        split = target.model.multiply(phi(g), phi(h))
        residuals["homomorphism"] = max(
            residuals["homomorphism"], residual_norm(np.asarray(phi(gh)) - split)
        )
        residuals["source"] = max(
            residuals["source"],
            residual_norm(np.asarray(target.model.source(phi(g))) - phi0(model.source(g))),
        )
        residuals["target"] = max(
            residuals["target"],
            residual_norm(np.asarray(target.model.target(phi(g))) - phi0(model.target(g))),
        )

    lagrangian = 0.0
    constraints = 0.0
    for p in points:
        image = phi(p.g)
        lagrangian = max(lagrangian, abs(system.lagrangian(p.g) - target.lagrangian(image)))
        constraints = max(constraints, target.constraint_violation(image))
    residuals["lagrangian"] = lagrangian
    residuals["constraints"] = constraints
    if failures:
        logger.info("%s maps %d of %d elements off N into N'", morphism.name, failures, off_n)
    return MorphismReport(
        samples=n,
        residuals=residuals,
        tolerance=MORPHISM_TOL,
        algebroid_residual=algebroid,
        algebroid_tolerance=ALGEBROID_TOL,
        preimage_samples=off_n,
        preimage_failures=failures,
    )


def _algebroid_defect(
    morphism: SystemMorphism,
    system: ConstrainedSystem,
    target: ConstrainedSystem,
    q: Vector,
) -> float:
    """Max entry of T Phi(X) - X' A Phi over the basis X of A_qG."""
    frame = system.basis.basis_at(q)
    unit = system.model.identity_section(q)
    pushed = np.column_stack(
        [tangent_map(morphism.phi, unit, frame[:, j]) for j in range(frame.shape[1])]
    )
    image = target.basis.basis_at(morphism.phi0(q)) @ morphism.algebroid_map(q)
    return float(np.max(np.abs(pushed - image)))


def morphism_reduction_check(
    morphism: SystemMorphism,
    system: ConstrainedSystem,
    target: ConstrainedSystem,
    reduced: Trajectory,
) -> ReductionResult:
    """DEL residual of the lift through ``morphism`` of a trajectory of ``target``.

    A missing lift, a lift that fails to build or one whose covectors are not
    Phi*-related gives an inconclusive result rather than a failure.
    """
    if morphism.lift is None:
        return ReductionResult(Verdict.INCONCLUSIVE, details=[f"{morphism.name} has no lift"])
    try:
        lifted = morphism.lift(reduced.points)
    except (DclError, ValueError) as e:
        logger.info("lift through %s failed: %s", morphism.name, e)
        return ReductionResult(Verdict.INCONCLUSIVE, details=[f"lift failed: {e}"])

    defect = max(
        (pullback_defect(morphism, system, target, lp, p) for lp, p in zip(lifted, reduced.points)),
        default=0.0,
    )
    if defect > PULLBACK_TOL:
        return ReductionResult(
            Verdict.INCONCLUSIVE,
            max_pullback_defect=defect,
            details=[f"lift is not Phi*-related (defect {defect:.3e})"],
        )

    worst = 0.0
    details: list[str] = []
    for k in range(len(lifted) - 1):
        try:
            r = residual_norm(junction_residual(system, lifted[k], lifted[k + 1]))
        except DclError as e:
            return ReductionResult(
                Verdict.INCONCLUSIVE, max_pullback_defect=defect, details=[f"junction {k}: {e}"]
            )
        if r >= REDUCTION_TOL:
            details.append(f"junction {k}: residual {r:.3e}")
        worst = max(worst, r)

    verdict = Verdict.PASS if worst < REDUCTION_TOL else Verdict.FAIL
    return ReductionResult(verdict, max_residual=worst, max_pullback_defect=defect, details=details)


def _drop_time(n_a: int) -> Matrix:
    return np.hstack([np.zeros((n_a, 1)), np.eye(n_a)])


def time_projection_morphism(tsys: TimeExtendedSystem, t0: float = 0.0) -> SystemMorphism:
    """Projection R x R x G -> G over R x Q -> Q.

    The lift prepends the time grid starting at ``t0`` generated by the step
    rule and sets the time multiplier to zero.

    Raises:
        ConfigurationError: the system uses adaptive stepping, whose
                            Lagrangian does not factor through the projection
    """
    rule = tsys.rule
    if isinstance(rule, AdaptiveStep):
        raise ConfigurationError("adaptive stepping does not reduce along the time projection")
    n_a = tsys.inner.model.n_a

    def lift(points: Sequence[SigmaPoint]) -> list[SigmaPoint]:
        lifted = []
        t = t0
        for p in points:
            dt = rule.h if isinstance(rule, FixedStep) else float(rule.step(p.g))
            lifted.append(lift_point(tsys, p, t, t + dt))
            t += dt
        return lifted

    return SystemMorphism(
        name=f"time projection of {tsys.inner.name}",
        phi=lambda x: np.asarray(x, dtype=float)[2:],
        phi0=lambda q: np.asarray(q, dtype=float)[1:],
        algebroid_map=lambda q: _drop_time(n_a),
        lift=lift,
    )


def identity_morphism(system: ConstrainedSystem) -> SystemMorphism:
    def identity(x: Vector) -> Vector:
        return np.asarray(x, dtype=float).copy()

    n_a = system.model.n_a
    return SystemMorphism(
        name=f"identity of {system.name}",
        phi=identity,
        phi0=identity,
        algebroid_map=lambda q: np.eye(n_a),
        lift=list,
    )
