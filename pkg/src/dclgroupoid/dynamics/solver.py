"""Constrained discrete Euler-Lagrange residual, single steps and trajectories."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from ..errors import DomainError, EvaluationError, RegularityError, SolverError
from ..groupoid.models import Vector
from ..numerics import NewtonResult, SolverOptions, newton_solve
from .legendre import minus_components, plus_components
from .models import ConstrainedSystem, SigmaPoint, Trajectory

logger = logging.getLogger(__name__)


def del_residual(
    system: ConstrainedSystem,
    p_k: SigmaPoint,
    u: Vector,
    lam_next: Vector,
) -> Vector:
    """Residual of the constrained DEL equations for the candidate (u, lam_next).

    g_{k+1} = fiber_chart(beta(g_k), u). The first n_a rows are
    left X_i[L_hat + lam_k phi](g_k) - right X_i[L_hat + lam_next phi](g_{k+1}),
    the last m rows phi^a(g_{k+1}).
    """
    plus = plus_components(system, p_k.g, p_k.lam)
    return _residual_from_plus(system, p_k.g, plus, u, lam_next)


def _residual_from_plus(
    system: ConstrainedSystem,
    g_k: Vector,
    plus: Vector,
    u: Vector,
    lam_next: Vector,
) -> Vector:
    model = system.model
    g_next = model.fiber_chart(model.target(g_k), np.asarray(u, dtype=float))
    minus = minus_components(system, g_next, lam_next)
    return np.concatenate([plus - minus, system.constraint_values(g_next)])


def junction_residual(system: ConstrainedSystem, p_k: SigmaPoint, p_next: SigmaPoint) -> Vector:
    """DEL residual between two given consecutive Sigma_L points.

    Raises:
        DomainError: the points are not composable
    """
    model = system.model
    defect = model.composability_defect(p_k.g, p_next.g)
    if defect > 1e-9:
        raise DomainError(f"{system.name}: points are not composable (mismatch {defect:.3e})")
    plus = plus_components(system, p_k.g, p_k.lam)
    minus = minus_components(system, p_next.g, p_next.lam)
    return np.concatenate([plus - minus, system.constraint_values(p_next.g)])


def unconstrained_del_residual(system: ConstrainedSystem, g_k: Vector, g_next: Vector) -> Vector:
    """left X_i[L_hat](g_k) - right X_i[L_hat](g_{k+1}), ignoring the constraints.

    Raises:
        DomainError: g_k and g_next are not composable
    """
    model = system.model
    if model.composability_defect(g_k, g_next) > 1e-9:
        raise DomainError(f"{system.name}: consecutive elements are not composable")
    zero = np.zeros(system.m)
    return plus_components(system, g_k, zero) - minus_components(system, g_next, zero)


def initial_guess(system: ConstrainedSystem, p_k: SigmaPoint) -> Vector:
    """Previous increment in fiber coordinates (or 0) followed by lam_k."""
    model = system.model
    u0 = np.zeros(model.n_a)
    if model.fiber_coords is not None:
        try:
            u0 = np.asarray(model.fiber_coords(p_k.g), dtype=float)
        except DomainError:
            logger.debug("previous increment outside the fiber chart, starting from 0")
    return np.concatenate([u0, np.asarray(p_k.lam, dtype=float)])


def solve_step(
    system: ConstrainedSystem,
    p_k: SigmaPoint,
    guess: Vector | None = None,
    options: SolverOptions | None = None,
) -> tuple[SigmaPoint, NewtonResult]:
    """Newton solve of the DEL residual; returns the new point and the solver result."""
    model = system.model
    n_a = model.n_a
    plus = plus_components(system, p_k.g, p_k.lam)

    def residual(z: Vector) -> Vector:
        return _residual_from_plus(system, p_k.g, plus, z[:n_a], z[n_a:])

    x0 = initial_guess(system, p_k) if guess is None else np.asarray(guess, dtype=float)
    result = newton_solve(residual, x0, options)
    g_next = model.fiber_chart(model.target(p_k.g), result.x[:n_a])
    return SigmaPoint(g=np.asarray(g_next, dtype=float), lam=result.x[n_a:].copy()), result


def step(
    system: ConstrainedSystem,
    p_k: SigmaPoint,
    guess: Vector | None = None,
    options: SolverOptions | None = None,
) -> SigmaPoint:
    """One application of the discrete flow (F-L)^-1 o F+L.

    ``guess`` is (u, lam_next) stacked; the default is the previous increment
    with lam_next = lam_k.

    Raises:
        RegularityError: Newton Jacobian condition number above the limit
        SolverError: Newton did not converge
    """
    point, _ = solve_step(system, p_k, guess, options)
    return point


def run(
    system: ConstrainedSystem,
    p_1: SigmaPoint,
    n: int,
    options: SolverOptions | None = None,
) -> Trajectory:
    """Trajectory [p_1, ..., p_n] of the discrete flow.

    Raises:
        SolverError: a step failed; ``step`` holds the index of the point
                     that could not be computed
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    model = system.model
    trajectory = Trajectory(
        points=[p_1], constraint_violations=[system.constraint_violation(p_1.g)]
    )
    iterations = 0
    worst_condition = 1.0

    for k in range(1, n):
        current = trajectory.points[-1]
        try:
            point, result = solve_step(system, current, options=options)
        except RegularityError as e:
            raise RegularityError(
                f"step {k}: {e}", condition=e.condition, step=k, residual=e.residual
            ) from e
        except SolverError as e:
            raise SolverError(f"step {k}: {e}", step=k, residual=e.residual) from e
        except (EvaluationError, DomainError) as e:
            raise SolverError(f"step {k}: {e}", step=k) from e

        trajectory.points.append(point)
        trajectory.residuals.append(result.residual)
        trajectory.composability_defects.append(model.composability_defect(current.g, point.g))
        trajectory.constraint_violations.append(system.constraint_violation(point.g))
        iterations += result.iterations
        worst_condition = max(worst_condition, result.condition)
        logger.debug("step %d accepted (residual %.3e)", k, result.residual)

    trajectory.meta = {
        "steps": float(n),
        "newton_iterations": float(iterations),
        "max_condition": worst_condition,
    }
    return trajectory


def sigma_points_from_pairs(
    system: ConstrainedSystem,
    configurations: Sequence[Vector],
    multipliers: Sequence[Vector] | None = None,
) -> list[SigmaPoint]:
    """Pair-groupoid Sigma_L points (q_k, q_{k+1}) from a configuration sequence.

    Raises:
        DomainError: a pair violates the constraints
    """
    pairs = [
        np.concatenate([np.asarray(a, dtype=float), np.asarray(b, dtype=float)])
        for a, b in zip(configurations, configurations[1:])
    ]
    if multipliers is None:
        return [SigmaPoint.on(system, g) for g in pairs]
    return [SigmaPoint.on(system, g, lam) for g, lam in zip(pairs, multipliers)]
