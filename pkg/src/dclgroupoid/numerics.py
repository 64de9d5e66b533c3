"""Finite-difference Jacobians and the damped Newton solver."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Final

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from .errors import DomainError, EvaluationError, RegularityError, SolverError

logger = logging.getLogger(__name__)

Vector = NDArray[np.float64]
VectorFunction = Callable[[Vector], Vector]

NEWTON_TOL: Final[float] = 1e-10
NEWTON_MAX_ITER: Final[int] = 50
NEWTON_MAX_HALVINGS: Final[int] = 8
JACOBIAN_STEP: Final[float] = 1e-7
MAX_CONDITION: Final[float] = 1e12


@dataclass(frozen=True)
class SolverOptions:
    """Newton solver settings."""

    tol: float = NEWTON_TOL
    max_iter: int = NEWTON_MAX_ITER
    max_halvings: int = NEWTON_MAX_HALVINGS
    jacobian_step: float = JACOBIAN_STEP
    max_condition: float = MAX_CONDITION


@dataclass
class NewtonResult:
    """Converged Newton iterate."""

    x: Vector
    residual: float
    iterations: int
    condition: float


def residual_norm(r: Vector) -> float:
    """Max-norm of a residual vector (0 for empty residuals)."""
    if r.size == 0:
        return 0.0
    return float(np.max(np.abs(r)))


def fd_jacobian(fun: VectorFunction, x: Vector, step: float = JACOBIAN_STEP) -> NDArray[np.float64]:
    """Central-difference Jacobian of ``fun`` at ``x``.

    The step for column j is ``step * max(1, |x_j|)``.
    """
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(fun(x), dtype=float)
    jac = np.zeros((f0.size, x.size))
    for j in range(x.size):
        delta = step * max(1.0, abs(x[j]))
        xp = x.copy()
        xm = x.copy()
        xp[j] += delta
        xm[j] -= delta
        jac[:, j] = (np.asarray(fun(xp)) - np.asarray(fun(xm))) / (2.0 * delta)
    return jac


def _condition(jac: NDArray[np.float64]) -> float:
    sigma = scipy.linalg.svd(jac, compute_uv=False)
    if sigma.size == 0:
        return 1.0
    if sigma[-1] == 0.0:
        return float("inf")
    return float(sigma[0] / sigma[-1])


def newton_solve(
    fun: VectorFunction,
    x0: Vector,
    options: SolverOptions | None = None,
) -> NewtonResult:
    """Solve ``fun(x) = 0`` by damped Newton iteration.

    Each step halves the Newton increment (at most ``max_halvings`` times)
    until the residual max-norm decreases. A trial whose residual raises
    ``DomainError`` or evaluates to a non-finite value counts as a failed
    trial and is halved again. The Jacobian is formed by central differences
    at every iterate.

    Raises:
        RegularityError: Jacobian condition number exceeds ``max_condition``
        SolverError: no convergence within ``max_iter`` iterations, or no
            halving of the increment could be evaluated
        EvaluationError: residual at ``x0`` evaluated to a non-finite value
    """
    opts = options or SolverOptions()
    x = np.array(x0, dtype=float)
    r = _evaluate(fun, x)
    norm = residual_norm(r)
    condition = 1.0

    for iteration in range(opts.max_iter + 1):
        logger.debug("newton iter %d residual %.3e", iteration, norm)
        if norm < opts.tol:
            return NewtonResult(x=x, residual=norm, iterations=iteration, condition=condition)
        if iteration == opts.max_iter:
            break

        jac = fd_jacobian(fun, x, opts.jacobian_step)
        condition = _condition(jac)
        if not np.isfinite(condition) or condition > opts.max_condition:
            raise RegularityError(
                f"Newton Jacobian is singular (condition {condition:.3e})",
                condition=condition,
                residual=norm,
            )
        dx = scipy.linalg.solve(jac, -r)

        scale = 1.0
        x_trial = x + dx
        r_trial = _trial(fun, x_trial)
        halvings = 0
        while _worse(r_trial, norm) and halvings < opts.max_halvings:
            scale *= 0.5
            halvings += 1
            x_trial = x + scale * dx
            r_trial = _trial(fun, x_trial)
        if r_trial is None:
            raise SolverError(
                f"no admissible Newton step at iter {iteration} after {halvings} halvings",
                residual=norm,
            )
        if _worse(r_trial, norm):
            logger.warning("newton damping exhausted at iter %d (residual %.3e)", iteration, norm)

        x, r = x_trial, r_trial
        norm = residual_norm(r)

    raise SolverError(
        f"Newton did not converge in {opts.max_iter} iterations (residual {norm:.3e})",
        residual=norm,
    )


def _evaluate(fun: VectorFunction, x: Vector) -> Vector:
    r = np.asarray(fun(x), dtype=float)
    if not np.all(np.isfinite(r)):
        raise EvaluationError("residual evaluated to a non-finite value")
    return r


def _trial(fun: VectorFunction, x: Vector) -> Vector | None:
    # None marks an iterate outside the residual's domain; the caller halves again
    try:
        return _evaluate(fun, x)
    except (EvaluationError, DomainError) as e:
        logger.debug("newton trial rejected: %s", e)
        return None


def _worse(r: Vector | None, norm: float) -> bool:
    return r is None or residual_norm(r) >= norm
