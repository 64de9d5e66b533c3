"""Discrete constrained Lie-Poisson stepping on SO(3)."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..errors import SolverError
from ..numerics import SolverOptions, newton_solve
from .coadjoint import coadjoint
from .control import ControlProblem
from .retraction import Retraction
from .so3 import Matrix, Vector

logger = logging.getLogger(__name__)

Formulation = Literal["dtau", "coadjoint"]


@dataclass(frozen=True)
class LiePoissonState:
    """Configuration g_k, algebra velocity xi_k and multipliers lambda_k."""

    g: Matrix
    xi: Vector
    lam: Vector


def spatial_momentum(
    problem: ControlProblem,
    ret: Retraction,
    h: float,
    xi: Vector,
    lam: Vector,
) -> Vector:
    """mu_k + lambda_k Phi_k, the pull-back of d(L + lambda phi) by right translation.

    For the increment tau(h xi) this is (dtau^-1_{-h xi})^* (dl(xi) + lambda dPsi(xi)).
    """
    return ret.dtau_inv_matrix(-h * np.asarray(xi)).T @ problem.covector(xi, lam)


def body_momentum(
    problem: ControlProblem,
    ret: Retraction,
    h: float,
    xi: Vector,
    lam: Vector,
) -> Vector:
    """(dtau^-1_{h xi})^* (dl(xi) + lambda dPsi(xi))."""
    return ret.dtau_inv_matrix(h * np.asarray(xi)).T @ problem.covector(xi, lam)


def lie_poisson_residual(
    problem: ControlProblem,
    ret: Retraction,
    h: float,
    state: LiePoissonState,
    xi_next: Vector,
    lam_next: Vector,
    formulation: Formulation = "dtau",
) -> Vector:
    """Residual of the step equations at a candidate (xi_{k+1}, lambda_{k+1}).

    The first three rows are the momentum matching, the last m rows Psi(xi_{k+1}).
    """
    lhs = spatial_momentum(problem, ret, h, xi_next, lam_next)
    if formulation == "dtau":
        rhs = body_momentum(problem, ret, h, state.xi, state.lam)
    elif formulation == "coadjoint":
        increment = ret.tau(h * np.asarray(state.xi))
        rhs = coadjoint(increment, spatial_momentum(problem, ret, h, state.xi, state.lam))
    else:
        raise ValueError(f"Unknown formulation: {formulation}")
    return np.concatenate([lhs - rhs, problem.constraint_values(xi_next)])


def lie_poisson_step(
    problem: ControlProblem,
    ret: Retraction,
    h: float,
    state: LiePoissonState,
    *,
    formulation: Formulation = "dtau",
    options: SolverOptions | None = None,
) -> LiePoissonState:
    """Advance (g_k, xi_k, lambda_k) by one step.

    Solves Psi(xi_{k+1}) = 0 together with the momentum matching for
    (xi_{k+1}, lambda_{k+1}), then sets g_{k+1} = g_k tau(h xi_{k+1}).
    """
    m = problem.m

    def residual(z: Vector) -> Vector:
        return lie_poisson_residual(problem, ret, h, state, z[:3], z[3:], formulation)

    guess = np.concatenate([np.asarray(state.xi, dtype=float), np.asarray(state.lam, dtype=float)])
    result = newton_solve(residual, guess, options)
    xi_next = result.x[:3]
    lam_next = result.x[3:3 + m]
    logger.debug("lie-poisson step converged in %d iterations", result.iterations)
    return LiePoissonState(g=state.g @ ret.tau(h * xi_next), xi=xi_next, lam=lam_next)


def lie_poisson_run(
    problem: ControlProblem,
    ret: Retraction,
    h: float,
    state: LiePoissonState,
    n: int,
    *,
    formulation: Formulation = "dtau",
    options: SolverOptions | None = None,
) -> list[LiePoissonState]:
    """States [state_1, ..., state_n] obtained by repeated lie_poisson_step."""
    states = [state]
    for k in range(1, n):
        try:
            states.append(
                lie_poisson_step(
                    problem, ret, h, states[-1], formulation=formulation, options=options
                )
            )
        except SolverError as e:
            e.step = k
            raise
    return states
