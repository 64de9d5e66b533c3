"""Reduced optimal control on SO(3) as a constrained system on the Lie group groupoid."""

from __future__ import annotations

import numpy as np

from ..dynamics.models import ConstrainedSystem, SigmaPoint
from ..errors import DomainError
from ..groupoid.calculus import GradientField, ScalarField
from ..groupoid.catalog import so3_groupoid
from ..groupoid.models import Vector, standard_basis
from ..lie.control import AlgebraFunction, AlgebraGradient, ControlProblem
from ..lie.lie_poisson import LiePoissonState
from ..lie.retraction import Retraction
from ..lie.so3 import Matrix, hat


def algebra_velocity(ret: Retraction, h: float, g: Vector) -> Vector:
    """xi = tau^-1(g) / h for a group element given as 9 entries.

    Raises:
        DomainError: g is outside the retraction's chart
    """
    return ret.tau_inv(np.asarray(g, dtype=float).reshape(3, 3)) / h


def ambient_gradient(ret: Retraction, g: Vector, covector: Vector) -> Vector:
    """Ambient gradient whose pairing with g hat(eta) is <dtau^-1^T covector, eta>."""
    rot: Matrix = np.asarray(g, dtype=float).reshape(3, 3)
    mu = ret.dtau_inv_matrix(ret.tau_inv(rot)).T @ covector
    return 0.5 * (rot @ hat(mu)).ravel()


def optimal_control_system(problem: ControlProblem, ret: Retraction, h: float) -> ConstrainedSystem:
    """L_hat(g) = h l(tau^-1(g)/h) and phi^a(g) = h Psi^a(tau^-1(g)/h) on SO(3).

    Evaluating outside the retraction's chart raises DomainError.
    """
    if not h > 0:
        raise DomainError(f"time step must be positive, got {h}")
    model = so3_groupoid(ret.kind)

    def pulled_back(fn: AlgebraFunction) -> ScalarField:
        return lambda g: h * float(fn(algebra_velocity(ret, h, g)))

    def pulled_gradient(grad: AlgebraGradient) -> GradientField:
        def gradient(g: Vector) -> Vector:
            xi = algebra_velocity(ret, h, g)
            return ambient_gradient(ret, g, np.asarray(grad(xi), dtype=float))

        return gradient

    constraint_gradients: tuple[GradientField, ...] = ()
    if problem.constraint_gradients:
        constraint_gradients = tuple(pulled_gradient(d) for d in problem.constraint_gradients)

    return ConstrainedSystem(
        name=f"optimal-control[{problem.name}, {ret.kind.value}]",
        model=model,
        basis=standard_basis(model),
        lagrangian=pulled_back(problem.cost),
        constraints=tuple(pulled_back(psi) for psi in problem.constraints),
        lagrangian_gradient=pulled_gradient(problem.cost_gradient),
        constraint_gradients=constraint_gradients,
    )


def control_point(
    system: ConstrainedSystem,
    ret: Retraction,
    h: float,
    xi: Vector,
    lam: Vector | None = None,
) -> SigmaPoint:
    """Sigma_L point at the increment tau(h xi)."""
    g = ret.tau(h * np.asarray(xi, dtype=float)).ravel()
    return SigmaPoint.on(system, g, lam)


def lie_poisson_view(ret: Retraction, h: float, g_prev: Matrix, p: SigmaPoint) -> LiePoissonState:
    """Lie-Poisson state (g_prev tau(h xi), xi, lam) matching the increment in p."""
    xi = algebra_velocity(ret, h, p.g)
    rot = np.asarray(g_prev, dtype=float) @ np.asarray(p.g, dtype=float).reshape(3, 3)
    return LiePoissonState(g=rot, xi=xi, lam=np.asarray(p.lam, dtype=float))
