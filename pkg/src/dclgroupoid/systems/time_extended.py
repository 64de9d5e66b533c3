"""Time-dependent mechanics on G_R = R x R x G with fixed, custom or adaptive steps."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..dynamics.models import ConstrainedSystem, SigmaPoint
from ..errors import ConfigurationError, DomainError
from ..groupoid.calculus import GradientField, ScalarField
from ..groupoid.catalog import time_extended_groupoid
from ..groupoid.models import AlgebroidBasis, GradientMode, Matrix, Vector
from ..lie.control import AlgebraFunction, AlgebraGradient, ControlProblem
from ..lie.retraction import Retraction
from .optimal_control import ambient_gradient

TIME_FRAME = np.array([[0.0], [1.0]])


@dataclass(frozen=True)
class FixedStep:
    """Constraint t1 - t0 - h = 0."""

    h: float


@dataclass(frozen=True)
class CustomStep:
    """Constraint t1 - t0 - step(g) = 0 for a step-size function of the G component."""

    step: Callable[[Vector], float]
    gradient: GradientField | None = None


@dataclass(frozen=True)
class AdaptiveStep:
    """Lagrangian (t1 - t0) l(tau^-1(g) / (t1 - t0)); the step follows from energy balance."""

    problem: ControlProblem
    ret: Retraction


StepRule = FixedStep | CustomStep | AdaptiveStep


@dataclass(frozen=True)
class TimeExtendedSystem:
    """A system on G together with its time-extended counterpart on G_R."""

    inner: ConstrainedSystem
    rule: StepRule
    system: ConstrainedSystem

    @property
    def time_multiplier_index(self) -> int | None:
        """Index of the time constraint's multiplier, None for the adaptive rule."""
        if isinstance(self.rule, AdaptiveStep):
            return None
        return self.system.m - 1


def _extended_basis(inner: ConstrainedSystem, mode: GradientMode) -> AlgebroidBasis:
    def basis_at(q: Vector) -> Matrix:
        q = np.asarray(q, dtype=float)
        return scipy.linalg.block_diag(TIME_FRAME, inner.basis.basis_at(q[1:]))

    return AlgebroidBasis(n_a=inner.basis.n_a + 1, basis_at=basis_at, gradient_mode=mode)


def _lift_field(fn: ScalarField) -> ScalarField:
    return lambda x: float(fn(np.asarray(x, dtype=float)[2:]))


def _lift_gradient(grad: GradientField) -> GradientField:
    def gradient(x: Vector) -> Vector:
        inner_part = np.asarray(grad(np.asarray(x, dtype=float)[2:]), dtype=float)
        return np.concatenate([[0.0, 0.0], inner_part])

    return gradient


def _fixed_or_custom(inner: ConstrainedSystem, rule: FixedStep | CustomStep) -> ConstrainedSystem:
    model = time_extended_groupoid(inner.model)
    if isinstance(rule, FixedStep):
        if not rule.h > 0:
            raise ConfigurationError(f"fixed step must be positive, got {rule.h}")
        h = rule.h

        def time_constraint(x: Vector) -> float:
            return float(x[1] - x[0]) - h

        zeros = np.zeros(inner.model.coord_dim)
        time_gradient: GradientField | None = lambda x: np.concatenate([[-1.0, 1.0], zeros])
    else:
        step = rule.step

        def time_constraint(x: Vector) -> float:
            return float(x[1] - x[0]) - float(step(np.asarray(x)[2:]))

        time_gradient = None
        if rule.gradient is not None:
            step_gradient = rule.gradient

            def _custom_gradient(x: Vector) -> Vector:
                inner_part = -np.asarray(step_gradient(np.asarray(x)[2:]), dtype=float)
                return np.concatenate([[-1.0, 1.0], inner_part])

            time_gradient = _custom_gradient

    analytic = inner.analytic and time_gradient is not None
    mode = GradientMode.USER_SUPPLIED if analytic else GradientMode.FINITE_DIFFERENCE
    constraint_gradients: tuple[GradientField, ...] = ()
    lagrangian_gradient: GradientField | None = None
    if analytic and inner.lagrangian_gradient is not None and time_gradient is not None:
        lagrangian_gradient = _lift_gradient(inner.lagrangian_gradient)
        constraint_gradients = tuple(_lift_gradient(d) for d in inner.constraint_gradients)
        constraint_gradients += (time_gradient,)

    return ConstrainedSystem(
        name=f"time-extended[{inner.name}]",
        model=model,
        basis=_extended_basis(inner, mode),
        lagrangian=_lift_field(inner.lagrangian),
        constraints=tuple(_lift_field(phi) for phi in inner.constraints) + (time_constraint,),
        lagrangian_gradient=lagrangian_gradient,
        constraint_gradients=constraint_gradients,
    )


def _forward_velocity(ret: Retraction, x: Vector) -> tuple[float, Vector]:
    x = np.asarray(x, dtype=float)
    dt = float(x[1] - x[0])
    # the time-reversed element (t1, t0, g^-1) also balances; only dt > 0 is a step
    if not dt > 0.0:
        raise DomainError(f"non-positive time step {dt:.3e}")
    return dt, ret.tau_inv(x[2:].reshape(3, 3)) / dt


def _adaptive(inner: ConstrainedSystem, rule: AdaptiveStep) -> ConstrainedSystem:
    if inner.model.dim_q != 0 or inner.model.coord_dim != 9:
        raise ConfigurationError("adaptive stepping needs a system on the SO(3) groupoid")
    model = time_extended_groupoid(inner.model)
    ret = rule.ret

    def pulled_back(fn: AlgebraFunction) -> ScalarField:
        def value(x: Vector) -> float:
            dt, xi = _forward_velocity(ret, x)
            return dt * float(fn(xi))

        return value

    def pulled_gradient(fn: AlgebraFunction, grad: AlgebraGradient) -> GradientField:
        def gradient(x: Vector) -> Vector:
            _, xi = _forward_velocity(ret, x)
            d = np.asarray(grad(xi), dtype=float)
            balance = float(fn(xi)) - float(d @ xi)
            return np.concatenate([[-balance, balance], ambient_gradient(ret, x[2:], d)])

        return gradient

    problem = rule.problem
    constraint_gradients: tuple[GradientField, ...] = ()
    if problem.constraint_gradients:
        constraint_gradients = tuple(
            pulled_gradient(psi, d)
            for psi, d in zip(problem.constraints, problem.constraint_gradients)
        )
    analytic = problem.m == 0 or bool(constraint_gradients)
    mode = GradientMode.USER_SUPPLIED if analytic else GradientMode.FINITE_DIFFERENCE
    return ConstrainedSystem(
        name=f"adaptive[{problem.name}, {ret.kind.value}]",
        model=model,
        basis=_extended_basis(inner, mode),
        lagrangian=pulled_back(problem.cost),
        constraints=tuple(pulled_back(psi) for psi in problem.constraints),
        lagrangian_gradient=pulled_gradient(problem.cost, problem.cost_gradient),
        constraint_gradients=constraint_gradients,
    )


def time_extended(inner: ConstrainedSystem, rule: StepRule) -> TimeExtendedSystem:
    """Constrained system on G_R for the given step rule.

    Fixed and custom rules append a time constraint after the constraints of
    ``inner``; the adaptive rule replaces the Lagrangian and constraints by
    their time-dependent versions and has no time constraint.
    """
    if isinstance(rule, AdaptiveStep):
        system = _adaptive(inner, rule)
    elif isinstance(rule, (FixedStep, CustomStep)):
        system = _fixed_or_custom(inner, rule)
    else:
        raise ConfigurationError(f"unknown step rule: {rule!r}")
    return TimeExtendedSystem(inner=inner, rule=rule, system=system)


def time_extended_point(
    tsys: TimeExtendedSystem,
    t0: float,
    t1: float,
    g: Vector,
    lam: Vector | None = None,
) -> SigmaPoint:
    """Sigma_L point (t0, t1, g) of the time-extended system; lam defaults to zero."""
    x = np.concatenate([[t0, t1], np.asarray(g, dtype=float)])
    return SigmaPoint.on(tsys.system, x, lam)


def lift_point(
    tsys: TimeExtendedSystem,
    p: SigmaPoint,
    t0: float,
    t1: float,
    lam_time: float = 0.0,
) -> SigmaPoint:
    """Point of G_R over an inner point: prepend (t0, t1) and append the time multiplier."""
    lam = np.asarray(p.lam, dtype=float)
    if tsys.time_multiplier_index is not None:
        lam = np.concatenate([lam, [lam_time]])
    return time_extended_point(tsys, t0, t1, p.g, lam)


def project_point(tsys: TimeExtendedSystem, p: SigmaPoint) -> SigmaPoint:
    """Inner point obtained by dropping (t0, t1) and the time multiplier."""
    g = np.asarray(p.g, dtype=float)[2:]
    return SigmaPoint(g=g, lam=np.asarray(p.lam, dtype=float)[: tsys.inner.m])


def step_size(p: SigmaPoint) -> float:
    """t1 - t0 of a time-extended point."""
    return float(p.g[1] - p.g[0])


def adaptive_energy(tsys: TimeExtendedSystem, p: SigmaPoint) -> float:
    """Discrete energy l(xi) - <dl(xi), xi> + lam_a (Psi^a(xi) - <dPsi^a(xi), xi>).

    Raises:
        ConfigurationError: the system does not use the adaptive rule
        DomainError: the point does not step forward in time
    """
    if not isinstance(tsys.rule, AdaptiveStep):
        raise ConfigurationError("energy balance is only defined for adaptive stepping")
    _, xi = _forward_velocity(tsys.rule.ret, p.g)
    lam = np.asarray(p.lam, dtype=float) if tsys.rule.problem.m else None
    return tsys.rule.problem.energy(xi, lam)
