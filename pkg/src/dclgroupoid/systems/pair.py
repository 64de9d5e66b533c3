"""Classical mechanics on pair groupoids Q x Q (variational integrators)."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ..dynamics.models import ConstrainedSystem, SigmaPoint
from ..groupoid.catalog import pair_groupoid
from ..groupoid.models import GroupoidModel, Vector, standard_basis

PLANE_NAMES = ("x0", "y0", "x1", "y1")
PLANE_BASE = ("x", "y")


def _plane() -> GroupoidModel:
    return pair_groupoid(2, names=PLANE_NAMES, base_names=PLANE_BASE)


def _line(n: int) -> GroupoidModel:
    if n == 1:
        return pair_groupoid(1, names=("q0", "q1"), base_names=("q",))
    return pair_groupoid(n)


def _split(g: Vector) -> tuple[Vector, Vector]:
    g = np.asarray(g, dtype=float)
    n = g.size // 2
    return g[:n], g[n:]


def _kinetic_gradient(g: Vector, h: float) -> Vector:
    q0, q1 = _split(g)
    d = (q1 - q0) / h
    return np.concatenate([-d, d])


def free_particle(h: float = 1.0, n: int = 1) -> ConstrainedSystem:
    """L(q0, q1) = |q1 - q0|^2 / (2h) on R^n x R^n."""

    def lagrangian(g: Vector) -> float:
        q0, q1 = _split(g)
        return float((q1 - q0) @ (q1 - q0)) / (2.0 * h)

    model = _line(n)
    return ConstrainedSystem(
        name="free-particle",
        model=model,
        basis=standard_basis(model),
        lagrangian=lagrangian,
        lagrangian_gradient=lambda g: _kinetic_gradient(g, h),
    )


def harmonic_oscillator(h: float = 0.1, omega: float = 1.0, n: int = 1) -> ConstrainedSystem:
    """Midpoint oscillator L = h [ |(q1 - q0)/h|^2 / 2 - omega^2 |(q0 + q1)/2|^2 / 2 ]."""
    w2 = omega * omega

    def lagrangian(g: Vector) -> float:
        q0, q1 = _split(g)
        d = (q1 - q0) / h
        s = 0.5 * (q0 + q1)
        return h * (0.5 * float(d @ d) - 0.5 * w2 * float(s @ s))

    def gradient(g: Vector) -> Vector:
        q0, q1 = _split(g)
        s = 0.5 * (q0 + q1)
        potential = 0.5 * h * w2 * s
        return _kinetic_gradient(g, h) - np.concatenate([potential, potential])

    model = _line(n)
    return ConstrainedSystem(
        name="harmonic-oscillator",
        model=model,
        basis=standard_basis(model),
        lagrangian=lagrangian,
        lagrangian_gradient=gradient,
    )


def oscillator_energy(g: Vector, h: float, omega: float = 1.0) -> float:
    """Discrete energy |(q1 - q0)/h|^2 / 2 + omega^2 |(q0 + q1)/2|^2 / 2 of a pair."""
    q0, q1 = _split(g)
    d = (q1 - q0) / h
    s = 0.5 * (q0 + q1)
    return 0.5 * float(d @ d) + 0.5 * omega * omega * float(s @ s)


def oscillator_recursion(q_prev: float, q: float, h: float, steps: int) -> list[float]:
    """Closed-form DEL recursion of the unit-frequency midpoint oscillator."""
    a = 1.0 / h + h / 4.0
    b = 2.0 / h - h / 2.0
    values = [q_prev, q]
    for _ in range(steps):
        values.append((b * values[-1] - a * values[-2]) / a)
    return values


def pendulum_on_circle(h: float = 0.1, gravity: float = 1.0) -> ConstrainedSystem:
    """Particle in a plane with gravity, constrained by phi(q0, q1) = |q1|^2 - 1.

    phi does not depend on q0, so the multiplier never enters F-L and the
    system is not regular: its Legendre transforms can be evaluated but the
    DEL flow cannot be stepped.
    """

    def lagrangian(g: Vector) -> float:
        q0, q1 = _split(g)
        d = q1 - q0
        return float(d @ d) / (2.0 * h) - h * gravity * 0.5 * (q0[1] + q1[1])

    def gradient(g: Vector) -> Vector:
        grad = _kinetic_gradient(g, h)
        grad[1] -= 0.5 * h * gravity
        grad[3] -= 0.5 * h * gravity
        return grad

    def phi(g: Vector) -> float:
        _, q1 = _split(g)
        return float(q1 @ q1) - 1.0

    def dphi(g: Vector) -> Vector:
        _, q1 = _split(g)
        return np.concatenate([np.zeros(2), 2.0 * q1])

    model = _plane()
    return ConstrainedSystem(
        name="pendulum",
        model=model,
        basis=standard_basis(model),
        lagrangian=lagrangian,
        constraints=(phi,),
        lagrangian_gradient=gradient,
        constraint_gradients=(dphi,),
    )


def degenerate_system(n: int = 1) -> ConstrainedSystem:
    """L(q0, q1) = |q1|^2 / 2: independent of q0, so neither Legendre transform is regular."""

    def lagrangian(g: Vector) -> float:
        _, q1 = _split(g)
        return 0.5 * float(q1 @ q1)

    def gradient(g: Vector) -> Vector:
        q0, q1 = _split(g)
        return np.concatenate([np.zeros_like(q0), q1])

    model = _line(n)
    return ConstrainedSystem(
        name="degenerate",
        model=model,
        basis=standard_basis(model),
        lagrangian=lagrangian,
        lagrangian_gradient=gradient,
    )


def pinned_system(h: float = 1.0) -> ConstrainedSystem:
    """Planar free particle with the arrival abscissa pinned: phi(q0, q1) = x1.

    Like the pendulum it is not regular; it is used for variation spaces.
    """
    free = free_particle(h, n=2)
    model = _plane()
    e_x1 = np.array([0.0, 0.0, 1.0, 0.0])
    return ConstrainedSystem(
        name="pinned",
        model=model,
        basis=standard_basis(model),
        lagrangian=free.lagrangian,
        constraints=(lambda g: float(g[2]),),
        lagrangian_gradient=free.lagrangian_gradient,
        constraint_gradients=(lambda g: e_x1,),
    )


def rail_system(h: float = 0.1, kappa: float = 0.5) -> ConstrainedSystem:
    """Planar particle on a bent rail, invariant under translations in x.

    L = h [ |(q1 - q0)/h|^2 / 2 - ((y0 + y1)/2)^2 / 2 ] and
    phi = (y1 - y0) - kappa (x1 - x0)(y0 + y1)/2.
    """

    def lagrangian(g: Vector) -> float:
        x0, y0, x1, y1 = (float(c) for c in g)
        s = 0.5 * (y0 + y1)
        return ((x1 - x0) ** 2 + (y1 - y0) ** 2) / (2.0 * h) - 0.5 * h * s * s

    def gradient(g: Vector) -> Vector:
        grad = _kinetic_gradient(g, h)
        s = 0.5 * (float(g[1]) + float(g[3]))
        grad[1] -= 0.5 * h * s
        grad[3] -= 0.5 * h * s
        return grad

    def phi(g: Vector) -> float:
        x0, y0, x1, y1 = (float(c) for c in g)
        return (y1 - y0) - kappa * (x1 - x0) * 0.5 * (y0 + y1)

    def dphi(g: Vector) -> Vector:
        x0, y0, x1, y1 = (float(c) for c in g)
        s = 0.5 * (y0 + y1)
        half = 0.5 * kappa * (x1 - x0)
        return np.array([kappa * s, -1.0 - half, -kappa * s, 1.0 - half])

    model = _plane()
    return ConstrainedSystem(
        name="rail",
        model=model,
        basis=standard_basis(model),
        lagrangian=lagrangian,
        constraints=(phi,),
        lagrangian_gradient=gradient,
        constraint_gradients=(dphi,),
    )


def rail_arrival_height(y0: float, dx: float, kappa: float) -> float:
    """y1 solving the rail constraint for a step dx from height y0."""
    half = 0.5 * kappa * dx
    return y0 * (1.0 + half) / (1.0 - half)


def pair_point(
    system: ConstrainedSystem,
    q_prev: Sequence[float] | Vector,
    q: Sequence[float] | Vector,
    lam: Sequence[float] | Vector | None = None,
) -> SigmaPoint:
    """Sigma_L point at the pair (q_prev, q).

    Raises:
        DomainError: the pair violates the constraints
    """
    g = np.concatenate([np.asarray(q_prev, dtype=float), np.asarray(q, dtype=float)])
    return SigmaPoint.on(system, g, None if lam is None else np.asarray(lam, dtype=float))
