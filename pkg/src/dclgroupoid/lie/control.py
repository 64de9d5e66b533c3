"""Reduced optimal-control data on so(3): cost l and algebra constraints Psi."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .so3 import Matrix, Vector

AlgebraFunction = Callable[[Vector], float]
AlgebraGradient = Callable[[Vector], Vector]


@dataclass(frozen=True)
class ControlProblem:
    """Cost l on so(3) and constraints Psi^a(xi) = 0, with their gradients."""

    name: str
    cost: AlgebraFunction
    cost_gradient: AlgebraGradient
    constraints: tuple[AlgebraFunction, ...] = ()
    constraint_gradients: tuple[AlgebraGradient, ...] = ()

    @property
    def m(self) -> int:
        return len(self.constraints)

    def constraint_values(self, xi: Vector) -> Vector:
        return np.array([psi(xi) for psi in self.constraints], dtype=float)

    def covector(self, xi: Vector, lam: Vector) -> Vector:
        """dl(xi) + lam_a dPsi^a(xi)."""
        result = np.asarray(self.cost_gradient(xi), dtype=float).copy()
        for a, grad in enumerate(self.constraint_gradients):
            result = result + lam[a] * np.asarray(grad(xi), dtype=float)
        return result

    def energy(self, xi: Vector, lam: Vector | None = None) -> float:
        """Discrete energy l(xi) - <dl(xi), xi>, plus multiplier terms when lam is given.

        With multipliers the value is
        l - <dl, xi> + lam_a (Psi^a(xi) - <dPsi^a(xi), xi>).
        """
        xi = np.asarray(xi, dtype=float)
        value = float(self.cost(xi)) - float(np.asarray(self.cost_gradient(xi)) @ xi)
        if lam is not None:
            for a, (psi, grad) in enumerate(zip(self.constraints, self.constraint_gradients)):
                value += float(lam[a]) * (float(psi(xi)) - float(np.asarray(grad(xi)) @ xi))
        return value


def inertia_matrix(inertia: Sequence[float] | Matrix) -> Matrix:
    """3x3 inertia tensor from a diagonal triple or a full matrix."""
    arr = np.asarray(inertia, dtype=float)
    if arr.shape == (3,):
        return np.diag(arr)
    return arr.reshape(3, 3)


def rigid_body_problem(
    inertia: Sequence[float] | Matrix,
    pin_z: float | None = None,
) -> ControlProblem:
    """Kinetic-energy cost l = xi^T I xi / 2, optionally with Psi(xi) = xi_z - pin_z."""
    tensor = inertia_matrix(inertia)

    def cost(xi: Vector) -> float:
        return 0.5 * float(xi @ tensor @ xi)

    def cost_gradient(xi: Vector) -> Vector:
        return tensor @ np.asarray(xi, dtype=float)

    if pin_z is None:
        return ControlProblem(name="rigid-body", cost=cost, cost_gradient=cost_gradient)

    c = float(pin_z)
    e_z = np.array([0.0, 0.0, 1.0])
    return ControlProblem(
        name="pinned-rigid-body",
        cost=cost,
        cost_gradient=cost_gradient,
        constraints=(lambda xi: float(xi[2]) - c,),
        constraint_gradients=(lambda xi: e_z,),
    )
