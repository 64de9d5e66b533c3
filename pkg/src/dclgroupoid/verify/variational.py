"""Admissible variations and pointwise criticality of the discrete constrained action."""

from __future__ import annotations

from typing import Final

import numpy as np
import scipy.linalg

from ..dynamics.legendre import minus_components, plus_components
from ..dynamics.models import ConstrainedSystem, Trajectory
from ..groupoid.calculus import left_fields, right_fields
from ..groupoid.models import Vector
from .models import VariationSpace

NULL_SPACE_RCOND: Final[float] = 1e-8


def variation_space(system: ConstrainedSystem, g1: Vector, g2: Vector) -> VariationSpace:
    """Null space of the stacked rows d phi(g1) left X_i(g1) and d phi(g2) right X_i(g2)."""
    model = system.model
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    base = np.asarray(model.target(g1), dtype=float)
    n_a = model.n_a
    if system.m == 0:
        return VariationSpace(base=base, g1=g1, g2=g2, basis_matrix=np.eye(n_a))

    rows = np.vstack(
        [
            system.constraint_jacobian(g1, left_fields(model, system.basis, g1)),
            system.constraint_jacobian(g2, right_fields(model, system.basis, g2)),
        ]
    )
    basis = scipy.linalg.null_space(rows, rcond=NULL_SPACE_RCOND)
    return VariationSpace(base=base, g1=g1, g2=g2, basis_matrix=basis)


def action_criticality(system: ConstrainedSystem, trajectory: Trajectory, k: int) -> float:
    """max |left v[L_hat](g_k) - right v[L_hat](g_{k+1})| over the variation basis at junction k.

    ``k`` indexes points from 0, so the junction joins points[k] and
    points[k + 1]. Multipliers do not enter because L_hat = L on N.
    """
    p_k = trajectory.points[k]
    p_next = trajectory.points[k + 1]
    space = variation_space(system, p_k.g, p_next.g)
    if space.dim == 0:
        return 0.0
    zero = np.zeros(system.m)
    gap = plus_components(system, p_k.g, zero) - minus_components(system, p_next.g, zero)
    return float(np.max(np.abs(gap @ space.basis_matrix)))


def max_action_criticality(system: ConstrainedSystem, trajectory: Trajectory) -> float:
    """Largest criticality defect over all junctions of a trajectory."""
    return max(
        (action_criticality(system, trajectory, k) for k in range(len(trajectory) - 1)),
        default=0.0,
    )
