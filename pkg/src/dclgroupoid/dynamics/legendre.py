"""Discrete Legendre transforms: the restricted cotangent source and target on Sigma_L."""

from __future__ import annotations

import numpy as np

from ..groupoid.calculus import left_fields, right_fields
from ..groupoid.models import Vector
from .models import ConstrainedSystem, Covector, SigmaPoint


def minus_components(system: ConstrainedSystem, g: Vector, lam: Vector) -> Vector:
    """Right-invariant derivatives of L_hat + lam phi at g, without the membership check."""
    fields = right_fields(system.model, system.basis, g)
    return system.field_derivatives(g, lam, fields)


def plus_components(system: ConstrainedSystem, g: Vector, lam: Vector) -> Vector:
    """Left-invariant derivatives of L_hat + lam phi at g, without the membership check."""
    fields = left_fields(system.model, system.basis, g)
    return system.field_derivatives(g, lam, fields)


def legendre_minus(system: ConstrainedSystem, p: SigmaPoint) -> Covector:
    """F-L(g, lam): base alpha(g), components <F-L, X_i> = right X_i[L_hat + lam phi](g).

    Raises:
        DomainError: g violates the constraints by more than 1e-9
    """
    system.require_on_constraints(p.g)
    return Covector(
        base=np.asarray(system.model.source(p.g), dtype=float),
        components=minus_components(system, p.g, p.lam),
    )


def legendre_plus(system: ConstrainedSystem, p: SigmaPoint) -> Covector:
    """F+L(g, lam): base beta(g), components <F+L, X_i> = left X_i[L_hat + lam phi](g).

    Raises:
        DomainError: g violates the constraints by more than 1e-9
    """
    system.require_on_constraints(p.g)
    return Covector(
        base=np.asarray(system.model.target(p.g), dtype=float),
        components=plus_components(system, p.g, p.lam),
    )
