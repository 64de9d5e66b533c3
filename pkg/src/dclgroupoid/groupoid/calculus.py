"""Derivative operators on groupoids: invariant vector fields, anchor, tangent maps."""

from __future__ import annotations

from collections.abc import Callable
from typing import Final

import numpy as np

from ..errors import DomainError, EvaluationError
from .models import (
    COMPOSABILITY_TOL,
    AlgebroidBasis,
    GradientMode,
    GroupoidModel,
    Matrix,
    Vector,
)

FD_RELATIVE_STEP: Final[float] = 1e-6

ScalarField = Callable[[Vector], float]
GradientField = Callable[[Vector], Vector]


def fd_step(x: Vector) -> float:
    """Finite-difference step 1e-6 * max(1, ||x||)."""
    return FD_RELATIVE_STEP * max(1.0, float(np.linalg.norm(x)))


def tangent_map(fun: Callable[[Vector], Vector], x: Vector, v: Vector) -> Vector:
    """Central-difference derivative of ``fun`` at ``x`` along ``v``."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    delta = fd_step(x)
    plus = np.asarray(fun(x + delta * v), dtype=float)
    minus = np.asarray(fun(x - delta * v), dtype=float)
    return (plus - minus) / (2.0 * delta)


def directional_derivative(
    f: ScalarField,
    g: Vector,
    w: Vector,
    gradient: GradientField | None = None,
) -> float:
    """Derivative of the scalar field ``f`` at ``g`` along ``w``.

    Uses ``gradient(g) . w`` when a gradient is supplied, otherwise the
    central difference with step 1e-6 * max(1, ||g||).

    Raises:
        EvaluationError: f or its gradient is not finite near g
    """
    g = np.asarray(g, dtype=float)
    w = np.asarray(w, dtype=float)
    if gradient is not None:
        grad = np.asarray(gradient(g), dtype=float)
        if not np.all(np.isfinite(grad)):
            raise EvaluationError("gradient is not finite")
        return float(grad @ w)

    delta = fd_step(g)
    plus = float(f(g + delta * w))
    minus = float(f(g - delta * w))
    if not (np.isfinite(plus) and np.isfinite(minus)):
        raise EvaluationError("scalar field is not finite near the evaluation point")
    return (plus - minus) / (2.0 * delta)


def _check_base(model: GroupoidModel, point: Vector, base: Vector | None) -> None:
    if base is None or model.dim_q == 0:
        return
    defect = float(np.max(np.abs(np.asarray(point) - np.asarray(base))))
    if defect > COMPOSABILITY_TOL:
        raise DomainError(
            f"{model.name}: algebroid vector based at the wrong point (mismatch {defect:.3e})"
        )


def left_invariant(
    model: GroupoidModel,
    v: Vector,
    g: Vector,
    *,
    base: Vector | None = None,
    analytic: bool = True,
) -> Vector:
    """Left-invariant field of ``v`` at ``g``: T ell_g(v) at epsilon(beta(g)).

    ``base`` is the base point of ``v``; when given it must equal beta(g).
    """
    q = model.target(g)
    _check_base(model, q, base)
    if analytic and model.left_translation is not None:
        return np.asarray(model.left_translation(g, v), dtype=float)
    unit = model.identity_section(q)
    return tangent_map(lambda h: model.compose(g, h), unit, v)


def right_invariant(
    model: GroupoidModel,
    v: Vector,
    g: Vector,
    *,
    base: Vector | None = None,
    analytic: bool = True,
) -> Vector:
    """Right-invariant field of ``v`` at ``g``: -T(r_g o i)(v) at epsilon(alpha(g)).

    ``base`` is the base point of ``v``; when given it must equal alpha(g).
    """
    q = model.source(g)
    _check_base(model, q, base)
    if analytic and model.right_translation is not None:
        return np.asarray(model.right_translation(g, v), dtype=float)
    unit = model.identity_section(q)
    return -tangent_map(lambda h: model.compose(model.invert(h), g), unit, v)


def left_fields(model: GroupoidModel, basis: AlgebroidBasis, g: Vector) -> Matrix:
    """Columns are the left-invariant fields of the basis sections at ``g``."""
    frame = basis.basis_at(model.target(g))
    analytic = basis.gradient_mode is GradientMode.USER_SUPPLIED
    columns = [left_invariant(model, frame[:, i], g, analytic=analytic) for i in range(basis.n_a)]
    return _stack(columns, model.coord_dim)


def right_fields(model: GroupoidModel, basis: AlgebroidBasis, g: Vector) -> Matrix:
    """Columns are the right-invariant fields of the basis sections at ``g``."""
    frame = basis.basis_at(model.source(g))
    analytic = basis.gradient_mode is GradientMode.USER_SUPPLIED
    columns = [right_invariant(model, frame[:, i], g, analytic=analytic) for i in range(basis.n_a)]
    return _stack(columns, model.coord_dim)


def _stack(columns: list[Vector], rows: int) -> Matrix:
    if not columns:
        return np.zeros((rows, 0))
    return np.column_stack(columns)


def anchor(basis: AlgebroidBasis, model: GroupoidModel, q: Vector) -> Matrix:
    """Matrix (dim_q x n_a) of T beta applied to each basis vector at epsilon(q)."""
    unit = model.identity_section(np.asarray(q, dtype=float))
    frame = basis.basis_at(q)
    result = np.zeros((model.dim_q, basis.n_a))
    for i in range(basis.n_a):
        result[:, i] = tangent_map(model.target, unit, frame[:, i])
    return result


def tangent_basis(model: GroupoidModel, g: Vector) -> Matrix:
    """(coord_dim x dim_g) basis of T_gG from the model's local chart at ``g``."""
    g = np.asarray(g, dtype=float)
    columns = []
    for j in range(model.dim_g):
        e = np.zeros(model.dim_g)
        e[j] = 1.0
        columns.append(tangent_map(lambda z: model.local_chart(g, z), np.zeros(model.dim_g), e))
    return _stack(columns, model.coord_dim)
