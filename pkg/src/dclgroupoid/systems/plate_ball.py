"""Discrete plate-ball system: a ball rolling without slipping on a rotating plate.

The groupoid is R^2 x R^2 x SO(3) over R^2 with elements
(x0, y0, x1, y1, R11, ..., R33). The kinetic cost only sees the plane
displacement; the rolling constraints couple it to the rotation g1.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Final

import numpy as np

from ..dynamics.models import ConstrainedSystem, SigmaPoint
from ..dynamics.solver import junction_residual
from ..errors import ConfigurationError, DomainError
from ..groupoid.calculus import ScalarField
from ..groupoid.catalog import plate_ball_groupoid
from ..groupoid.models import Matrix, Vector, standard_basis
from ..lie.so3 import E1, E2, E3, cay, hat
from ..numerics import SolverOptions, newton_solve

logger = logging.getLogger(__name__)

ROW_NAMES: Final[tuple[str, ...]] = ("x", "y", "E1", "E2", "E3", "phi1", "phi2", "phi3")
AGREEMENT_TOL: Final[float] = 1e-8


@dataclass(frozen=True)
class PlateBallConfig:
    """Ball radius r, plate angular velocity Omega, prescribed omega_z = c, step h."""

    r: float
    Omega: float
    c: float
    h: float

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise ConfigurationError(f"plate-ball step h must be positive, got {self.h}")
        if not self.r > 0:
            raise ConfigurationError(f"plate-ball radius r must be positive, got {self.r}")

    def row_scales(self) -> Vector:
        """Factors taking the generic residual rows to the printed equations."""
        h = self.h
        return np.array([-1.0 / h, -1.0 / h, 2.0, 2.0, 2.0, 1.0 / h, 1.0 / h, 1.0 / h])


def _parts(g: Vector) -> tuple[float, float, float, float, Matrix]:
    g = np.asarray(g, dtype=float)
    return float(g[0]), float(g[1]), float(g[2]), float(g[3]), g[4:].reshape(3, 3)


def _tr(a: Matrix) -> float:
    return float(np.trace(a))


def plate_ball_constraints(cfg: PlateBallConfig, g: Vector) -> Vector:
    """(phi1, phi2, phi3) at g."""
    x0, y0, x1, y1, rot = _parts(g)
    r, h, om = cfg.r, cfg.h, cfg.Omega
    return np.array(
        [
            (y1 - y0) - 0.5 * r * _tr(rot @ E1) - h * om * 0.5 * (x1 + x0),
            (x1 - x0) + 0.5 * r * _tr(rot @ E2) + h * om * 0.5 * (y1 + y0),
            h * cfg.c + 0.5 * _tr(rot @ E3),
        ]
    )


def plate_ball_system(cfg: PlateBallConfig) -> ConstrainedSystem:
    """Plate-ball ConstrainedSystem with basis (d/dx, d/dy, E1, E2, E3)."""
    model = plate_ball_groupoid()
    r, h, om = cfg.r, cfg.h, cfg.Omega
    zeros9 = np.zeros(9)

    def lagrangian(g: Vector) -> float:
        x0, y0, x1, y1, _ = _parts(g)
        return ((x1 - x0) ** 2 + (y1 - y0) ** 2) / (2.0 * h)

    def lagrangian_gradient(g: Vector) -> Vector:
        x0, y0, x1, y1, _ = _parts(g)
        dx, dy = (x1 - x0) / h, (y1 - y0) / h
        return np.concatenate([[-dx, -dy, dx, dy], zeros9])

    def phi(a: int) -> ScalarField:
        return lambda g: float(plate_ball_constraints(cfg, g)[a])

    half_om = 0.5 * h * om
    grad1 = np.concatenate([[-half_om, -1.0, -half_om, 1.0], -0.5 * r * E1.T.ravel()])
    grad2 = np.concatenate([[-1.0, half_om, 1.0, half_om], 0.5 * r * E2.T.ravel()])
    grad3 = np.concatenate([np.zeros(4), 0.5 * E3.T.ravel()])

    return ConstrainedSystem(
        name="plate-ball",
        model=model,
        basis=standard_basis(model),
        lagrangian=lagrangian,
        constraints=(phi(0), phi(1), phi(2)),
        lagrangian_gradient=lagrangian_gradient,
        constraint_gradients=(lambda g: grad1, lambda g: grad2, lambda g: grad3),
    )


def plate_ball_initial_point(
    cfg: PlateBallConfig,
    x: float = 0.0,
    y: float = 0.0,
    vx: float = 0.0,
    vy: float = 0.0,
    lam: Sequence[float] | None = None,
    options: SolverOptions | None = None,
) -> SigmaPoint:
    """First Sigma_L point: plane step (x, y) -> (x + h vx, y + h vy) plus a rotation on N.

    The rotation g1 = cay(hat(z)) is found by Newton on the three constraints,
    starting from the identity. Multipliers default to zero.
    """
    plane = np.array([x, y, x + cfg.h * vx, y + cfg.h * vy], dtype=float)

    def residual(z: Vector) -> Vector:
        return plate_ball_constraints(cfg, np.concatenate([plane, cay(hat(z)).ravel()]))

    result = newton_solve(residual, np.zeros(3), options)
    g = np.concatenate([plane, cay(hat(result.x)).ravel()])
    logger.debug("initial rotation found in %d iterations", result.iterations)
    lam_arr = np.zeros(3) if lam is None else np.asarray(lam, dtype=float)
    return SigmaPoint.on(plate_ball_system(cfg), g, lam_arr)


def plate_ball_residual_printed(
    cfg: PlateBallConfig,
    g_k: Vector,
    g_next: Vector,
    lam_k: Vector,
    lam_next: Vector,
) -> Vector:
    """The eight printed plate-ball equations at the junction (g_k, g_next).

    g_k carries (x_{k-1}, y_{k-1}, x_k, y_k, g_k) and g_next carries
    (x_k, y_k, x_{k+1}, y_{k+1}, g_{k+1}).

    Raises:
        DomainError: the two elements are not composable
    """
    xa, ya, xb, yb, rot_k = _parts(g_k)
    xb2, yb2, xc, yc, rot_n = _parts(g_next)
    if max(abs(xb - xb2), abs(yb - yb2)) > 1e-9:
        raise DomainError("plate-ball states are not composable")
    r, h, om = cfg.r, cfg.h, cfg.Omega
    lk = np.asarray(lam_k, dtype=float)
    ln = np.asarray(lam_next, dtype=float)

    rows = [
        (xc - 2 * xb + xa) / h**2 + (ln[1] - lk[1]) / h + om * (ln[0] + lk[0]) / 2,
        (yc - 2 * yb + ya) / h**2 + (ln[1] - lk[1]) / h - om * (ln[0] + lk[0]) / 2,
    ]
    for ej in (E1, E2, E3):
        rows.append(
            -r * lk[0] * _tr(rot_k @ ej @ E1)
            + r * ln[0] * _tr(ej @ rot_n @ E1)
            + r * lk[1] * _tr(rot_k @ ej @ E2)
            - r * ln[1] * _tr(ej @ rot_n @ E2)
            - lk[2] * _tr(rot_k @ ej @ E3)
            + ln[2] * _tr(ej @ rot_n @ E3)
        )
    rows.extend(plate_ball_constraints(cfg, g_next) / h)
    return np.array(rows)


@dataclass
class CrosscheckRow:
    """Agreement of one printed equation with the scaled generic residual row."""

    name: str
    max_difference: float
    agrees: bool


def plate_ball_crosscheck(
    cfg: PlateBallConfig,
    system: ConstrainedSystem,
    points: Sequence[SigmaPoint],
    tolerance: float = AGREEMENT_TOL,
) -> list[CrosscheckRow]:
    """Compare printed and generic equations row by row over consecutive points.

    A row agrees when |printed - scale * generic| stays below
    tolerance * max(1, |printed|, |scale * generic|) at every junction.
    """
    scales = cfg.row_scales()
    worst = np.zeros(len(ROW_NAMES))
    agrees = np.ones(len(ROW_NAMES), dtype=bool)
    for p_k, p_next in zip(points, points[1:]):
        printed = plate_ball_residual_printed(cfg, p_k.g, p_next.g, p_k.lam, p_next.lam)
        generic = scales * junction_residual(system, p_k, p_next)
        diff = np.abs(printed - generic)
        bound = tolerance * np.maximum(1.0, np.maximum(np.abs(printed), np.abs(generic)))
        worst = np.maximum(worst, diff)
        agrees &= diff <= bound
    return [
        CrosscheckRow(name=name, max_difference=float(worst[i]), agrees=bool(agrees[i]))
        for i, name in enumerate(ROW_NAMES)
    ]
