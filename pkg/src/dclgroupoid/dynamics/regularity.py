"""Local rank analysis of the discrete Legendre transforms on Sigma_L."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Final

import numpy as np
import scipy.linalg

from ..groupoid.calculus import tangent_basis
from ..groupoid.models import Matrix, Vector
from ..numerics import fd_jacobian
from .legendre import minus_components, plus_components
from .models import ConstrainedSystem, SigmaPoint

logger = logging.getLogger(__name__)

# Relative singular-value threshold for counting kernel directions
KERNEL_THRESHOLD: Final[float] = 1e-8
# finite-difference components differenced again carry ~1e-5 relative noise
FD_KERNEL_THRESHOLD: Final[float] = 1e-3
CHART_STEP: Final[float] = 1e-5


@dataclass
class RegularityReport:
    """Ranks, kernel dimensions and condition numbers of T(F-L) and T(F+L)."""

    dim: int
    rank_minus: int
    rank_plus: int
    ker_dim_minus: int
    ker_dim_plus: int
    condition_minus: float
    condition_plus: float

    @property
    def kernels_agree(self) -> bool:
        return self.ker_dim_minus == self.ker_dim_plus

    @property
    def regular(self) -> bool:
        return self.ker_dim_minus == 0 and self.ker_dim_plus == 0


def constraint_chart(system: ConstrainedSystem, g: Vector) -> Matrix:
    """(dim_g x (dim_g - rank)) orthonormal chart directions of N at g.

    Columns are local-chart coordinates z with d phi(g) T z = 0, where T is
    the tangent basis of the model's local chart.
    """
    dim = system.model.dim_g
    if system.m == 0:
        return np.eye(dim)
    basis = tangent_basis(system.model, g)
    jac = system.constraint_jacobian(g, basis)
    return scipy.linalg.null_space(jac, rcond=KERNEL_THRESHOLD)


def _spectrum(jac: Matrix, threshold: float) -> tuple[int, int, float]:
    sigma = scipy.linalg.svd(jac, compute_uv=False)
    if sigma.size == 0:
        return 0, 0, 1.0
    kernel = int(np.sum(sigma < threshold * sigma[0])) if sigma[0] > 0 else sigma.size
    kernel += jac.shape[1] - sigma.size
    condition = float(sigma[0] / sigma[-1]) if sigma[-1] > 0 else float("inf")
    return jac.shape[1] - kernel, kernel, condition


def kernel_threshold(system: ConstrainedSystem) -> float:
    """Relative singular-value cutoff for the Legendre Jacobians of ``system``."""
    return KERNEL_THRESHOLD if system.analytic else FD_KERNEL_THRESHOLD


def regularity_report(
    system: ConstrainedSystem,
    p: SigmaPoint,
    *,
    step: float = CHART_STEP,
) -> RegularityReport:
    """Jacobians of F-L and F+L in Sigma_L coordinates (chart of N plus lambda).

    Both maps send a point of Sigma_L to its base point and covector
    components, so each Jacobian is square of size dim G. Singular values
    below ``kernel_threshold(system)`` times the largest count as kernel.
    """
    model = system.model
    g = np.asarray(p.g, dtype=float)
    chart = constraint_chart(system, g)
    k = chart.shape[1]

    def point(z: Vector) -> tuple[Vector, Vector]:
        return model.local_chart(g, chart @ z[:k]), p.lam + z[k:]

    def minus_map(z: Vector) -> Vector:
        h, lam = point(z)
        return np.concatenate([model.source(h), minus_components(system, h, lam)])

    def plus_map(z: Vector) -> Vector:
        h, lam = point(z)
        return np.concatenate([model.target(h), plus_components(system, h, lam)])

    z0 = np.zeros(k + system.m)
    threshold = kernel_threshold(system)
    rank_minus, ker_minus, cond_minus = _spectrum(fd_jacobian(minus_map, z0, step), threshold)
    rank_plus, ker_plus, cond_plus = _spectrum(fd_jacobian(plus_map, z0, step), threshold)
    if ker_minus != ker_plus:
        logger.warning("Legendre kernel dimensions differ: %d vs %d", ker_minus, ker_plus)
    return RegularityReport(
        dim=model.dim_g,
        rank_minus=rank_minus,
        rank_plus=rank_plus,
        ker_dim_minus=ker_minus,
        ker_dim_plus=ker_plus,
        condition_minus=cond_minus,
        condition_plus=cond_plus,
    )
