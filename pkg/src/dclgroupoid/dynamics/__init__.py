"""Discrete constrained Lagrangian dynamics: Sigma_L, Legendre transforms and the DEL solver."""

from .legendre import legendre_minus, legendre_plus
from .models import ConstrainedSystem, Covector, SigmaPoint, Trajectory
from .regularity import RegularityReport, constraint_chart, regularity_report
from .solver import (
    del_residual,
    junction_residual,
    run,
    sigma_points_from_pairs,
    solve_step,
    step,
    unconstrained_del_residual,
)

__all__ = [
    "ConstrainedSystem",
    "SigmaPoint",
    "Covector",
    "Trajectory",
    "legendre_minus",
    "legendre_plus",
    "del_residual",
    "junction_residual",
    "unconstrained_del_residual",
    "step",
    "solve_step",
    "run",
    "sigma_points_from_pairs",
    "RegularityReport",
    "regularity_report",
    "constraint_chart",
]
