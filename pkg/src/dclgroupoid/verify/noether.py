"""Noether symmetries of discrete constrained systems and their momenta."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Final

import numpy as np

from ..dynamics.legendre import legendre_minus, legendre_plus
from ..dynamics.models import ConstrainedSystem, SigmaPoint, Trajectory
from .models import NoetherCandidate

logger = logging.getLogger(__name__)

SYMMETRY_TOL: Final[float] = 1e-8


def _section(candidate: NoetherCandidate, q: np.ndarray) -> np.ndarray:
    return np.asarray(candidate.section(q), dtype=float)


def noether_defect(system: ConstrainedSystem, candidate: NoetherCandidate, p: SigmaPoint) -> float:
    """|<F-L, X(alpha)> + f(alpha) - <F+L, X(beta)> - f(beta)| at one point."""
    minus = legendre_minus(system, p)
    plus = legendre_plus(system, p)
    lhs = minus.pair(_section(candidate, minus.base)) + float(candidate.gauge(minus.base))
    rhs = plus.pair(_section(candidate, plus.base)) + float(candidate.gauge(plus.base))
    return abs(lhs - rhs)


def noether_check(
    system: ConstrainedSystem,
    candidate: NoetherCandidate,
    samples: Sequence[SigmaPoint],
) -> float:
    """Max Noether defect over the samples; a symmetry when below 1e-8."""
    worst = max((noether_defect(system, candidate, p) for p in samples), default=0.0)
    logger.debug("noether defect of %s on %s: %.3e", candidate.name, system.name, worst)
    return worst


def is_symmetry(
    system: ConstrainedSystem,
    candidate: NoetherCandidate,
    samples: Sequence[SigmaPoint],
) -> bool:
    return noether_check(system, candidate, samples) < SYMMETRY_TOL


def momentum(system: ConstrainedSystem, candidate: NoetherCandidate, p: SigmaPoint) -> float:
    """F_X(p) = <F-L(p), X(alpha(g))> + f(alpha(g))."""
    minus = legendre_minus(system, p)
    return minus.pair(_section(candidate, minus.base)) + float(candidate.gauge(minus.base))


def momentum_drift(
    system: ConstrainedSystem,
    candidate: NoetherCandidate,
    trajectory: Trajectory,
) -> float:
    """max_k |F_X(p_k) - F_X(p_1)| along a trajectory."""
    values = [momentum(system, candidate, p) for p in trajectory.points]
    if not values:
        return 0.0
    return float(max(abs(v - values[0]) for v in values))
