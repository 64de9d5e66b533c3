"""Sample-based checks of the groupoid axioms and tangent identities."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Final

import numpy as np
import scipy.linalg

from ..errors import ConfigurationError, DomainError
from .calculus import tangent_map
from .catalog import Sampler, composable_sampler
from .models import AlgebroidBasis, AxiomReport, Bisection, GroupoidModel, Vector

logger = logging.getLogger(__name__)

AXIOM_TOL: Final[float] = 1e-10
BISECTION_TOL: Final[float] = 1e-9

AXIOMS: Final[tuple[str, ...]] = (
    "identity_section",
    "left_identity",
    "right_identity",
    "inverse",
    "associativity",
    "source_target",
    "fiber_chart",
)


def _dist(x: Vector, y: Vector) -> float:
    diff = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def _axiom_residuals(
    model: GroupoidModel,
    g: Vector,
    h: Vector,
    k: Vector,
    u: Vector,
) -> dict[str, float]:
    alpha, beta, eps, inv = model.source, model.target, model.identity_section, model.invert
    m = model.compose
    scale = max(1.0, *(float(np.max(np.abs(x))) for x in (g, h, k)))
    residuals: dict[str, float] = {}

    def record(name: str, compute: Callable[[], float]) -> None:
        try:
            value = compute() / scale
        except DomainError:
            value = float("inf")
        residuals[name] = value

    def identity_section() -> float:
        q0, q1 = alpha(g), beta(g)
        return max(
            _dist(alpha(eps(q0)), q0),
            _dist(beta(eps(q0)), q0),
            _dist(alpha(eps(q1)), q1),
            _dist(beta(eps(q1)), q1),
        )

    def inverse() -> float:
        return max(_dist(m(g, inv(g)), eps(alpha(g))), _dist(m(inv(g), g), eps(beta(g))))

    def source_target() -> float:
        gh = m(g, h)
        return max(_dist(alpha(gh), alpha(g)), _dist(beta(gh), beta(h)))

    def fiber_chart() -> float:
        q = alpha(g)
        return max(
            _dist(alpha(model.fiber_chart(q, u)), q),
            _dist(model.fiber_chart(q, np.zeros_like(u)), eps(q)),
        )

    record("identity_section", identity_section)
    record("left_identity", lambda: _dist(m(eps(alpha(g)), g), g))
    record("right_identity", lambda: _dist(m(g, eps(beta(g))), g))
    record("inverse", inverse)
    record("associativity", lambda: _dist(m(m(g, h), k), m(g, m(h, k))))
    record("source_target", source_target)
    record("fiber_chart", fiber_chart)
    return residuals


def check_axioms(
    model: GroupoidModel,
    sampler: Sampler | None = None,
    n: int = 1000,
    *,
    seed: int = 0,
    tolerance: float = AXIOM_TOL,
) -> AxiomReport:
    """Max scaled residual of each groupoid axiom over ``n`` sampled triples.

    ``sampler(rng)`` must return a composable triple (g, h, k). Residuals are
    divided by max(1, |g|, |h|, |k|); an axiom whose evaluation hits a
    non-composable pair is recorded as infinite.

    Raises:
        ConfigurationError: the sampler is missing or fails
    """
    rng = np.random.default_rng(seed)
    try:
        draw = sampler if sampler is not None else composable_sampler(model)
    except ValueError as e:
        raise ConfigurationError(str(e)) from e

    worst = {name: 0.0 for name in AXIOMS}
    for _ in range(n):
        try:
            g, h, k = draw(rng)
        except Exception as e:
            raise ConfigurationError(f"sampler failed for {model.name}: {e}") from e
        u = 0.1 * rng.normal(size=model.n_a)
        for name, value in _axiom_residuals(model, g, h, k, u).items():
            worst[name] = max(worst[name], value)

    report = AxiomReport(model=model.name, samples=n, residuals=worst, tolerance=tolerance)
    logger.debug("axioms for %s: %s", model.name, worst)
    return report


def basis_report(model: GroupoidModel, basis: AlgebroidBasis, q: Vector) -> tuple[float, float]:
    """(max |T alpha(v)| over basis vectors, smallest normalized singular value)."""
    unit = model.identity_section(np.asarray(q, dtype=float))
    frame = np.asarray(basis.basis_at(q), dtype=float)
    vertical = 0.0
    for i in range(basis.n_a):
        t_alpha = tangent_map(model.source, unit, frame[:, i])
        if t_alpha.size:
            vertical = max(vertical, float(np.max(np.abs(t_alpha))))
    normalized = frame / np.linalg.norm(frame, axis=0)
    sigma = scipy.linalg.svd(normalized, compute_uv=False)
    return vertical, float(sigma[-1]) if sigma.size else 0.0


def tangent_inversion_check(model: GroupoidModel, q: Vector, v: Vector) -> float:
    """|| Ti(v) - (-v + T(epsilon o beta)(v)) || at epsilon(q) for v in A_qG."""
    unit = model.identity_section(np.asarray(q, dtype=float))
    v = np.asarray(v, dtype=float)
    t_inv = tangent_map(model.invert, unit, v)
    t_eps_beta = tangent_map(lambda x: model.identity_section(model.target(x)), unit, v)
    return float(np.linalg.norm(t_inv - (-v + t_eps_beta)))


def tangent_multiplication_check(
    model: GroupoidModel,
    g1: Vector,
    g2: Vector,
    v1: Vector,
    v2: Vector,
    b1: Bisection,
    b2: Bisection,
) -> float:
    """Compare T m(v1, v2) with the bisection formula.

    The formula is T r_B2(v1) + T l_B1(v2) - T(l_B1 o r_B2 o epsilon)(v_q), where
    v_q = T beta(v1) = T alpha(v2), l_B(g) = B_beta(alpha(g)) g and
    r_B(g) = g B_alpha(beta(g)).

    Raises:
        DomainError: a bisection does not pass through its element, or the
                     tangent vectors are not composable
    """
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    if _dist(b1.beta_section(model.target(g1)), g1) > BISECTION_TOL:
        raise DomainError("first bisection does not pass through g1")
    if _dist(b2.alpha_section(model.source(g2)), g2) > BISECTION_TOL:
        raise DomainError("second bisection does not pass through g2")

    v_q = tangent_map(model.target, g1, v1)
    if _dist(v_q, tangent_map(model.source, g2, v2)) > 1e-6:
        raise DomainError("tangent vectors are not composable: T beta(v1) != T alpha(v2)")

    def left_b1(x: Vector) -> Vector:
        return model.compose(b1.beta_section(model.source(x)), x)

    def right_b2(x: Vector) -> Vector:
        return model.compose(x, b2.alpha_section(model.target(x)))

    stacked = np.concatenate([g1, g2])
    direction = np.concatenate([v1, v2])
    split = g1.size
    t_mult = tangent_map(lambda x: model.compose(x[:split], x[split:]), stacked, direction)

    t_right = tangent_map(right_b2, g1, v1)
    t_left = tangent_map(left_b1, g2, v2)
    q = model.target(g1)
    if q.size:
        t_both = tangent_map(lambda p: left_b1(right_b2(model.identity_section(p))), q, v_q)
    else:
        t_both = np.zeros_like(t_mult)
    return float(np.linalg.norm(t_mult - (t_right + t_left - t_both)))
