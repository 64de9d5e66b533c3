"""Named verification suites run by ``dclgroupoid check``.

Each suite builds the bundled systems, measures its checks and returns a
list of assertions. Negative controls pass when the measured defect is
large.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Final

import numpy as np

from ..dynamics.models import ConstrainedSystem, SigmaPoint, Trajectory
from ..dynamics.regularity import regularity_report
from ..dynamics.solver import run, sigma_points_from_pairs
from ..errors import ConfigurationError
from ..groupoid.catalog import (
    group_bisection,
    pair_bisection_through,
    pair_groupoid,
    plate_ball_groupoid,
    so3_groupoid,
    time_extended_groupoid,
)
from ..groupoid.checks import (
    AXIOM_TOL,
    check_axioms,
    tangent_inversion_check,
    tangent_multiplication_check,
)
from ..groupoid.models import GroupoidModel
from ..lie.control import rigid_body_problem
from ..lie.lie_poisson import LiePoissonState, lie_poisson_run, spatial_momentum
from ..lie.retraction import RetractionKind, dtau_inv_fd_matrix, make_retraction
from ..lie.so3 import hat
from ..numerics import SolverOptions
from ..systems.optimal_control import algebra_velocity, control_point, optimal_control_system
from ..systems.pair import (
    degenerate_system,
    free_particle,
    harmonic_oscillator,
    pair_point,
    pendulum_on_circle,
    rail_arrival_height,
    rail_system,
)
from ..systems.plate_ball import PlateBallConfig, plate_ball_initial_point, plate_ball_system
from ..systems.time_extended import FixedStep, lift_point, time_extended
from .models import Assertion, MorphismReport, NoetherCandidate, Verdict
from .noether import SYMMETRY_TOL, momentum_drift, noether_check
from .reduction import (
    REDUCTION_TOL,
    check_morphism,
    identity_morphism,
    morphism_reduction_check,
    pullback_defect,
    time_projection_morphism,
)
from .variational import action_criticality, max_action_criticality

logger = logging.getLogger(__name__)

TRAJECTORY_STEPS: Final[int] = 100
PLATE_BALL_STEPS: Final[int] = 20
CRITICALITY_TOL: Final[float] = 1e-8
PERTURBATION: Final[float] = 1e-3
PERTURBATION_FLOOR: Final[float] = 1e-5
CONTROL_FLOOR: Final[float] = 1e-3
DRIFT_TOL: Final[float] = 1e-8
INVERSION_TOL: Final[float] = 1e-6
MULTIPLICATION_TOL: Final[float] = 1e-5
DTAU_TOL: Final[float] = 1e-6
LIE_POISSON_TOL: Final[float] = 1e-8
NORM_DRIFT_TOL: Final[float] = 1e-9


@dataclass(frozen=True)
class SuiteOptions:
    """Seed, sample count and Newton settings shared by all suites."""

    seed: int = 0
    samples: int = 1000
    solver: SolverOptions = field(default_factory=SolverOptions)


Suite = Callable[[SuiteOptions], list[Assertion]]


def _models() -> list[GroupoidModel]:
    return [
        pair_groupoid(3),
        so3_groupoid(RetractionKind.CAY),
        so3_groupoid(RetractionKind.EXP),
        plate_ball_groupoid(),
        time_extended_groupoid(pair_groupoid(2)),
    ]


def _plate_ball() -> tuple[PlateBallConfig, ConstrainedSystem, SigmaPoint]:
    cfg = PlateBallConfig(r=1.0, Omega=0.0, c=0.0, h=0.1)
    return cfg, plate_ball_system(cfg), plate_ball_initial_point(cfg, vx=0.1, vy=0.05)


def _trajectories(options: SuiteOptions) -> list[tuple[ConstrainedSystem, Trajectory]]:
    free = free_particle(h=0.1, n=2)
    rail = rail_system(h=0.1, kappa=0.5)
    oscillator = harmonic_oscillator(h=0.1)
    starts = [
        (free, pair_point(free, (0.0, 0.0), (0.03, -0.02))),
        (rail, pair_point(rail, (0.0, 1.0), (0.1, rail_arrival_height(1.0, 0.1, 0.5)))),
        (oscillator, pair_point(oscillator, (1.0,), (np.cos(0.1),))),
    ]
    result = [(s, run(s, p, TRAJECTORY_STEPS, options.solver)) for s, p in starts]
    _, plate, p1 = _plate_ball()
    result.append((plate, run(plate, p1, PLATE_BALL_STEPS, options.solver)))
    return result


def axioms_suite(options: SuiteOptions) -> list[Assertion]:
    assertions = []
    for model in _models():
        report = check_axioms(model, n=options.samples, seed=options.seed)
        worst = max(report.residuals.values())
        note = ", ".join(report.failures)
        assertions.append(Assertion.below("axioms", model.name, worst, AXIOM_TOL, note))
    return assertions


def _pair_samples(
    system: ConstrainedSystem, rng: np.random.Generator, count: int
) -> list[SigmaPoint]:
    points = []
    for _ in range(count):
        g = rng.normal(size=system.model.coord_dim)
        if system.name == "pendulum":
            g[2:] /= np.linalg.norm(g[2:])
        elif system.name == "rail":
            g[2] = g[0] + rng.uniform(-1.0, 1.0)
            g[3] = rail_arrival_height(g[1], g[2] - g[0], 0.5)
        points.append(SigmaPoint.on(system, g, rng.normal(size=system.m)))
    return points


def regularity_suite(options: SuiteOptions) -> list[Assertion]:
    """Kernel dimensions of T(F-L) and T(F+L) agree at every sampled point."""
    rng = np.random.default_rng(options.seed)
    systems = [
        free_particle(),
        harmonic_oscillator(),
        pendulum_on_circle(),
        rail_system(),
        degenerate_system(),
    ]
    plate_count = min(options.samples, PLATE_BALL_STEPS)
    per_system = max(1, math.ceil((options.samples - plate_count) / len(systems)))
    assertions = []
    degenerate_kernel = 0
    for system in systems:
        reports = [regularity_report(system, p) for p in _pair_samples(system, rng, per_system)]
        mismatches = sum(not r.kernels_agree for r in reports)
        assertions.append(
            Assertion.below("regularity", f"kernels agree [{system.name}]", mismatches, 1.0)
        )
        if system.name == "degenerate":
            degenerate_kernel = min(r.ker_dim_minus for r in reports)

    _, plate, p1 = _plate_ball()
    trajectory = run(plate, p1, plate_count, options.solver)
    mismatches = sum(not regularity_report(plate, p).kernels_agree for p in trajectory.points)
    assertions.append(Assertion.below("regularity", "kernels agree [plate-ball]", mismatches, 1.0))
    sampled = per_system * len(systems) + len(trajectory.points)
    assertions.append(
        Assertion.above("regularity", "sampled points", sampled, options.samples - 0.5)
    )
    assertions.append(
        Assertion.above("regularity", "degenerate kernel is nontrivial", degenerate_kernel, 0.5)
    )
    return assertions


def _translation(dim: int, axis: int = 0) -> NoetherCandidate:
    e = np.zeros(dim)
    e[axis] = 1.0
    return NoetherCandidate(name=f"translation e{axis + 1}", section=lambda q: e)


def noether_suite(options: SuiteOptions) -> list[Assertion]:
    """Translation momenta: conserved for free and rail systems, not for the oscillator."""
    rail = rail_system(h=0.1, kappa=0.5)
    p1 = pair_point(rail, (0.0, 1.0), (0.1, rail_arrival_height(1.0, 0.1, 0.5)))
    rail_run = run(rail, p1, TRAJECTORY_STEPS, options.solver)
    along_x = _translation(2)

    free = free_particle(h=1.0, n=2)
    free_run = run(free, pair_point(free, (0.0, 0.0), (0.3, -0.2)), 10, options.solver)

    oscillator = harmonic_oscillator(h=0.1)
    osc_start = pair_point(oscillator, (1.0,), (np.cos(0.1),))
    osc_run = run(oscillator, osc_start, TRAJECTORY_STEPS, options.solver)
    along_q = _translation(1)

    return [
        Assertion.below(
            "noether", "free particle translation", noether_check(free, along_x, free_run.points),
            SYMMETRY_TOL,
        ),
        Assertion.below(
            "noether", "rail translation", noether_check(rail, along_x, rail_run.points),
            SYMMETRY_TOL,
        ),
        Assertion.below(
            "noether", "rail momentum drift", momentum_drift(rail, along_x, rail_run), DRIFT_TOL
        ),
        Assertion.above(
            "noether",
            "oscillator translation is not a symmetry",
            noether_check(oscillator, along_q, osc_run.points),
            CONTROL_FLOOR,
        ),
        Assertion.above(
            "noether",
            "oscillator translation momentum drifts",
            momentum_drift(oscillator, along_q, osc_run),
            CONTROL_FLOOR,
        ),
    ]


def perturbed(
    system: ConstrainedSystem, trajectory: Trajectory, index: int, delta: float = PERTURBATION
) -> Trajectory:
    """Pair-groupoid trajectory with configuration ``index`` shifted by ``delta``.

    Only meaningful for unconstrained systems, whose pairs stay in N.
    """
    n = trajectory.points[0].g.size // 2
    configurations = [p.g[:n].copy() for p in trajectory.points]
    configurations.append(trajectory.points[-1].g[n:].copy())
    configurations[index] = configurations[index] + delta
    return Trajectory.from_points(system, sigma_points_from_pairs(system, configurations))


def variational_suite(options: SuiteOptions) -> list[Assertion]:
    """DEL solutions are critical for the discrete constrained action."""
    assertions = [
        Assertion.below(
            "variational",
            f"criticality [{system.name}]",
            max_action_criticality(system, trajectory),
            CRITICALITY_TOL,
        )
        for system, trajectory in _trajectories(options)
    ]
    oscillator = harmonic_oscillator(h=0.1)
    osc_run = run(oscillator, pair_point(oscillator, (1.0,), (np.cos(0.1),)), 10, options.solver)
    shifted = perturbed(oscillator, osc_run, 5)
    assertions.append(
        Assertion.above(
            "variational",
            "perturbed trajectory is not critical",
            action_criticality(oscillator, shifted, 4),
            PERTURBATION_FLOOR,
        )
    )
    return assertions


def reduction_suite(options: SuiteOptions) -> list[Assertion]:
    """Lifts through the time projection solve the time-extended dynamics."""
    assertions = []
    starts = [
        (free_particle(h=0.1), (0.0,), (0.05,)),
        (rail_system(h=0.1, kappa=0.5), (0.0, 1.0), (0.1, rail_arrival_height(1.0, 0.1, 0.5))),
    ]
    projections: list[MorphismReport] = []
    for inner, q_prev, q in starts:
        reduced = run(inner, pair_point(inner, q_prev, q), 20, options.solver)
        tsys = time_extended(inner, FixedStep(0.1))
        morphism = time_projection_morphism(tsys)
        result = morphism_reduction_check(morphism, tsys.system, inner, reduced)
        measured = result.max_residual if result.verdict is not Verdict.INCONCLUSIVE else np.inf
        assertions.append(
            Assertion.below(
                "reduction",
                f"time projection lift [{inner.name}]",
                measured,
                REDUCTION_TOL,
                "; ".join(result.details),
            )
        )
        lifted = morphism.lift(reduced.points) if morphism.lift is not None else []
        report = check_morphism(
            morphism, tsys.system, inner, lifted, n=min(options.samples, 200), seed=options.seed
        )
        assertions.append(
            Assertion.below(
                "reduction",
                f"morphism conditions [{inner.name}]",
                max(report.residuals.values()),
                report.tolerance,
            )
        )
        assertions.append(
            Assertion.below(
                "reduction",
                f"algebroid map [{inner.name}]",
                report.algebroid_residual,
                report.algebroid_tolerance,
            )
        )
        projections.append(report)
        mismatched = lift_point(tsys, reduced.points[0], 0.0, 0.1, lam_time=1.0)
        assertions.append(
            Assertion.above(
                "reduction",
                f"mismatched covectors are not related [{inner.name}]",
                pullback_defect(morphism, tsys.system, inner, mismatched, reduced.points[0]),
                CONTROL_FLOOR,
            )
        )

    # the projection forgets t1 - t0 = h, so off-step elements land in N' of the free particle
    free_report = projections[0]
    assertions.append(
        Assertion.above(
            "reduction",
            "step constraint is not reflected by the projection",
            free_report.preimage_failures,
            0.0,
            f"{free_report.preimage_failures} of {free_report.preimage_samples} elements off N",
        )
    )
    rail, rail_q_prev, rail_q = starts[1]
    rail_points = run(rail, pair_point(rail, rail_q_prev, rail_q), 5, options.solver).points
    strict = check_morphism(
        identity_morphism(rail), rail, rail, rail_points, n=min(options.samples, 200),
        seed=options.seed,
    )
    assertions.append(
        Assertion.below(
            "reduction",
            "identity reflects the rail constraint",
            strict.preimage_failures if strict.preimage_samples else np.inf,
            1.0,
            f"{strict.preimage_samples} elements off N",
        )
    )

    oscillator = harmonic_oscillator(h=0.1)
    osc_run = run(oscillator, pair_point(oscillator, (1.0,), (np.cos(0.1),)), 20, options.solver)
    same = morphism_reduction_check(identity_morphism(oscillator), oscillator, oscillator, osc_run)
    assertions.append(
        Assertion.below(
            "reduction",
            "identity lift reproduces residuals",
            abs(same.max_residual - osc_run.max_residual),
            1e-12,
        )
    )
    return assertions


def _inversion_defect(model: GroupoidModel, rng: np.random.Generator, count: int) -> float:
    worst = 0.0
    for _ in range(count):
        q = rng.normal(size=model.dim_q)
        v = np.asarray(model.algebroid_frame(q)) @ rng.normal(size=model.n_a)
        worst = max(worst, tangent_inversion_check(model, q, v))
    return worst


def _pair_multiplication_defect(rng: np.random.Generator, count: int, n: int = 2) -> float:
    model = pair_groupoid(n)
    worst = 0.0
    for _ in range(count):
        a, b, c = (rng.normal(size=n) for _ in range(3))
        g1 = np.concatenate([a, b])
        g2 = np.concatenate([b, c])
        va, vb, vc = (rng.normal(size=n) for _ in range(3))
        b1 = pair_bisection_through(g1, np.eye(n) + 0.3 * rng.normal(size=(n, n)))
        b2 = pair_bisection_through(g2, np.eye(n) + 0.3 * rng.normal(size=(n, n)))
        worst = max(
            worst,
            tangent_multiplication_check(
                model, g1, g2, np.concatenate([va, vb]), np.concatenate([vb, vc]), b1, b2
            ),
        )
    return worst


def _group_multiplication_defect(rng: np.random.Generator, count: int) -> float:
    model = so3_groupoid(RetractionKind.CAY)
    assert model.sample is not None
    worst = 0.0
    for _ in range(count):
        g1 = model.sample(rng, None)
        g2 = model.sample(rng, None)
        v1 = (g1.reshape(3, 3) @ hat(rng.normal(size=3))).ravel()
        v2 = (g2.reshape(3, 3) @ hat(rng.normal(size=3))).ravel()
        worst = max(
            worst,
            tangent_multiplication_check(
                model, g1, g2, v1, v2, group_bisection(g1), group_bisection(g2)
            ),
        )
    return worst


def _dtau_defect(rng: np.random.Generator, count: int) -> dict[str, float]:
    worst = {}
    for kind in RetractionKind:
        ret = make_retraction(kind)
        defect = 0.0
        for _ in range(count):
            xi = rng.normal(size=3)
            xi *= rng.uniform(0.0, 0.8) / np.linalg.norm(xi)
            diff = ret.dtau_inv_matrix(xi) - dtau_inv_fd_matrix(ret, xi)
            defect = max(defect, float(np.max(np.abs(diff))))
        worst[kind.value] = defect
    return worst


def _lie_poisson_defects(kind: RetractionKind, options: SuiteOptions) -> tuple[float, float]:
    """(max |xi generic - xi Lie-Poisson|, max per-step change of |mu|) for a free rigid body."""
    ret = make_retraction(kind)
    h = 0.1
    problem = rigid_body_problem((1.0, 2.0, 3.0))
    system = optimal_control_system(problem, ret, h)
    xi0 = np.array([0.4, -0.2, 0.3])
    generic = run(system, control_point(system, ret, h, xi0), TRAJECTORY_STEPS, options.solver)
    state = LiePoissonState(g=ret.tau(h * xi0), xi=xi0, lam=np.zeros(0))
    states = lie_poisson_run(problem, ret, h, state, TRAJECTORY_STEPS, options=options.solver)

    gap = max(
        float(np.max(np.abs(algebra_velocity(ret, h, p.g) - s.xi)))
        for p, s in zip(generic.points, states)
    )
    norms = [
        float(np.linalg.norm(spatial_momentum(problem, ret, h, s.xi, s.lam))) for s in states
    ]
    drift = max((abs(b - a) for a, b in zip(norms, norms[1:])), default=0.0)
    return gap, drift


def identities_suite(options: SuiteOptions) -> list[Assertion]:
    """Tangent identities, retraction derivatives and the Lie-Poisson cross-check."""
    rng = np.random.default_rng(options.seed)
    count = min(options.samples, 100)
    assertions = [
        Assertion.below(
            "identities",
            f"tangent inversion [{model.name}]",
            _inversion_defect(model, rng, count),
            INVERSION_TOL,
        )
        for model in _models()
    ]
    assertions.append(
        Assertion.below(
            "identities",
            "tangent multiplication [pair(R^2)]",
            _pair_multiplication_defect(rng, count),
            MULTIPLICATION_TOL,
        )
    )
    assertions.append(
        Assertion.below(
            "identities",
            "tangent multiplication [SO(3)]",
            _group_multiplication_defect(rng, count),
            MULTIPLICATION_TOL,
        )
    )
    for kind, defect in _dtau_defect(rng, count).items():
        assertions.append(
            Assertion.below("identities", f"dtau^-1 vs oracle [{kind}]", defect, DTAU_TOL)
        )
    for kind in RetractionKind:
        gap, drift = _lie_poisson_defects(kind, options)
        assertions.append(
            Assertion.below(
                "identities", f"generic vs Lie-Poisson [{kind.value}]", gap, LIE_POISSON_TOL
            )
        )
        assertions.append(
            Assertion.below(
                "identities", f"momentum norm drift [{kind.value}]", drift, NORM_DRIFT_TOL
            )
        )
    return assertions


SUITES: Final[dict[str, Suite]] = {
    "axioms": axioms_suite,
    "regularity": regularity_suite,
    "noether": noether_suite,
    "variational": variational_suite,
    "reduction": reduction_suite,
    "identities": identities_suite,
}

SUITE_NAMES: Final[tuple[str, ...]] = (*SUITES, "all")


def run_suite(name: str, options: SuiteOptions | None = None) -> list[Assertion]:
    """Run one named suite, or every suite for ``"all"``.

    Raises:
        ConfigurationError: unknown suite name
    """
    options = options or SuiteOptions()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ConfigurationError(f"unknown suite: {name}")
    assertions: list[Assertion] = []
    for suite in names:
        logger.debug("running suite %s", suite)
        assertions.extend(SUITES[suite](options))
    return assertions
