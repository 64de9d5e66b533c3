"""Build runnable simulations of the bundled systems from a RunConfig."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig
from .dynamics.models import ConstrainedSystem, SigmaPoint, Trajectory
from .dynamics.solver import run
from .errors import ConfigurationError, DomainError
from .lie.control import ControlProblem, rigid_body_problem
from .lie.lie_poisson import spatial_momentum
from .lie.retraction import Retraction, make_retraction
from .numerics import SolverOptions
from .systems.optimal_control import algebra_velocity, control_point, optimal_control_system
from .systems.pair import (
    free_particle,
    harmonic_oscillator,
    oscillator_energy,
    pair_point,
    rail_system,
)
from .systems.plate_ball import PlateBallConfig, plate_ball_initial_point, plate_ball_system
from .systems.time_extended import (
    AdaptiveStep,
    FixedStep,
    adaptive_energy,
    lift_point,
    project_point,
    time_extended,
    time_extended_point,
)
from .verify.models import NoetherCandidate
from .verify.noether import momentum

logger = logging.getLogger(__name__)

Quantity = Callable[[SigmaPoint], float]


@dataclass
class Simulation:
    """A system, its first Sigma_L point and the quantities reported per row."""

    name: str
    system: ConstrainedSystem
    initial: SigmaPoint
    steps: int
    options: SolverOptions = field(default_factory=SolverOptions)
    conserved: dict[str, Quantity] = field(default_factory=dict)
    timed: bool = False

    @property
    def columns(self) -> list[str]:
        """CSV header: step, t, coordinates, multipliers, constraints, residual, conserved."""
        m = self.system.m
        names = ["step"]
        if self.timed:
            names.append("t")
        names += list(self.system.model.coord_names)
        names += [f"lambda_{a + 1}" for a in range(m)]
        names += [f"phi_{a + 1}" for a in range(m)]
        names.append("del_residual")
        names += list(self.conserved)
        return names

    def run(self) -> Trajectory:
        return run(self.system, self.initial, self.steps, self.options)

    def rows(self, trajectory: Trajectory) -> list[list[float]]:
        """One row per point; the residual of the initial point is 0."""
        rows = []
        for k, p in enumerate(trajectory.points):
            row = [float(k)]
            if self.timed:
                row.append(float(p.g[0]))
            row += [float(v) for v in p.g]
            row += [float(v) for v in p.lam]
            row += [float(v) for v in self.system.constraint_values(p.g)]
            row.append(trajectory.residuals[k - 1] if k else 0.0)
            row += [fn(p) for fn in self.conserved.values()]
            rows.append(row)
        return rows

    def conserved_drift(self, trajectory: Trajectory) -> dict[str, float]:
        """max_k |c(p_k) - c(p_1)| for each reported quantity."""
        drift = {}
        for name, fn in self.conserved.items():
            values = [fn(p) for p in trajectory.points]
            drift[name] = max(abs(v - values[0]) for v in values)
        return drift


def _translation(system: ConstrainedSystem, axis: int) -> Quantity:
    e = np.zeros(system.model.n_a)
    e[axis] = 1.0
    candidate = NoetherCandidate(name=f"translation e{axis + 1}", section=lambda q: e)
    return lambda p: momentum(system, candidate, p)


def _pair(config: RunConfig) -> tuple[ConstrainedSystem, SigmaPoint, dict[str, Quantity]]:
    params = config.pair
    h = config.h
    n = len(params.q0)
    builders: dict[str, Callable[[], ConstrainedSystem]] = {
        "free": lambda: free_particle(h, n=n),
        "oscillator": lambda: harmonic_oscillator(h, omega=params.omega, n=n),
        "rail": lambda: rail_system(h, kappa=params.kappa),
    }
    system = builders[params.example]()
    dim_q = system.model.dim_q
    if len(params.q0) != dim_q or len(params.q1) != dim_q:
        raise ConfigurationError(
            f"pair.q0 and pair.q1 need {dim_q} entries for example '{params.example}'"
        )
    initial = pair_point(system, params.q0, params.q1, config.initial_lambda)

    conserved: dict[str, Quantity] = {}
    if params.example == "free":
        for i in range(dim_q):
            conserved[f"momentum_{i + 1}"] = _translation(system, i)
    elif params.example == "rail":
        conserved["momentum_x"] = _translation(system, 0)
    elif params.example == "oscillator":
        conserved["energy"] = lambda p: oscillator_energy(p.g, h, params.omega)
    return system, initial, conserved


def _plate_ball(
    config: RunConfig, options: SolverOptions
) -> tuple[ConstrainedSystem, SigmaPoint, dict[str, Quantity]]:
    params = config.plate_ball
    cfg = PlateBallConfig(r=params.r, Omega=params.Omega, c=params.c, h=config.h)
    system = plate_ball_system(cfg)
    initial = plate_ball_initial_point(
        cfg, params.x, params.y, params.vx, params.vy, config.initial_lambda, options
    )
    conserved = {"momentum_x": _translation(system, 0), "momentum_y": _translation(system, 1)}
    return system, initial, conserved


def _control(config: RunConfig) -> tuple[ControlProblem, Retraction]:
    params = config.optimal_control
    if len(params.inertia) not in (3, 9) or len(params.xi) != 3:
        raise ConfigurationError("optimal_control.inertia needs 3 or 9 entries and xi needs 3")
    return rigid_body_problem(params.inertia, params.pin_z), make_retraction(params.retraction)


def _control_quantities(problem: ControlProblem, ret: Retraction, h: float) -> dict[str, Quantity]:
    def lam_of(p: SigmaPoint) -> np.ndarray | None:
        return np.asarray(p.lam) if problem.m else None

    def momentum_norm(p: SigmaPoint) -> float:
        xi = algebra_velocity(ret, h, p.g)
        return float(np.linalg.norm(spatial_momentum(problem, ret, h, xi, p.lam)))

    def energy(p: SigmaPoint) -> float:
        return problem.energy(algebra_velocity(ret, h, p.g), lam_of(p))

    return {"momentum_norm": momentum_norm, "energy": energy}


def _optimal_control(
    config: RunConfig,
) -> tuple[ConstrainedSystem, SigmaPoint, dict[str, Quantity]]:
    problem, ret = _control(config)
    h = config.h
    system = optimal_control_system(problem, ret, h)
    lam = config.initial_lambda
    initial = control_point(system, ret, h, np.asarray(config.optimal_control.xi), lam)
    return system, initial, _control_quantities(problem, ret, h)


def _adaptive(config: RunConfig) -> Simulation:
    problem, ret = _control(config)
    h = config.h
    tsys = time_extended(optimal_control_system(problem, ret, h), AdaptiveStep(problem, ret))
    g = ret.tau(h * np.asarray(config.optimal_control.xi, dtype=float)).ravel()
    initial = time_extended_point(tsys, 0.0, h, g, config.initial_lambda)
    return Simulation(
        name=tsys.system.name,
        system=tsys.system,
        initial=initial,
        steps=config.steps,
        conserved={"energy": lambda p: adaptive_energy(tsys, p)},
        timed=True,
    )


def build_simulation(config: RunConfig) -> Simulation:
    """Simulation for the configured system and time rule.

    Raises:
        ConfigurationError: inconsistent parameters or an initial state off
                            the constraints
    """
    options = SolverOptions(
        tol=config.solver.tol,
        max_iter=config.solver.max_iter,
        max_halvings=config.solver.max_halvings,
    )
    try:
        if config.time_rule == "adaptive":
            simulation = _adaptive(config)
            simulation.options = options
            return simulation
        if config.system == "plate-ball":
            system, initial, conserved = _plate_ball(config, options)
        elif config.system == "optimal-control":
            system, initial, conserved = _optimal_control(config)
        elif config.system == "pair":
            system, initial, conserved = _pair(config)
        else:
            raise ConfigurationError(f"unknown system: {config.system}")
    except DomainError as e:
        raise ConfigurationError(f"initial state: {e}") from e

    if config.time_rule == "fixed":
        tsys = time_extended(system, FixedStep(config.h))
        lifted = {
            name: (lambda p, fn=fn: fn(project_point(tsys, p))) for name, fn in conserved.items()
        }
        logger.debug("lifting %s to the time-extended groupoid", system.name)
        return Simulation(
            name=tsys.system.name,
            system=tsys.system,
            initial=lift_point(tsys, initial, 0.0, config.h),
            steps=config.steps,
            options=options,
            conserved=lifted,
            timed=True,
        )
    return Simulation(
        name=system.name,
        system=system,
        initial=initial,
        steps=config.steps,
        options=options,
        conserved=conserved,
    )
