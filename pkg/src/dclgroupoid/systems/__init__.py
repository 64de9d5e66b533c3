"""Bundled constrained systems: pair-groupoid examples, plate-ball, optimal control, G_R."""

from .optimal_control import algebra_velocity, control_point, optimal_control_system
from .pair import (
    degenerate_system,
    free_particle,
    harmonic_oscillator,
    oscillator_energy,
    pair_point,
    pendulum_on_circle,
    pinned_system,
    rail_arrival_height,
    rail_system,
)
from .plate_ball import (
    CrosscheckRow,
    PlateBallConfig,
    plate_ball_constraints,
    plate_ball_crosscheck,
    plate_ball_initial_point,
    plate_ball_residual_printed,
    plate_ball_system,
)
from .time_extended import (
    AdaptiveStep,
    CustomStep,
    FixedStep,
    StepRule,
    TimeExtendedSystem,
    adaptive_energy,
    lift_point,
    project_point,
    step_size,
    time_extended,
    time_extended_point,
)

__all__ = [
    # Pair groupoid
    "free_particle",
    "harmonic_oscillator",
    "oscillator_energy",
    "pendulum_on_circle",
    "degenerate_system",
    "pinned_system",
    "rail_system",
    "rail_arrival_height",
    "pair_point",
    # Plate-ball
    "PlateBallConfig",
    "CrosscheckRow",
    "plate_ball_system",
    "plate_ball_constraints",
    "plate_ball_initial_point",
    "plate_ball_residual_printed",
    "plate_ball_crosscheck",
    # Optimal control
    "optimal_control_system",
    "control_point",
    "algebra_velocity",
    # Time extension
    "FixedStep",
    "CustomStep",
    "AdaptiveStep",
    "StepRule",
    "TimeExtendedSystem",
    "time_extended",
    "time_extended_point",
    "lift_point",
    "project_point",
    "step_size",
    "adaptive_energy",
]
