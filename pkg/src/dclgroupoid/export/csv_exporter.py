"""CSV exporter for simulated trajectories."""

from __future__ import annotations

import csv
from pathlib import Path

from ..dynamics.models import Trajectory
from ..simulation import Simulation

SIGNIFICANT_DIGITS = 17


def format_value(value: float) -> str:
    """Float with 17 significant digits, enough to round-trip a double."""
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def export_trajectory_csv(
    output_path: str | Path,
    simulation: Simulation,
    trajectory: Trajectory,
) -> None:
    """Write one row per trajectory point under the simulation's header.

    The step column is written as an integer.
    """
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(simulation.columns)
        for row in simulation.rows(trajectory):
            writer.writerow([str(int(row[0]))] + [format_value(v) for v in row[1:]])
