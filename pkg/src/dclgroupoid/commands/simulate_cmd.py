"""Simulate command - run a configured system and write the trajectory CSV."""

from __future__ import annotations

from dataclasses import replace

import click
from rich.console import Console
from rich.table import Table

from ..config import load_config
from ..errors import ConfigurationError, DclError
from ..export.csv_exporter import export_trajectory_csv
from ..simulation import build_simulation
from ..utils.formatting import format_residual

console = Console()


@click.command("simulate")
@click.option("--config", "-c", "config_path", default=None, help="Config file path")
@click.option("--out", "-o", default=None, help="Output CSV file (overrides 'output')")
@click.option("--tol", default=None, type=float, help="Newton tolerance (overrides solver.tol)")
def simulate(config_path: str | None, out: str | None, tol: float | None) -> None:
    """Run the configured system and write its trajectory as CSV.

    \b
    Examples:
        dclgroupoid simulate
        dclgroupoid simulate -c plate_ball.yaml -o plate_ball.csv
    """
    try:
        cfg = load_config(config_path)
        if tol is not None:
            cfg.solver = replace(cfg.solver, tol=tol)
        simulation = build_simulation(cfg)
    except ConfigurationError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise SystemExit(2) from e
    except DclError as e:
        console.print(f"[red]Error:[/red] initial state: {e}")
        raise SystemExit(1) from e

    output = out or cfg.output
    try:
        trajectory = simulation.run()
    except DclError as e:
        console.print(f"[red]Error:[/red] {simulation.name}: {e}")
        raise SystemExit(1) from e

    try:
        export_trajectory_csv(output, simulation, trajectory)
    except OSError as e:
        console.print(f"[red]Error writing CSV to {output}:[/red] {e}")
        raise SystemExit(1) from e

    table = Table(title=f"{simulation.name} ({len(trajectory)} points)")
    table.add_column("Quantity", style="cyan")
    table.add_column("Max", justify="right")
    table.add_row("DEL residual", format_residual(trajectory.max_residual))
    table.add_row("constraint violation", format_residual(trajectory.max_constraint_violation))
    table.add_row("composability defect", format_residual(trajectory.max_composability_defect))
    for name, drift in simulation.conserved_drift(trajectory).items():
        table.add_row(f"{name} drift", format_residual(drift))
    console.print(table)
    console.print(f"[green]Trajectory written to:[/green] {output}")
