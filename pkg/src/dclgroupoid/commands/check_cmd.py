"""Check command - run verification suites."""

from __future__ import annotations

import click
from rich.console import Console
from rich.table import Table

from ..config import find_config_path, load_config
from ..errors import ConfigurationError, DclError
from ..numerics import SolverOptions
from ..utils.formatting import format_residual, truncate_text
from ..verify import SUITE_NAMES, SuiteOptions, run_suite

console = Console()


def _config_seed(config_path: str | None) -> int:
    if config_path is None and find_config_path() is None:
        return 0
    return load_config(config_path).seed


@click.command("check")
@click.argument("suite", type=click.Choice(SUITE_NAMES))
@click.option("--config", "-c", "config_path", default=None, help="Config file supplying 'seed'")
@click.option("--seed", default=None, type=int, help="Random seed (overrides the config 'seed')")
@click.option("--tol", default=None, type=float, help="Newton tolerance for suite trajectories")
@click.option("--samples", default=1000, help="Samples per sampled check")
def check(
    suite: str, config_path: str | None, seed: int | None, tol: float | None, samples: int
) -> None:
    """Run a verification suite and report every measured check.

    Sampled checks draw from a generator seeded by --seed, else by the
    'seed' of the run configuration, else 0. Exits with status 1 when any
    check fails and 2 when the configuration is invalid.

    \b
    Examples:
        dclgroupoid check axioms
        dclgroupoid check all --samples 200
    """
    if seed is None:
        try:
            seed = _config_seed(config_path)
        except ConfigurationError as e:
            console.print(f"[red]Error:[/red] {e}")
            raise SystemExit(2) from e
    solver = SolverOptions() if tol is None else SolverOptions(tol=tol)
    options = SuiteOptions(seed=seed, samples=samples, solver=solver)
    try:
        assertions = run_suite(suite, options)
    except DclError as e:
        console.print(f"[red]Error:[/red] suite '{suite}' could not run: {e}")
        raise SystemExit(1) from e

    table = Table(title=f"check {suite}")
    table.add_column("Suite", style="cyan")
    table.add_column("Check")
    table.add_column("Measured", justify="right")
    table.add_column("Threshold", justify="right")
    table.add_column("Result")
    for a in assertions:
        result = "[bold green]PASS[/bold green]" if a.passed else "[bold red]FAIL[/bold red]"
        if a.note and not a.passed:
            result += f" [dim]{truncate_text(a.note, 40)}[/dim]"
        table.add_row(
            a.suite, a.name, format_residual(a.measured), format_residual(a.threshold), result
        )
    console.print(table)

    failed = [a for a in assertions if not a.passed]
    if failed:
        console.print(f"[red]{len(failed)} of {len(assertions)} check(s) failed.[/red]")
        raise SystemExit(1)
    console.print(f"[green]All {len(assertions)} checks passed.[/green]")
