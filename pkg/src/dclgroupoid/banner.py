"""Startup banner: wordmark, bundled groupoid families and numerical backends."""

from __future__ import annotations

from collections.abc import Mapping

from rich.console import Console
from rich.table import Table

from .lie.retraction import RetractionKind

WORDMARK = r"""
     __     __                           _     __
 ___/ /____/ /__ ________  __ _____  ___(_)___/ /
/ _  / __/ / _ `/ __/ _ \/ // / _ \/ _ \/ / _  /
\_,_/\__/_/\_, /_/  \___/\_,_/ .__/\___/_/\_,_/
          /___/             /_/
"""

TAGLINE = "discrete constrained mechanics on groupoids"

# (groupoid, what it carries) for the bundled systems
FAMILIES: tuple[tuple[str, str], ...] = (
    ("Q x Q", "pair examples: free, oscillator, rail"),
    ("SO(3)", "optimal control"),
    ("(R2 x R2) x SO(3)", "ball on a rotating plate"),
    ("R x R x G", "fixed, custom and energy-adaptive steps"),
)


def families_table() -> Table:
    """Two-column table of the bundled groupoid families."""
    table = Table(show_header=False, box=None, padding=(0, 2))
    table.add_column(style="cyan")
    table.add_column(style="dim")
    for groupoid, systems in FAMILIES:
        table.add_row(groupoid, systems)
    retractions = " | ".join(kind.value for kind in RetractionKind)
    table.add_row("retractions", retractions)
    return table


def print_banner(
    console: Console | None = None,
    show_version: bool = True,
    backends: Mapping[str, str] | None = None,
) -> None:
    """Print the wordmark, then the version line, families and backends on request."""
    if console is None:
        console = Console()

    console.print(f"[bold cyan]{WORDMARK}[/bold cyan]", highlight=False)
    if not show_version:
        return

    from dclgroupoid import __version__

    console.print(f"  [dim]v{__version__} - {TAGLINE}[/dim]")
    console.print()
    console.print(families_table())
    if backends:
        console.print()
        line = " | ".join(f"{name} {version}" for name, version in backends.items())
        console.print(f"  [dim]{line}[/dim]")
