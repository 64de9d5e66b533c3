"""Config management commands."""

from __future__ import annotations

from dataclasses import asdict
from io import StringIO
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.syntax import Syntax
from ruamel.yaml import YAML

from ..config import (
    REQUIRED_KEYS,
    SECTION,
    RunConfig,
    find_config_path,
    get_default_config_yaml,
    load_config,
    validate_config,
)
from ..errors import ConfigurationError

console = Console()

DEFAULT_FILENAME = "dclgroupoid.yaml"

# RunConfig attribute holding each system's parameter section
SYSTEM_SECTIONS = {
    "plate-ball": "plate_ball",
    "optimal-control": "optimal_control",
    "pair": "pair",
}


def _resolve(config_path: str | None) -> Path | None:
    return Path(config_path).resolve() if config_path else find_config_path()


def _as_yaml(cfg: RunConfig, all_sections: bool) -> str:
    data: dict[str, Any] = asdict(cfg)
    data["time"] = {"rule": data.pop("time_rule")}
    data["initial"] = {"lambda": data.pop("initial_lambda")}
    if not all_sections:
        keep = SYSTEM_SECTIONS.get(cfg.system)
        for section in SYSTEM_SECTIONS.values():
            if section != keep:
                data.pop(section)

    yaml = YAML()
    yaml.default_flow_style = False
    buf = StringIO()
    yaml.dump({SECTION: data}, buf)
    return buf.getvalue()


@click.group("config")
def config() -> None:
    """Manage dclgroupoid run configuration.

    Create, show and validate dclgroupoid.yaml files.
    """


@config.command()
@click.option("--force", "-f", is_flag=True, help="Overwrite an existing file")
@click.option("--filename", default=DEFAULT_FILENAME, help="Target file name")
def init(force: bool, filename: str) -> None:
    """Write the starter plate-ball configuration to the current directory."""
    target = Path.cwd() / filename
    if target.exists() and not force:
        console.print(f"[yellow]Config file already exists:[/yellow] {target}")
        console.print("[dim]Pass --force to replace it.[/dim]")
        return

    target.write_text(get_default_config_yaml(), encoding="utf-8")
    console.print(f"[green]Config file created:[/green] {target}")
    console.print("[dim]Next: dclgroupoid simulate[/dim]")


@config.command()
@click.option("--config", "-c", "config_path", default=None, help="Config file path")
@click.option("--all", "all_sections", is_flag=True, help="Include every system's section")
def show(config_path: str | None, all_sections: bool) -> None:
    """Show the effective run configuration for the selected system."""
    source = _resolve(config_path)
    try:
        cfg = load_config(source) if source is not None else RunConfig()
    except ConfigurationError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise SystemExit(2) from e

    console.print(Syntax(_as_yaml(cfg, all_sections), "yaml", theme="monokai"))
    required = ", ".join(REQUIRED_KEYS[cfg.system])
    console.print(f"[dim]Required for {cfg.system}: {required}[/dim]")
    if source is None:
        console.print("\n[dim]No config file found (using defaults)[/dim]")
    else:
        console.print(f"\n[dim]Config file: {source}[/dim]")


@config.command()
@click.option("--config", "-c", "config_path", default=None, help="Config file path")
def validate(config_path: str | None) -> None:
    """Check key names, required parameters and value types."""
    target = Path(config_path) if config_path else find_config_path()
    if target is None:
        console.print("[yellow]No config file found.[/yellow]")
        console.print("[dim]Run 'dclgroupoid config init' to create one.[/dim]")
        return
    if not target.exists():
        console.print(f"[red]Config file not found:[/red] {target}")
        raise SystemExit(1)

    errors = validate_config(target)
    if errors:
        console.print(f"[red]Config has {len(errors)} error(s):[/red] {target}")
        for err in errors:
            console.print(f"  [red]-[/red] {err}")
        raise SystemExit(1)

    cfg = load_config(target)
    console.print(f"[green]Config is valid:[/green] {target}")
    console.print(
        f"[dim]{cfg.system}, {cfg.steps} steps of h={cfg.h}, time rule {cfg.time_rule}[/dim]"
    )


@config.command()
def path() -> None:
    """Print the path to the active config file."""
    found = find_config_path()
    if found is None:
        console.print("[dim]No config file found.[/dim]")
        raise SystemExit(1)
    click.echo(str(found))
