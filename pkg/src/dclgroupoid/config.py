"""Configuration loader for dclgroupoid runs."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ruamel.yaml import YAML, YAMLError

from .errors import ConfigurationError

SECTION = "dclgroupoid"

SYSTEMS = ("plate-ball", "optimal-control", "pair")
TIME_RULES = ("none", "fixed", "adaptive")
PAIR_EXAMPLES = ("free", "oscillator", "rail")
RETRACTIONS = ("cay", "exp")


@dataclass
class SolverParams:
    tol: float = 1e-10
    max_iter: int = 50
    max_halvings: int = 8


@dataclass
class PlateBallParams:
    """Ball radius, plate rotation and prescribed spin, plus the initial planar state."""

    r: float = 1.0
    Omega: float = 0.0
    c: float = 0.0
    x: float = 0.0
    y: float = 0.0
    vx: float = 0.0
    vy: float = 0.0


@dataclass
class OptimalControlParams:
    """Rigid-body cost on so(3), optional pinned z velocity and initial xi."""

    retraction: str = "cay"
    inertia: list[float] = field(default_factory=lambda: [1.0, 2.0, 3.0])
    xi: list[float] = field(default_factory=lambda: [0.4, -0.2, 0.3])
    pin_z: float | None = None


@dataclass
class PairParams:
    """Pair-groupoid example and its first two configurations."""

    example: str = "free"
    q0: list[float] = field(default_factory=lambda: [0.0])
    q1: list[float] = field(default_factory=lambda: [0.1])
    omega: float = 1.0
    kappa: float = 0.5


@dataclass
class RunConfig:
    """A simulation run: system, step, length and initial data."""

    system: str = "pair"
    h: float = 0.1
    steps: int = 100
    seed: int = 0
    output: str = "trajectory.csv"
    time_rule: str = "none"
    initial_lambda: list[float] | None = None
    solver: SolverParams = field(default_factory=SolverParams)
    plate_ball: PlateBallParams = field(default_factory=PlateBallParams)
    optimal_control: OptimalControlParams = field(default_factory=OptimalControlParams)
    pair: PairParams = field(default_factory=PairParams)


CONFIG_SEARCH_PATHS = [
    "dclgroupoid.yaml",
    "dclgroupoid.yml",
    ".dclgroupoid.yaml",
    ".dclgroupoid.yml",
]

KNOWN_KEYS = {
    "system",
    "steps",
    "seed",
    "output",
    "h",
    "time.rule",
    "solver.tol",
    "solver.max_iter",
    "solver.max_halvings",
    "initial.lambda",
    "plate_ball.r",
    "plate_ball.Omega",
    "plate_ball.c",
    "plate_ball.x",
    "plate_ball.y",
    "plate_ball.vx",
    "plate_ball.vy",
    "optimal_control.retraction",
    "optimal_control.inertia",
    "optimal_control.xi",
    "optimal_control.pin_z",
    "pair.example",
    "pair.q0",
    "pair.q1",
    "pair.omega",
    "pair.kappa",
}

REQUIRED_KEYS = {
    "plate-ball": ("h", "plate_ball.r", "plate_ball.Omega", "plate_ball.c"),
    "optimal-control": ("h", "optimal_control.inertia"),
    "pair": ("h", "pair.example"),
}


def find_config_path() -> Path | None:
    """Find the active config file path, or None if no config file exists."""
    for name in CONFIG_SEARCH_PATHS:
        path = Path.cwd() / name
        if path.exists():
            return path
    return None


def flatten(data: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    """Nested mappings to dotted keys: {"solver": {"tol": x}} -> {"solver.tol": x}."""
    flat: dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def _read(config_path: Path) -> dict[str, Any]:
    try:
        yaml = YAML()
        with open(config_path, "r", encoding="utf-8") as f:
            data = yaml.load(f)
    except YAMLError as e:
        raise ConfigurationError(f"invalid YAML in {config_path}: {e}") from e
    except OSError as e:
        raise ConfigurationError(f"cannot read config file {config_path}: {e}") from e

    if data is None:
        return {}
    if isinstance(data, dict) and SECTION in data:
        data = data[SECTION]
    if not isinstance(data, dict):
        raise ConfigurationError(f"config must be a YAML mapping, got {type(data).__name__}")
    return flatten(dict(data))


def _as_float(value: Any) -> float:
    if isinstance(value, bool):
        raise TypeError("boolean")
    return float(value)


def _as_int(value: Any) -> int:
    if isinstance(value, bool) or float(value) != int(value):
        raise TypeError("not an integer")
    return int(value)


def _as_floats(value: Any) -> list[float]:
    if not isinstance(value, list):
        raise TypeError("not a list")
    return [_as_float(v) for v in value]


def _choice(options: tuple[str, ...]) -> Callable[[Any], str]:
    def parse(value: Any) -> str:
        text = str(value)
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return text

    return parse


PARSERS: dict[str, Callable[[Any], Any]] = {
    "system": _choice(SYSTEMS),
    "steps": _as_int,
    "seed": _as_int,
    "output": str,
    "h": _as_float,
    "time.rule": _choice(TIME_RULES),
    "solver.tol": _as_float,
    "solver.max_iter": _as_int,
    "solver.max_halvings": _as_int,
    "initial.lambda": _as_floats,
    "optimal_control.retraction": _choice(RETRACTIONS),
    "optimal_control.inertia": _as_floats,
    "optimal_control.xi": _as_floats,
    "optimal_control.pin_z": _as_float,
    "pair.example": _choice(PAIR_EXAMPLES),
    "pair.q0": _as_floats,
    "pair.q1": _as_floats,
}


def _parse(flat: dict[str, Any]) -> tuple[dict[str, Any], list[str]]:
    errors: list[str] = []
    values: dict[str, Any] = {}
    for key, raw in flat.items():
        if key not in KNOWN_KEYS:
            errors.append(f"unknown key: '{key}'")
            continue
        parser = PARSERS.get(key, _as_float)
        try:
            values[key] = parser(raw)
        except (TypeError, ValueError) as e:
            errors.append(f"invalid value for '{key}': {raw!r} ({e})")

    system = values.get("system", RunConfig.system)
    for key in REQUIRED_KEYS.get(system, ()):
        if key not in flat:
            errors.append(f"missing parameter: {key}")

    if "steps" in values and values["steps"] < 1:
        errors.append(f"'steps' must be >= 1, got: {values['steps']}")
    if "h" in values and not values["h"] > 0:
        errors.append(f"'h' must be positive, got: {values['h']}")
    if values.get("time.rule") == "adaptive" and system != "optimal-control":
        errors.append("time.rule 'adaptive' needs system 'optimal-control'")
    return values, errors


def validate_config(config_path: Path) -> list[str]:
    """Validate a config file and return a list of error messages (empty = valid)."""
    try:
        flat = _read(config_path)
    except ConfigurationError as e:
        return [str(e)]
    _, errors = _parse(flat)
    return errors


def _apply(values: dict[str, Any]) -> RunConfig:
    config = RunConfig()
    sections = {
        "solver": config.solver,
        "plate_ball": config.plate_ball,
        "optimal_control": config.optimal_control,
        "pair": config.pair,
    }
    for key, value in values.items():
        head, _, tail = key.partition(".")
        if head in sections:
            setattr(sections[head], tail, value)
        elif key == "time.rule":
            config.time_rule = value
        elif key == "initial.lambda":
            config.initial_lambda = value
        else:
            setattr(config, key, value)
    return config


def load_config(config_path: str | Path | None = None) -> RunConfig:
    """Load a run configuration.

    Without an explicit path the working directory is searched for
    ``dclgroupoid.yaml``.

    Raises:
        ConfigurationError: no config file, unreadable YAML, unknown keys,
                            missing parameters or invalid values
    """
    if config_path is None:
        config_path = find_config_path()
        if config_path is None:
            raise ConfigurationError(
                "no config file found (run 'dclgroupoid config init' to create one)"
            )

    config_path = Path(config_path)
    if not config_path.exists():
        raise ConfigurationError(f"config file not found: {config_path}")

    values, errors = _parse(_read(config_path))
    if errors:
        raise ConfigurationError("; ".join(errors))
    return _apply(values)


def get_default_config_yaml() -> str:
    """Return default YAML config template."""
    return """\
# dclgroupoid configuration
# Place this file as dclgroupoid.yaml in your working directory

dclgroupoid:
  # plate-ball | optimal-control | pair
  system: plate-ball
  steps: 100
  # seeds the sampled checks of 'dclgroupoid check'; integration is deterministic
  seed: 0
  output: trajectory.csv

  # Time step
  h: 0.1

  # none | fixed (trajectory on R x R x G) | adaptive (optimal-control only)
  time:
    rule: none

  solver:
    tol: 1.0e-10
    max_iter: 50
    max_halvings: 8

  # Initial Lagrange multipliers (default: zeros)
  # initial:
  #   lambda: [0.0, 0.0, 0.0]

  plate_ball:
    r: 1.0
    Omega: 0.0
    c: 0.0
    x: 0.0
    y: 0.0
    vx: 0.1
    vy: 0.05

  # optimal_control:
  #   retraction: cay
  #   inertia: [1.0, 2.0, 3.0]
  #   xi: [0.4, -0.2, 0.3]
  #   pin_z: 0.0

  # pair:
  #   example: rail   # free | oscillator | rail
  #   q0: [0.0, 1.0]
  #   q1: [0.1, 1.0512820512820513]
  #   omega: 1.0
  #   kappa: 0.5
"""
