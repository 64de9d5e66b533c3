"""CLI commands for dclgroupoid."""

from .check_cmd import check
from .config_cmd import config
from .simulate_cmd import simulate
from .version import version

__all__ = [
    "check",
    "config",
    "simulate",
    "version",
]
