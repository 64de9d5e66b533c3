"""Version command."""

import platform

import click
import numpy as np
import scipy
from rich.console import Console

from ..banner import print_banner

console = Console()


@click.command()
def version() -> None:
    """Show the dclgroupoid version, bundled groupoids and numerical backends."""
    backends = {
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
    }
    print_banner(console, backends=backends)
