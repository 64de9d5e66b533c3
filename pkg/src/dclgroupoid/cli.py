"""dclgroupoid CLI entry point."""

import logging

import click
from rich.logging import RichHandler

from .commands import check, config, simulate, version


def _configure_logging(verbose: bool) -> None:
    logger = logging.getLogger("dclgroupoid")
    logger.handlers.clear()
    logger.addHandler(RichHandler(show_path=False))
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log solver progress")
def main(verbose: bool) -> None:
    """dclgroupoid - discrete constrained Lagrangian mechanics on Lie groupoids.

    Simulates constrained systems with Lagrange multipliers and checks the
    structure of their discrete flows.
    """
    _configure_logging(verbose)


# Register commands
main.add_command(simulate)
main.add_command(check)
main.add_command(config)
main.add_command(version)


if __name__ == "__main__":
    main()
