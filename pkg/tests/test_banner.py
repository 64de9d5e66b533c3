"""Tests for the startup banner."""

import os
from io import StringIO

from rich.console import Console

from dclgroupoid import __version__
from dclgroupoid.banner import FAMILIES, TAGLINE, WORDMARK, families_table, print_banner


def _render(**kwargs) -> str:
    buffer = StringIO()
    console = Console(file=buffer, force_terminal=False, width=100)
    print_banner(console, **kwargs)
    return buffer.getvalue()


class TestWordmark:
    def test_is_multiline(self):
        assert len(WORDMARK.strip().split("\n")) >= 3


class TestFamiliesTable:
    def test_one_row_per_family_plus_retractions(self):
        assert families_table().row_count == len(FAMILIES) + 1

    def test_lists_retractions(self):
        output = _render()
        assert "cay" in output
        assert "exp" in output


class TestPrintBanner:
    def test_no_console(self):
        """Creates its own console when none is given."""
        print_banner(None)

    def test_with_console(self):
        with open(os.devnull, "w") as devnull:
            print_banner(Console(file=devnull))

    def test_version_and_families(self):
        output = _render()
        assert f"v{__version__}" in output
        assert TAGLINE in output
        assert "SO(3)" in output
        assert "ball on a rotating plate" in output

    def test_hide_version(self):
        output = _render(show_version=False)
        assert f"v{__version__}" not in output
        assert "SO(3)" not in output
        assert "/_/" in output

    def test_backends_line(self):
        output = _render(backends={"numpy": "2.1.0", "scipy": "1.14.1"})
        assert "numpy 2.1.0 | scipy 1.14.1" in output

    def test_no_backends_line_by_default(self):
        assert "numpy" not in _render()
