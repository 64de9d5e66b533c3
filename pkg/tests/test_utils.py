"""Tests for utility functions."""

import pytest

from dclgroupoid.utils import format_residual, truncate_text


class TestTruncateText:
    def test_short_text_unchanged(self):
        assert truncate_text("hello", 10) == "hello"

    def test_exact_length(self):
        assert truncate_text("hello", 5) == "hello"

    def test_long_text(self):
        assert truncate_text("hello world", 8) == "hello..."

    def test_custom_suffix(self):
        assert truncate_text("hello world", 6, suffix="~") == "hello~"

    def test_suffix_longer_than_limit(self):
        assert truncate_text("hello world", 2) == "..."


class TestFormatResidual:
    @pytest.mark.parametrize(
        ("value", "expected"),
        [
            (0.0, "0"),
            (3.0, "3"),
            (1e-12, "1.000e-12"),
            (2.5, "2.500e+00"),
            (1e7, "1.000e+07"),
            (float("inf"), "inf"),
            (float("nan"), "nan"),
        ],
    )
    def test_values(self, value, expected):
        assert format_residual(value) == expected
