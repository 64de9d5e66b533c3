"""Utility functions for dclgroupoid."""

from .formatting import format_residual, truncate_text

__all__ = [
    "format_residual",
    "truncate_text",
]
