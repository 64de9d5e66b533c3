"""Number and text formatting for console tables."""

from __future__ import annotations

import math


def truncate_text(text: str, max_length: int = 60, suffix: str = "...") -> str:
    """Shorten ``text`` to at most ``max_length`` characters, ending in ``suffix``."""
    if len(text) > max_length:
        keep = max(max_length - len(suffix), 0)
        return f"{text[:keep]}{suffix}"
    return text


def format_residual(value: float) -> str:
    """Residuals and tolerances in short scientific notation ("inf" and "nan" kept)."""
    if not math.isfinite(value):
        return str(value)
    if value == int(value) and abs(value) < 1e6:
        return str(int(value))
    return f"{value:.3e}"
