"""Export functionality for dclgroupoid."""

from .csv_exporter import export_trajectory_csv, format_value

__all__ = [
    "export_trajectory_csv",
    "format_value",
]
