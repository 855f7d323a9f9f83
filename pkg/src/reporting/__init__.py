"""Reporting module: JSON, CSV and markdown renderers."""

from .render import (
    markdown_table,
    render_benchmark,
    render_correlation,
    render_indicator_table,
    render_parse_report,
)

__all__ = [
    "markdown_table",
    "render_benchmark",
    "render_correlation",
    "render_indicator_table",
    "render_parse_report",
]
