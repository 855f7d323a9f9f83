"""Ingestion module: log parsing, grouping and table loading."""

from .grouping import duplicate_case_warnings, group_by_process, validate_process
from .log_parser import (
    REQUIRED_COLUMNS,
    CaseLogParser,
    detect_format,
    load_case_log,
    parse_case_log,
    write_case_log,
)
from .synthetic import generate_synthetic_log
from .tables import load_indicator_table, looks_like_indicator_table, parse_indicator_table

__all__ = [
    "duplicate_case_warnings",
    "group_by_process",
    "validate_process",
    "REQUIRED_COLUMNS",
    "CaseLogParser",
    "detect_format",
    "load_case_log",
    "parse_case_log",
    "write_case_log",
    "generate_synthetic_log",
    "load_indicator_table",
    "looks_like_indicator_table",
    "parse_indicator_table",
]
