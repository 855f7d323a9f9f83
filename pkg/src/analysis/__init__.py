"""Cross-process analytics: correlation, ranking and flagging."""

from .benchmark import default_thresholds, flag_erratic, rank_processes, validate_thresholds
from .correlation import correlation_matrix, nearest_entry, pearson, rank_indicators

__all__ = [
    "default_thresholds",
    "flag_erratic",
    "rank_processes",
    "validate_thresholds",
    "correlation_matrix",
    "nearest_entry",
    "pearson",
    "rank_indicators",
]
