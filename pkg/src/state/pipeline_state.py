"""Shared state of the analysis workflow."""

from operator import add
from typing import Annotated, Any, Dict, List, Optional, TypedDict

from src.models.case_models import CaseLog, ParseReport, ProcessCases
from src.models.indicator_models import IndicatorTable
from src.models.run_config import RunConfig


def merge_results(left: Dict[str, Any], right: Dict[str, Any]) -> Dict[str, Any]:
    """
    Merge node results recursively; values from ``right`` win.

    Example:
        left = {"correlation": {"matrix": m}, "a": 1}
        right = {"correlation": {"ranking": r}}
        result = {"correlation": {"matrix": m, "ranking": r}, "a": 1}
    """
    merged = dict(left or {})
    for key, value in (right or {}).items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = merge_results(merged[key], value)
        else:
            merged[key] = value
    return merged


class PipelineState(TypedDict, total=False):
    """State passed between workflow nodes.

    Attributes:
        config: Validated run configuration
        records: Accepted cases from every input, column-wise in input order
        parse_report: Merged parse diagnostics
        groups: Cases split per process, ordered by process_id
        table: Indicator table (computed, or loaded precomputed)
        warnings: Non-fatal diagnostics, appended by every node
        results: Command outputs (correlation matrix, benchmark report)
    """
    config: RunConfig
    records: CaseLog
    parse_report: Optional[ParseReport]
    groups: List[ProcessCases]
    table: Optional[IndicatorTable]
    warnings: Annotated[List[str], add]
    results: Annotated[Dict[str, Any], merge_results]
