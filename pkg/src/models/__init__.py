"""Models module for case records, indicators and reports."""

from .case_models import CaseLog, CaseRecord, Outcome, ParseReport, ProcessCases, RowReject
from .indicator_models import (
    INDICATOR_COLUMNS,
    BenchmarkReport,
    CorrelationMatrix,
    IndicatorRow,
    IndicatorSet,
    IndicatorTable,
    OutlierSummary,
    ProcessFlag,
    RankEntry,
    Thresholds,
    Trigger,
)
from .run_config import RunConfig

__all__ = [
    "CaseLog",
    "CaseRecord",
    "Outcome",
    "ParseReport",
    "ProcessCases",
    "RowReject",
    "INDICATOR_COLUMNS",
    "BenchmarkReport",
    "CorrelationMatrix",
    "IndicatorRow",
    "IndicatorSet",
    "IndicatorTable",
    "OutlierSummary",
    "ProcessFlag",
    "RankEntry",
    "Thresholds",
    "Trigger",
    "RunConfig",
]
