"""Benchmark-relative ranking and flagging of erratic processes."""

import logging
import math
from typing import Dict, List, Optional

from src.config.settings import AnalysisConfig
from src.errors import InvalidThreshold, UnknownIndicator
from src.models.indicator_models import (
    DISPERSION_COLUMNS,
    INDICATOR_COLUMNS,
    BenchmarkReport,
    IndicatorTable,
    ProcessFlag,
    RankEntry,
    Thresholds,
    Trigger,
)


logger = logging.getLogger(__name__)


def default_thresholds() -> Thresholds:
    """SR floor and CMD ceiling between the healthy and failing benchmarks."""
    return Thresholds(
        ceilings={"cmd": AnalysisConfig.cmd_ceiling},
        sr_floor=AnalysisConfig.sr_floor,
    )


def validate_thresholds(thresholds: Thresholds) -> Thresholds:
    """Reject empty, unknown, negative or non-finite bounds.

    Raises:
        InvalidThreshold: On any malformed bound
    """
    if not thresholds.ceilings and thresholds.sr_floor is None:
        raise InvalidThreshold("at least one threshold is required")
    for name, bound in thresholds.ceilings.items():
        if name not in DISPERSION_COLUMNS:
            raise InvalidThreshold(f"no ceiling can be set on {name!r}")
        if not math.isfinite(bound) or bound < 0:
            raise InvalidThreshold(f"{name} ceiling must be a finite ratio >= 0, got {bound!r}")
    floor = thresholds.sr_floor
    if floor is not None and not (math.isfinite(floor) and 0 <= floor <= 100):
        raise InvalidThreshold(f"success-rate floor must be a percentage in [0, 100], got {floor!r}")
    return thresholds


def rank_processes(table: IndicatorTable, key: str, descending: bool = True) -> List[RankEntry]:
    """Order processes by one indicator; ties break on process_id.

    The result does not depend on the table's row order.

    Raises:
        UnknownIndicator: If ``key`` is not an indicator column
    """
    if key not in INDICATOR_COLUMNS:
        raise UnknownIndicator(f"unknown indicator {key!r}; expected one of {', '.join(INDICATOR_COLUMNS)}")
    sign = -1.0 if descending else 1.0
    ordered = sorted(table.rows, key=lambda r: (sign * r.indicators.value(key), r.process_id))
    return [
        RankEntry(rank=i, process_id=row.process_id, value=row.indicators.value(key))
        for i, row in enumerate(ordered, start=1)
    ]


def _triggers(indicators, thresholds: Thresholds) -> List[Trigger]:
    found = []
    if thresholds.sr_floor is not None and indicators.success_rate < thresholds.sr_floor:
        found.append(Trigger(indicator="sr", value=indicators.success_rate,
                             bound=thresholds.sr_floor, rule="floor"))
    for name in DISPERSION_COLUMNS:
        bound = thresholds.ceilings.get(name)
        if bound is not None and indicators.value(name) > bound:
            found.append(Trigger(indicator=name, value=indicators.value(name),
                                 bound=bound, rule="ceiling"))
    return found


def flag_erratic(
    table: IndicatorTable,
    thresholds: Optional[Thresholds] = None,
    key: str = "cmd",
    descending: bool = True,
    healthy_benchmark: str = AnalysisConfig.healthy_benchmark,
    failing_benchmark: str = AnalysisConfig.failing_benchmark,
) -> BenchmarkReport:
    """
    Rank processes and flag the erratic ones.

    A process is erratic iff its success rate falls below the floor or any
    configured indicator exceeds its ceiling. Loosening bounds can only
    shrink the flagged set.

    Args:
        table: Indicator table of the processes to compare
        thresholds: Bounds to apply (defaults: SR floor 90, CMD ceiling 0.4)
        key: Indicator the ranking is ordered by
        descending: Rank the largest key value first (most erratic first)
        healthy_benchmark: Process id of the known-good reference process
        failing_benchmark: Process id of the known-bad reference process

    Returns:
        BenchmarkReport: Ranking, per-process verdicts and the bounds used

    Raises:
        InvalidThreshold: On malformed thresholds
        UnknownIndicator: If ``key`` is not an indicator column
    """
    thresholds = validate_thresholds(thresholds if thresholds is not None else default_thresholds())
    ranking = rank_processes(table, key, descending)

    flags = []
    for entry in ranking:
        triggers = _triggers(table.get(entry.process_id), thresholds)
        flags.append(ProcessFlag(process_id=entry.process_id, erratic=bool(triggers), triggers=triggers))

    benchmark_ids = [pid for pid in (healthy_benchmark, failing_benchmark) if table.get(pid) is not None]
    relative: Dict[str, Optional[float]] = {}
    healthy = table.get(healthy_benchmark)
    if healthy is not None and healthy.value(key) != 0:
        relative = {e.process_id: e.value / healthy.value(key) for e in ranking}

    flagged = [f.process_id for f in flags if f.erratic]
    logger.info("Flagged %d of %d processes: %s", len(flagged), len(flags), ", ".join(flagged) or "none")
    return BenchmarkReport(
        key=key,
        descending=descending,
        ranking=ranking,
        flags=flags,
        thresholds=thresholds,
        benchmark_ids=benchmark_ids,
        relative_to_healthy=relative,
    )
