"""Grouping of case logs per process and sample-size checks."""

import logging
from collections import Counter
from typing import Iterable, List, Sequence, Union

import numpy as np

from src.config.settings import AnalysisConfig
from src.models.case_models import CaseLog, CaseRecord, ProcessCases


logger = logging.getLogger(__name__)


def group_by_process(records: Union[CaseLog, Iterable[CaseRecord]]) -> List[ProcessCases]:
    """
    Split a case log into one group per process.

    Groups are ordered by process_id; within a group cases keep their
    input order. Duplicate (process_id, case_id) pairs are kept (re-runs
    of a case are real events); duplicate_case_warnings reports them.

    Args:
        records: Case log, or case records in log order

    Returns:
        List[ProcessCases]: One column set per process
    """
    log = CaseLog.from_records(records)
    n = len(log)
    if n == 0:
        return []

    process_ids = sorted(dict.fromkeys(log.process_ids))
    code_of = {pid: code for code, pid in enumerate(process_ids)}
    codes = np.fromiter(map(code_of.__getitem__, log.process_ids), dtype=np.intp, count=n)
    order = np.argsort(codes, kind="stable")
    stops = np.cumsum(np.bincount(codes, minlength=len(process_ids))).tolist()
    succeeded = log.succeeded_mask()
    case_ids = log.case_ids

    groups = []
    start = 0
    for process_id, stop in zip(process_ids, stops):
        members = order[start:stop]
        groups.append(ProcessCases(
            process_id,
            [case_ids[i] for i in members.tolist()],
            log.durations[members],
            succeeded[members],
        ))
        start = stop

    logger.debug("Grouped %d case(s) into %d process(es)", n, len(groups))
    return groups


def duplicate_case_warnings(groups: Sequence[ProcessCases]) -> List[str]:
    """One warning per process that contains repeated case ids."""
    warnings = []
    for group in groups:
        if len(set(group.case_ids)) == len(group.case_ids):
            continue
        counts = Counter(group.case_ids)
        repeated = sorted(cid for cid, k in counts.items() if k > 1)
        warnings.append(
            f"{group.process_id}: {len(repeated)} duplicate case id(s) kept (first: {repeated[0]!r})"
        )
    return warnings


def validate_process(group: ProcessCases, min_cases: int = AnalysisConfig.min_cases) -> List[str]:
    """Warn when a process has too few cases for descriptive statistics.

    The check is "fewer than": exactly ``min_cases`` cases pass.
    """
    if len(group) < min_cases:
        return [
            f"{group.process_id}: only {len(group)} case(s), fewer than {min_cases}; "
            "dispersion indicators may be unreliable"
        ]
    return []
