"""Models for execution-log records, columnar case logs and parse diagnostics."""

import math
from collections.abc import Sequence
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class Outcome(str, Enum):
    """Binary case outcome; every non-success status maps to FAILURE."""
    SUCCESS = "success"
    FAILURE = "failure"

    @classmethod
    def from_status(cls, status: str) -> "Outcome":
        return cls.SUCCESS if status.strip().lower() == cls.SUCCESS.value else cls.FAILURE


class CaseRecord(BaseModel):
    """
    One executed case of an automated process.

    Attributes:
        process_id (str): Identifier of the process (bot) that ran the case
        case_id (str): Identifier of the work item
        duration (float): Time to complete the case, in seconds (> 0)
        outcome (Outcome): Whether the case was processed successfully
        raw_status (Optional[str]): Status string as it appeared in the log

    Example:
        >>> record = CaseRecord(
        ...     process_id="EFP",
        ...     case_id="c1",
        ...     duration=213.0,
        ...     outcome=Outcome.SUCCESS
        ... )
    """
    model_config = ConfigDict(frozen=True)

    process_id: str = Field(min_length=1)
    case_id: str = Field(min_length=1)
    duration: float
    outcome: Outcome
    raw_status: Optional[str] = None

    @field_validator("duration")
    @classmethod
    def _positive_duration(cls, value: float) -> float:
        if not math.isfinite(value) or value <= 0:
            raise ValueError("duration must be a finite number of seconds > 0")
        return value

    @property
    def succeeded(self) -> bool:
        return self.outcome is Outcome.SUCCESS


class RowReject(BaseModel):
    """A data line that could not be turned into a CaseRecord."""
    model_config = ConfigDict(frozen=True)

    line: int
    reason: str
    source: Optional[str] = None

    def describe(self) -> str:
        where = f"{self.source}:{self.line}" if self.source else f"line {self.line}"
        return f"{where}: {self.reason}"


class ParseReport(BaseModel):
    """
    Line-level diagnostics from parsing one or more case logs.

    Attributes:
        accepted (int): Data lines turned into records
        rejected (int): Data lines rejected
        rejects (List[RowReject]): Line number and reason per rejected line
        warnings (List[str]): Non-fatal observations (extra columns, duplicates, ...)
    """
    accepted: int = 0
    rejected: int = 0
    rejects: List[RowReject] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    @property
    def total(self) -> int:
        return self.accepted + self.rejected

    @property
    def clean(self) -> bool:
        return self.rejected == 0

    def merge(self, other: "ParseReport") -> "ParseReport":
        """Combine the diagnostics of two parses (e.g. two input files)."""
        return ParseReport(
            accepted=self.accepted + other.accepted,
            rejected=self.rejected + other.rejected,
            rejects=[*self.rejects, *other.rejects],
            warnings=[*self.warnings, *other.warnings],
        )


class CaseLog(Sequence):
    """
    Accepted cases of one or more logs, stored column by column in log order.

    Indexing and iteration build CaseRecord objects on demand. Grouping and
    the statistics read the columns directly, so a large log never
    materializes one model object per case.

    Attributes:
        process_ids (List[str]): Process of each case
        case_ids (List[str]): Work-item identifier of each case
        durations (np.ndarray): float64 durations in seconds
        statuses (List[str]): Status strings as they appeared in the log
    """
    __slots__ = ("process_ids", "case_ids", "durations", "statuses")

    def __init__(
        self,
        process_ids: Sequence[str] = (),
        case_ids: Sequence[str] = (),
        durations: Union[Sequence[float], np.ndarray] = (),
        statuses: Sequence[str] = (),
    ):
        self.process_ids = list(process_ids)
        self.case_ids = list(case_ids)
        self.durations = np.asarray(durations, dtype=np.float64).ravel()
        self.statuses = list(statuses)
        n = len(self.process_ids)
        if not (len(self.case_ids) == self.durations.size == len(self.statuses) == n):
            raise ValueError("case log columns must have equal lengths")

    @classmethod
    def from_records(cls, records: Iterable[CaseRecord]) -> "CaseLog":
        if isinstance(records, CaseLog):
            return records
        records = list(records)
        return cls(
            [r.process_id for r in records],
            [r.case_id for r in records],
            [r.duration for r in records],
            [r.raw_status or r.outcome.value for r in records],
        )

    def extend(self, other: "CaseLog") -> None:
        self.process_ids.extend(other.process_ids)
        self.case_ids.extend(other.case_ids)
        self.durations = np.concatenate([self.durations, other.durations])
        self.statuses.extend(other.statuses)

    def succeeded_mask(self) -> np.ndarray:
        """Boolean array, True where the case succeeded."""
        lookup = {s: Outcome.from_status(s) is Outcome.SUCCESS for s in set(self.statuses)}
        return np.fromiter(map(lookup.__getitem__, self.statuses), dtype=bool, count=len(self.statuses))

    def _record(self, i: int) -> CaseRecord:
        status = self.statuses[i]
        return CaseRecord.model_construct(
            process_id=self.process_ids[i],
            case_id=self.case_ids[i],
            duration=float(self.durations[i]),
            outcome=Outcome.from_status(status),
            raw_status=status,
        )

    def __len__(self) -> int:
        return len(self.process_ids)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self._record(i) for i in range(*index.indices(len(self)))]
        return self._record(index)

    def __iter__(self) -> Iterator[CaseRecord]:
        return (self._record(i) for i in range(len(self)))

    def __eq__(self, other) -> bool:
        if isinstance(other, CaseLog):
            return (
                self.process_ids == other.process_ids
                and self.case_ids == other.case_ids
                and np.array_equal(self.durations, other.durations)
                and self.statuses == other.statuses
            )
        if isinstance(other, (list, tuple)):
            return list(self) == list(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"CaseLog(n={len(self)})"


class ProcessCases:
    """
    The cases of a single process as parallel columns, in log order.

    Attributes:
        process_id: Process the cases belong to
        case_ids: Work-item identifier of each case
        durations: float64 durations in seconds
        succeeded: Boolean outcome of each case
    """
    __slots__ = ("process_id", "case_ids", "durations", "succeeded")

    def __init__(
        self,
        process_id: str,
        case_ids: Sequence[str],
        durations: Union[Sequence[float], np.ndarray],
        succeeded: Union[Sequence[bool], np.ndarray],
    ):
        self.process_id = process_id
        self.case_ids = list(case_ids)
        self.durations = np.asarray(durations, dtype=np.float64).ravel()
        self.succeeded = np.asarray(succeeded, dtype=bool).ravel()
        if not (len(self.case_ids) == self.durations.size == self.succeeded.size):
            raise ValueError("process case columns must have equal lengths")

    @classmethod
    def from_records(cls, records: Iterable[CaseRecord]) -> "ProcessCases":
        """
        Raises:
            ValueError: If the records belong to more than one process
        """
        records = list(records)
        ids = {r.process_id for r in records}
        if len(ids) > 1:
            raise ValueError(f"records of more than one process: {', '.join(sorted(ids))}")
        return cls(
            ids.pop() if ids else "",
            [r.case_id for r in records],
            [r.duration for r in records],
            [r.succeeded for r in records],
        )

    @property
    def successes(self) -> int:
        return int(np.count_nonzero(self.succeeded))

    def __len__(self) -> int:
        return len(self.case_ids)

    def __repr__(self) -> str:
        return f"ProcessCases({self.process_id!r}, n={len(self)})"


def as_process_cases(data: Union[ProcessCases, Iterable[CaseRecord]]) -> ProcessCases:
    """Coerce the records of one process into ProcessCases."""
    return data if isinstance(data, ProcessCases) else ProcessCases.from_records(data)
