"""Pydantic models for dispersion indicators and cross-process reports."""

import math
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# Column order of the indicator table; "sr" is the success rate in percent.
INDICATOR_COLUMNS = ("cv", "cr", "cd", "cmd", "ciqr90", "gc", "oo_os", "sr", "oo_iqr")

# The eight duration-based indicators (everything but the success rate).
DISPERSION_COLUMNS = tuple(c for c in INDICATOR_COLUMNS if c != "sr")


class OutlierSummary(BaseModel):
    """
    Outlier counts and fences of one duration series under both rules.

    Attributes:
        count_1sd (int): Values strictly outside mean +/- k*sigma
        count_iqr (int): Values strictly outside Q1 - k*IQR / Q3 + k*IQR
        lower_fence_1sd, upper_fence_1sd (float): Sigma-band fences, seconds
        lower_fence_iqr, upper_fence_iqr (float): Boxplot fences, seconds
    """
    model_config = ConfigDict(frozen=True)

    count_1sd: int = Field(ge=0)
    count_iqr: int = Field(ge=0)
    lower_fence_1sd: float
    upper_fence_1sd: float
    lower_fence_iqr: float
    upper_fence_iqr: float

    @model_validator(mode="after")
    def _ordered_fences(self) -> "OutlierSummary":
        if self.lower_fence_1sd > self.upper_fence_1sd or self.lower_fence_iqr > self.upper_fence_iqr:
            raise ValueError("lower fence above upper fence")
        return self


class IndicatorSet(BaseModel):
    """
    The eight dispersion indicators and the success rate of one process.

    All ratios are dimensionless, so processes with very different typical
    durations can be compared directly.

    Attributes:
        cv: Coefficient of variation, sigma / mean
        cr: Coefficient of range, (H - S) / (H + S)
        cd: Coefficient of dispersion around the median
        cmd: Coefficient of mean deviation
        ciqr90: Coefficient of the inter-quantile range
        gc: Gini coefficient
        oo_os: Share of cases outside the one-sigma band
        oo_iqr: Share of cases outside the boxplot fences
        success_rate: Percentage of successful cases, full precision
        case_count: Number of cases behind the row (None when unknown)
    """
    model_config = ConfigDict(frozen=True)

    cv: float = Field(ge=0)
    cr: float = Field(ge=0, le=1)
    cd: float = Field(ge=0)
    cmd: float = Field(ge=0)
    ciqr90: float
    gc: float = Field(ge=0, lt=1)
    oo_os: float = Field(ge=0, le=1)
    oo_iqr: float = Field(ge=0, le=1)
    success_rate: float = Field(ge=0, le=100)
    case_count: Optional[int] = Field(default=None, ge=1)

    @field_validator("cv", "cd", "cmd", "ciqr90")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("indicator must be finite")
        return value

    def value(self, column: str) -> float:
        """Look up an indicator by its table column name."""
        if column == "sr":
            return self.success_rate
        if column not in DISPERSION_COLUMNS:
            raise KeyError(column)
        return getattr(self, column)

    def quantized(self, decimals: int) -> "IndicatorSet":
        """Copy with every indicator rounded to a fixed number of decimals."""
        rounded = {c: round(getattr(self, c), decimals) for c in DISPERSION_COLUMNS}
        rounded["success_rate"] = round(self.success_rate, decimals)
        return self.model_copy(update=rounded)


class IndicatorRow(BaseModel):
    """One process's row of the indicator table."""
    model_config = ConfigDict(frozen=True)

    process_id: str
    indicators: IndicatorSet


class IndicatorTable(BaseModel):
    """
    Processes x indicators matrix.

    Rows are kept in the order given; ``sorted_by_id`` produces the
    canonical report order.
    """
    rows: List[IndicatorRow] = Field(default_factory=list)

    @field_validator("rows")
    @classmethod
    def _unique_ids(cls, rows: List[IndicatorRow]) -> List[IndicatorRow]:
        seen = set()
        for row in rows:
            if row.process_id in seen:
                raise ValueError(f"duplicate process_id {row.process_id!r}")
            seen.add(row.process_id)
        return rows

    @property
    def process_ids(self) -> List[str]:
        return [row.process_id for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> List[float]:
        return [row.indicators.value(name) for row in self.rows]

    def get(self, process_id: str) -> Optional[IndicatorSet]:
        return next((r.indicators for r in self.rows if r.process_id == process_id), None)

    def sorted_by_id(self) -> "IndicatorTable":
        return IndicatorTable(rows=sorted(self.rows, key=lambda r: r.process_id))

    def quantized(self, decimals: int) -> "IndicatorTable":
        return IndicatorTable(rows=[
            IndicatorRow(process_id=r.process_id, indicators=r.indicators.quantized(decimals))
            for r in self.rows
        ])


class CorrelationMatrix(BaseModel):
    """
    Pairwise Pearson coefficients between indicator columns.

    ``None`` marks an undefined entry (a constant column); it is never
    replaced by 0.
    """
    model_config = ConfigDict(frozen=True)

    labels: List[str]
    coefficients: List[List[Optional[float]]]

    @model_validator(mode="after")
    def _square(self) -> "CorrelationMatrix":
        size = len(self.labels)
        if len(self.coefficients) != size or any(len(row) != size for row in self.coefficients):
            raise ValueError("coefficients must be a square matrix matching labels")
        return self

    def entry(self, a: str, b: str) -> Optional[float]:
        return self.coefficients[self.labels.index(a)][self.labels.index(b)]


class Thresholds(BaseModel):
    """
    Bounds used to flag erratic processes.

    Attributes:
        ceilings (Dict[str, float]): Indicator -> upper bound; exceeding flags
        sr_floor (Optional[float]): Success-rate percentage; falling below flags
    """
    model_config = ConfigDict(frozen=True)

    ceilings: Dict[str, float] = Field(default_factory=dict)
    sr_floor: Optional[float] = None

    def describe(self) -> List[str]:
        bounds = []
        if self.sr_floor is not None:
            bounds.append(f"sr >= {self.sr_floor:g}")
        bounds.extend(f"{name} <= {bound:g}" for name, bound in sorted(self.ceilings.items()))
        return bounds


class Trigger(BaseModel):
    """An indicator that crossed its bound."""
    model_config = ConfigDict(frozen=True)

    indicator: str
    value: float
    bound: float
    rule: Literal["ceiling", "floor"]

    def describe(self) -> str:
        op = ">" if self.rule == "ceiling" else "<"
        return f"{self.indicator}={self.value:.4f} {op} {self.bound:g}"


class ProcessFlag(BaseModel):
    """Erratic verdict for one process; erratic iff at least one trigger."""
    model_config = ConfigDict(frozen=True)

    process_id: str
    erratic: bool
    triggers: List[Trigger] = Field(default_factory=list)


class RankEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    rank: int = Field(ge=1)
    process_id: str
    value: float


class BenchmarkReport(BaseModel):
    """
    Ranking and erratic-process flags for a set of processes.

    Attributes:
        key (str): Indicator the ranking is ordered by
        descending (bool): True when the largest key value ranks first
        ranking (List[RankEntry]): Every input process exactly once
        flags (List[ProcessFlag]): One verdict per process, in ranking order
        thresholds (Thresholds): Bounds the verdicts were computed with
        benchmark_ids (List[str]): Reference processes present in the input
        relative_to_healthy (Dict[str, Optional[float]]): Key indicator divided
            by the healthy benchmark's value, when that is defined
    """
    key: str
    descending: bool
    ranking: List[RankEntry]
    flags: List[ProcessFlag]
    thresholds: Thresholds
    benchmark_ids: List[str] = Field(default_factory=list)
    relative_to_healthy: Dict[str, Optional[float]] = Field(default_factory=dict)

    @property
    def flagged_ids(self) -> List[str]:
        return [f.process_id for f in self.flags if f.erratic]
