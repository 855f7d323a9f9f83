"""Pearson correlation between indicator columns."""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config.settings import AnalysisConfig
from src.errors import InsufficientData, ShapeMismatch, UndefinedCorrelation, UnknownIndicator
from src.models.indicator_models import INDICATOR_COLUMNS, CorrelationMatrix, IndicatorTable


logger = logging.getLogger(__name__)


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson product-moment correlation of two paired series.

    Args:
        xs: First series
        ys: Second series, same length

    Returns:
        float: Coefficient in [-1, 1]

    Raises:
        ShapeMismatch: If the series differ in length
        UndefinedCorrelation: If either series is constant (or shorter than 2)
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape:
        raise ShapeMismatch(f"series lengths differ: {x.size} vs {y.size}")
    if x.size < 2 or np.ptp(x) == 0 or np.ptp(y) == 0:
        raise UndefinedCorrelation("correlation is undefined for a constant series")

    dx = x - x.mean()
    dy = y - y.mean()
    r = float(np.sum(dx * dy) / math.sqrt(float(np.sum(dx * dx)) * float(np.sum(dy * dy))))
    return min(1.0, max(-1.0, r))


def correlation_matrix(
    table: IndicatorTable,
    columns: Sequence[str] = INDICATOR_COLUMNS,
) -> CorrelationMatrix:
    """
    Pairwise Pearson coefficients over the indicator table's columns.

    Constant columns produce ``None`` entries (including their diagonal)
    rather than errors. Only the upper triangle is computed; the lower one
    mirrors it, so the result is exactly symmetric.

    Raises:
        InsufficientData: If the table has fewer than three processes
    """
    if len(table) < AnalysisConfig.min_correlation_rows:
        raise InsufficientData(
            f"correlation needs at least {AnalysisConfig.min_correlation_rows} processes, got {len(table)}"
        )

    data = [table.column(c) for c in columns]
    size = len(columns)
    coefficients: List[List[Optional[float]]] = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            try:
                r = 1.0 if i == j and np.ptp(data[i]) > 0 else pearson(data[i], data[j])
            except UndefinedCorrelation:
                continue
            coefficients[i][j] = coefficients[j][i] = r

    undefined = [c for c, row in zip(columns, coefficients) if all(v is None for v in row)]
    if undefined:
        logger.warning("Constant columns, correlations undefined: %s", ", ".join(undefined))
    return CorrelationMatrix(labels=list(columns), coefficients=coefficients)


def rank_indicators(matrix: CorrelationMatrix, target: str = "sr") -> List[Tuple[str, Optional[float]]]:
    """Order the other columns by |r| against ``target``, strongest first.

    Undefined entries sort last; ties keep column order.
    """
    if target not in matrix.labels:
        raise UnknownIndicator(f"unknown indicator {target!r}")
    pairs = [(label, matrix.entry(label, target)) for label in matrix.labels if label != target]
    return sorted(pairs, key=lambda p: (p[1] is None, -abs(p[1]) if p[1] is not None else 0.0))


def nearest_entry(matrix: CorrelationMatrix, column: str, value: float) -> Tuple[str, float]:
    """The defined off-diagonal entry of ``column`` closest to ``value``.

    Raises:
        UnknownIndicator: If ``column`` is not in the matrix
        UndefinedCorrelation: If the column has no defined entries
    """
    if column not in matrix.labels:
        raise UnknownIndicator(f"unknown indicator {column!r}")
    candidates = [
        (label, r) for label in matrix.labels
        if label != column and (r := matrix.entry(label, column)) is not None
    ]
    if not candidates:
        raise UndefinedCorrelation(f"no defined correlations for {column!r}")
    return min(candidates, key=lambda p: abs(p[1] - value))
