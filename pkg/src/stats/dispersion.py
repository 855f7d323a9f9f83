"""Normalized dispersion indicators and per-process indicator sets.

Every indicator is a dimensionless ratio: multiplying all durations by a
positive constant leaves it unchanged, which is what makes processes with
very different typical run times comparable. A constant series yields
exactly 0 for every indicator.
"""

import logging
from enum import Enum
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from src.config.settings import AnalysisConfig
from src.errors import DegenerateInput, EmptySeries
from src.models.case_models import CaseRecord, ProcessCases, as_process_cases
from src.models.indicator_models import IndicatorSet
from .core import (
    SeriesLike,
    as_series,
    mean,
    median,
    outlier_count_1sd,
    outlier_count_iqr,
    population_std_dev,
    quantile,
)


logger = logging.getLogger(__name__)


class DurationInclusionPolicy(str, Enum):
    """Which cases' durations enter the dispersion computations."""
    ALL = "all"
    SUCCESSES_ONLY = "successes_only"

    @classmethod
    def from_flag(cls, include_failures: bool) -> "DurationInclusionPolicy":
        return cls.ALL if include_failures else cls.SUCCESSES_ONLY


def coefficient_of_variation(data: SeriesLike) -> float:
    """Standard deviation over mean. Not bounded above by 1."""
    s = as_series(data)
    if s.is_constant:
        return 0.0
    return population_std_dev(s) / mean(s)


def coefficient_of_range(data: SeriesLike) -> float:
    """(H - S) / (H + S) of the highest and smallest durations."""
    s = as_series(data)
    if s.is_constant:
        return 0.0
    return (s.highest - s.smallest) / (s.highest + s.smallest)


def coefficient_of_dispersion(data: SeriesLike) -> float:
    """Mean absolute deviation from the median, relative to the median.

    Raises:
        DegenerateInput: If the median is 0 (impossible for positive durations)
    """
    s = as_series(data)
    if s.is_constant:
        return 0.0
    med = median(s)
    if med == 0:
        raise DegenerateInput("coefficient of dispersion is undefined for a zero median")
    return float(np.sum(np.abs(s.sorted - med)) / s.n / med)


def coefficient_of_mean_deviation(data: SeriesLike) -> float:
    """Mean absolute deviation from the mean, relative to the mean."""
    s = as_series(data)
    if s.is_constant:
        return 0.0
    mu = mean(s)
    return float(np.sum(np.abs(s.sorted - mu)) / s.n / mu)


def ciqr90(
    data: SeriesLike,
    quantiles: Tuple[float, float] = AnalysisConfig.ciqr_quantiles,
) -> float:
    """Inter-quantile coefficient (Q_high - Q_low) / (Q_high + Q_low).

    The default pair (0.05, 0.95) spans the central 90% of cases.
    """
    s = as_series(data)
    if s.is_constant:
        return 0.0
    low, high = quantiles
    q_low = quantile(s, low)
    q_high = quantile(s, high)
    return max(0.0, (q_high - q_low) / (q_high + q_low))


def gini_coefficient(data: SeriesLike) -> float:
    """Gini coefficient via the ranked-sum form.

    sum_i (2i - n - 1) * x_i / (n * sum_i x_i) over ascending x, i = 1..n;
    equal to the mean absolute difference over all pairs divided by 2 * mean.
    """
    s = as_series(data)
    if s.is_constant:
        return 0.0
    n = s.n
    weights = 2.0 * np.arange(1, n + 1) - n - 1
    return max(0.0, float(np.dot(weights, s.sorted) / (n * np.sum(s.sorted))))


def outliers_out_of_one_sigma(data: SeriesLike, multiplier: float = 1.0) -> float:
    """Share of cases outside mean +/- sigma."""
    s = as_series(data)
    return outlier_count_1sd(s, multiplier) / s.n


def outliers_out_of_iqr(data: SeriesLike, multiplier: float = 1.5) -> float:
    """Share of cases outside the boxplot fences."""
    s = as_series(data)
    return outlier_count_iqr(s, multiplier) / s.n


def success_rate(cases: Union[ProcessCases, Sequence[CaseRecord]]) -> float:
    """Percentage of successfully processed cases.

    Raises:
        EmptySeries: If there are no cases
    """
    cases = as_process_cases(cases)
    if not len(cases):
        raise EmptySeries("success rate of an empty case list")
    return 100.0 * cases.successes / len(cases)


def indicator_values(
    data: SeriesLike,
    ciqr_quantiles: Tuple[float, float] = AnalysisConfig.ciqr_quantiles,
    sd_multiplier: float = AnalysisConfig.sd_multiplier,
    iqr_multiplier: float = AnalysisConfig.iqr_multiplier,
) -> Dict[str, float]:
    """The eight duration indicators of one series, keyed by column name."""
    s = as_series(data)
    return {
        "cv": coefficient_of_variation(s),
        "cr": coefficient_of_range(s),
        "cd": coefficient_of_dispersion(s),
        "cmd": coefficient_of_mean_deviation(s),
        "ciqr90": ciqr90(s, ciqr_quantiles),
        "gc": gini_coefficient(s),
        "oo_os": outliers_out_of_one_sigma(s, sd_multiplier),
        "oo_iqr": outliers_out_of_iqr(s, iqr_multiplier),
    }


def compute_indicator_set(
    cases: Union[ProcessCases, Sequence[CaseRecord]],
    policy: DurationInclusionPolicy = DurationInclusionPolicy.ALL,
    ciqr_quantiles: Tuple[float, float] = AnalysisConfig.ciqr_quantiles,
    sd_multiplier: float = AnalysisConfig.sd_multiplier,
    iqr_multiplier: float = AnalysisConfig.iqr_multiplier,
) -> IndicatorSet:
    """
    Build the indicator set of one process from its cases.

    The dispersion indicators use the durations selected by ``policy``; the
    success rate and case count always cover every case.

    Args:
        cases: All cases of a single process, as columns or records
        policy: Whether failed cases' durations are included
        ciqr_quantiles: Quantile pair of the CIQR indicator
        sd_multiplier: Width of the sigma band, in standard deviations
        iqr_multiplier: Width of the boxplot fences, in IQRs

    Returns:
        IndicatorSet: The process's row of the indicator table

    Raises:
        EmptySeries: If no case contributes a duration under the policy
        InvalidDuration: If a non-positive duration is encountered
    """
    cases = as_process_cases(cases)
    if not len(cases):
        raise EmptySeries("no case records")

    if policy is DurationInclusionPolicy.SUCCESSES_ONLY:
        selected = cases.durations[cases.succeeded]
    else:
        selected = cases.durations
    if not selected.size:
        raise EmptySeries(f"no durations under policy {policy.value!r}")

    values = indicator_values(selected, ciqr_quantiles, sd_multiplier, iqr_multiplier)
    logger.debug("Computed indicators over %d of %d cases", selected.size, len(cases))
    return IndicatorSet(
        **values,
        success_rate=success_rate(cases),
        case_count=len(cases),
    )
