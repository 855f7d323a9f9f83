"""Descriptive-statistics primitives for case-duration series.

All statistics are computed on the ascending-sorted values, so results are
bit-for-bit independent of input order. Standard deviation and variance use
the population form (divisor n). Quantiles interpolate linearly between
order statistics at rank h = (n - 1) * p, zero-based.
"""

import math
import numbers
from typing import Iterable, Tuple, Union

import numpy as np

from src.errors import EmptySeries, InvalidDuration, InvalidProbability
from src.models.indicator_models import OutlierSummary


# Values within this relative distance of a fence count as "on" the fence.
# Keeps the strict outlier rule stable under floating-point rescaling.
FENCE_RTOL = 1e-12


class DurationSeries:
    """
    Immutable multiset of strictly positive case durations (seconds).

    Attributes:
        values: Read-only array of the durations in input order
        sorted: Read-only array of the durations in ascending order
    """

    __slots__ = ("values", "sorted")

    def __init__(self, durations: Iterable[float]):
        """Validate and freeze a duration series.

        Args:
            durations: Durations in seconds

        Raises:
            EmptySeries: If no durations are given
            InvalidDuration: If any duration is not finite or not > 0
        """
        values = np.array(
            durations if isinstance(durations, (list, tuple, np.ndarray)) else list(durations),
            dtype=np.float64,
        ).ravel()
        if values.size == 0:
            raise EmptySeries("duration series is empty")
        bad = ~np.isfinite(values) | (values <= 0)
        if bad.any():
            first = values[np.argmax(bad)]
            raise InvalidDuration(f"non-positive or non-finite duration: {first!r}")

        ordered = np.sort(values)
        values.flags.writeable = False
        ordered.flags.writeable = False
        self.values = values
        self.sorted = ordered

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def highest(self) -> float:
        return float(self.sorted[-1])

    @property
    def smallest(self) -> float:
        return float(self.sorted[0])

    @property
    def is_constant(self) -> bool:
        return self.sorted[0] == self.sorted[-1]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"DurationSeries(n={self.n}, min={self.smallest:g}, max={self.highest:g})"


SeriesLike = Union[DurationSeries, Iterable[float]]


def as_series(data: SeriesLike) -> DurationSeries:
    """Coerce raw durations into a validated DurationSeries."""
    return data if isinstance(data, DurationSeries) else DurationSeries(data)


def mean(data: SeriesLike) -> float:
    """Arithmetic mean of the durations."""
    s = as_series(data)
    if s.is_constant:
        return s.smallest
    return float(np.sum(s.sorted) / s.n)


def variance(data: SeriesLike) -> float:
    """Population variance (mean squared deviation, divisor n)."""
    s = as_series(data)
    if s.is_constant:
        return 0.0
    deviations = s.sorted - mean(s)
    return float(np.sum(deviations * deviations) / s.n)


def population_std_dev(data: SeriesLike) -> float:
    """Population standard deviation; exactly 0 iff all values are equal."""
    return math.sqrt(variance(data))


def quantile(data: SeriesLike, p: float) -> float:
    """Linearly interpolated quantile at rank h = (n - 1) * p.

    Args:
        data: Duration series
        p: Probability in [0, 1]

    Returns:
        x[floor(h)] + (h - floor(h)) * (x[ceil(h)] - x[floor(h)]) over the
        ascending values; p = 0 gives the minimum and p = 1 the maximum

    Raises:
        InvalidProbability: If p is not a number in [0, 1]
        EmptySeries: If the series is empty
    """
    if isinstance(p, bool) or not (isinstance(p, numbers.Real) and 0.0 <= p <= 1.0):
        raise InvalidProbability(f"quantile probability must lie in [0, 1], got {p!r}")
    p = float(p)
    s = as_series(data)
    h = (s.n - 1) * p
    lo = math.floor(h)
    hi = math.ceil(h)
    x_lo = float(s.sorted[lo])
    if hi == lo:
        return x_lo
    x_hi = float(s.sorted[hi])
    # rounding in the lerp must not leave [x_lo, x_hi]
    return min(x_hi, x_lo + (h - lo) * (x_hi - x_lo))


def median(data: SeriesLike) -> float:
    """Middle order statistic (odd n) or mean of the two middle ones (even n).

    Defined as ``quantile(data, 0.5)`` so the two always agree exactly.
    """
    return quantile(data, 0.5)


def iqr(data: SeriesLike) -> float:
    """Interquartile range, Q3 - Q1."""
    s = as_series(data)
    return quantile(s, 0.75) - quantile(s, 0.25)


def sd_fences(data: SeriesLike, multiplier: float = 1.0) -> Tuple[float, float]:
    """Band mean +/- multiplier * sigma."""
    s = as_series(data)
    mu = mean(s)
    spread = multiplier * population_std_dev(s)
    return mu - spread, mu + spread


def iqr_fences(data: SeriesLike, multiplier: float = 1.5) -> Tuple[float, float]:
    """Boxplot fences Q1 - multiplier * IQR and Q3 + multiplier * IQR."""
    s = as_series(data)
    q1 = quantile(s, 0.25)
    q3 = quantile(s, 0.75)
    spread = multiplier * (q3 - q1)
    return q1 - spread, q3 + spread


def _count_outside(s: DurationSeries, lower: float, upper: float) -> int:
    slack = FENCE_RTOL * s.highest
    outside = (s.sorted < lower - slack) | (s.sorted > upper + slack)
    return int(np.count_nonzero(outside))


def outlier_count_1sd(data: SeriesLike, multiplier: float = 1.0) -> int:
    """Number of values strictly below mean - sigma or strictly above mean + sigma."""
    s = as_series(data)
    return _count_outside(s, *sd_fences(s, multiplier))


def outlier_count_iqr(data: SeriesLike, multiplier: float = 1.5) -> int:
    """Number of values strictly outside the boxplot fences."""
    s = as_series(data)
    return _count_outside(s, *iqr_fences(s, multiplier))


def outlier_summary(
    data: SeriesLike,
    sd_multiplier: float = 1.0,
    iqr_multiplier: float = 1.5,
) -> OutlierSummary:
    """Both outlier counts together with the fences that produced them."""
    s = as_series(data)
    lower_sd, upper_sd = sd_fences(s, sd_multiplier)
    lower_iqr, upper_iqr = iqr_fences(s, iqr_multiplier)
    return OutlierSummary(
        count_1sd=_count_outside(s, lower_sd, upper_sd),
        count_iqr=_count_outside(s, lower_iqr, upper_iqr),
        lower_fence_1sd=lower_sd,
        upper_fence_1sd=upper_sd,
        lower_fence_iqr=lower_iqr,
        upper_fence_iqr=upper_iqr,
    )
