"""Statistics module: descriptive primitives and dispersion indicators."""

from .core import (
    DurationSeries,
    as_series,
    iqr,
    iqr_fences,
    mean,
    median,
    outlier_count_1sd,
    outlier_count_iqr,
    outlier_summary,
    population_std_dev,
    quantile,
    sd_fences,
    variance,
)
from .dispersion import (
    DurationInclusionPolicy,
    ciqr90,
    coefficient_of_dispersion,
    coefficient_of_mean_deviation,
    coefficient_of_range,
    coefficient_of_variation,
    compute_indicator_set,
    gini_coefficient,
    indicator_values,
    outliers_out_of_iqr,
    outliers_out_of_one_sigma,
    success_rate,
)

__all__ = [
    "DurationSeries",
    "as_series",
    "iqr",
    "iqr_fences",
    "mean",
    "median",
    "outlier_count_1sd",
    "outlier_count_iqr",
    "outlier_summary",
    "population_std_dev",
    "quantile",
    "sd_fences",
    "variance",
    "DurationInclusionPolicy",
    "ciqr90",
    "coefficient_of_dispersion",
    "coefficient_of_mean_deviation",
    "coefficient_of_range",
    "coefficient_of_variation",
    "compute_indicator_set",
    "gini_coefficient",
    "indicator_values",
    "outliers_out_of_iqr",
    "outliers_out_of_one_sigma",
    "success_rate",
]
