"""Tests for the normalized dispersion indicators."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import EmptySeries
from src.models.case_models import Outcome
from src.stats.dispersion import (
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
from tests.conftest import make_records


durations = st.lists(
    st.floats(min_value=0.001, max_value=1e6, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=500,
)

TOLERANCE = dict(rel=1e-9, abs=1e-12)


# === Worked examples ===

def test_indicators_of_ten_twenty_thirty():
    values = indicator_values([10, 20, 30])
    assert values["cv"] == pytest.approx(0.41, abs=0.005)
    assert values["cr"] == pytest.approx(0.5)
    assert values["cd"] == pytest.approx(1 / 3)
    assert values["cmd"] == pytest.approx(1 / 3)
    assert values["ciqr90"] == pytest.approx(0.45)
    assert values["gc"] == pytest.approx(2 / 9)
    assert values["oo_os"] == pytest.approx(2 / 3)
    assert values["oo_iqr"] == 0.0


def test_coefficient_of_variation_is_scale_free():
    assert coefficient_of_variation([10, 20, 30]) == pytest.approx(coefficient_of_variation([100, 200, 300]))
    assert coefficient_of_variation([100, 200, 300]) == pytest.approx(0.41, abs=0.005)


def test_indicators_of_stable_process(sample_durations):
    efp = sample_durations["EFP"]
    assert coefficient_of_variation(efp) == pytest.approx(0.008724, abs=1e-6)
    assert coefficient_of_range(efp) == pytest.approx(5 / 425)
    assert coefficient_of_dispersion(efp) == pytest.approx(1.6 / 213)
    assert coefficient_of_mean_deviation(efp) == pytest.approx(1.68 / 212.6)
    assert ciqr90(efp) == pytest.approx(4.6 / 425)
    assert gini_coefficient(efp) == pytest.approx(26 / 5315)
    assert outliers_out_of_one_sigma(efp) == pytest.approx(0.4)
    assert outliers_out_of_iqr(efp) == 0.0


def test_iqr_outlier_share_of_sample_processes(sample_durations):
    assert outliers_out_of_iqr(sample_durations["EFP"]) == 0.0
    assert outliers_out_of_iqr(sample_durations["MP"]) == 0.0
    assert outliers_out_of_iqr(sample_durations["P1"]) == pytest.approx(0.2)
    assert outliers_out_of_iqr(sample_durations["P2"]) == 0.0
    assert outliers_out_of_one_sigma(sample_durations["P1"]) == pytest.approx(0.2)


def test_erratic_sample_spreads_more_than_stable_one(sample_durations):
    stable = indicator_values(sample_durations["EFP"])
    erratic = indicator_values(sample_durations["P2"])
    for column in ("cv", "cr", "cd", "cmd", "ciqr90", "gc"):
        assert erratic[column] > stable[column]


def test_coefficient_of_variation_is_not_capped_at_one():
    assert coefficient_of_variation([1, 1, 1, 1, 100]) == pytest.approx(39.6 / 20.8)


def test_ciqr_with_quartile_pair():
    # Q1 = 1.75, Q3 = 3.25
    assert ciqr90([1, 2, 3, 4], quantiles=(0.25, 0.75)) == pytest.approx(1.5 / 5.0)


def test_single_value_gives_zero_everywhere():
    assert all(v == 0.0 for v in indicator_values([250.0]).values())


@given(durations)
def test_constant_series_gives_exact_zeros(values):
    constant = [values[0]] * len(values)
    assert all(v == 0.0 for v in indicator_values(constant).values())


# === Gini ===

def _pairwise_gini(values):
    x = np.asarray(values, dtype=np.float64)
    n = x.size
    return float(np.abs(x[:, None] - x[None, :]).sum() / (2 * n * n * x.mean()))


@given(durations)
def test_gini_matches_pairwise_definition(values):
    assert gini_coefficient(values) == pytest.approx(_pairwise_gini(values), **TOLERANCE)


def test_gini_of_one_dominant_case_approaches_upper_bound():
    n = 100
    values = [1e-3] * (n - 1) + [1e6]
    assert gini_coefficient(values) == pytest.approx((n - 1) / n, rel=1e-6)


# === Properties ===

@settings(max_examples=1000)
@given(durations)
def test_indicator_ranges(values):
    v = indicator_values(values)
    assert v["cv"] >= 0.0
    assert 0.0 <= v["cr"] <= 1.0
    assert v["cd"] >= 0.0
    assert v["cmd"] >= 0.0
    assert v["ciqr90"] >= 0.0
    assert 0.0 <= v["gc"] < 1.0
    assert 0.0 <= v["oo_os"] <= 1.0
    assert 0.0 <= v["oo_iqr"] <= 1.0


@settings(max_examples=200)
@given(durations, st.floats(min_value=0.01, max_value=100.0))
def test_ratio_indicators_are_scale_invariant(values, factor):
    base = indicator_values(values)
    scaled = indicator_values([v * factor for v in values])
    for column in ("cv", "cr", "cd", "cmd", "ciqr90", "gc"):
        assert scaled[column] == pytest.approx(base[column], **TOLERANCE), column


def test_invariants_hold_on_a_thousand_random_series():
    rng = np.random.default_rng(2023)
    for _ in range(1000):
        n = int(rng.integers(1, 501))
        values = rng.lognormal(5.0, rng.uniform(0.05, 1.5), size=n)
        factor = float(rng.uniform(0.001, 1000.0))
        base = indicator_values(values)

        assert base["cv"] >= 0.0 and base["cd"] >= 0.0 and base["cmd"] >= 0.0
        assert 0.0 <= base["cr"] <= 1.0
        assert base["ciqr90"] >= 0.0
        assert 0.0 <= base["gc"] < 1.0
        assert 0.0 <= base["oo_os"] <= 1.0 and 0.0 <= base["oo_iqr"] <= 1.0
        if n == 1:
            assert all(v == 0.0 for v in base.values())

        assert indicator_values(rng.permutation(values)) == base

        scaled = indicator_values(values * factor)
        for column, value in base.items():
            assert scaled[column] == pytest.approx(value, **TOLERANCE), (n, column)


@settings(max_examples=1000)
@given(durations, st.data())
def test_indicators_are_permutation_invariant(values, data):
    shuffled = data.draw(st.permutations(values))
    assert indicator_values(shuffled) == indicator_values(values)


def _oracle_quantile(ordered, p):
    h = (len(ordered) - 1) * p
    lo, hi = math.floor(h), math.ceil(h)
    return ordered[lo] + (h - lo) * (ordered[hi] - ordered[lo])


def _oracle_indicators(values):
    xs = sorted(Fraction(v) for v in values)
    n = len(xs)
    mu = sum(xs) / n
    med = _oracle_quantile(xs, Fraction(1, 2))
    q05 = _oracle_quantile(xs, Fraction(1, 20))
    q95 = _oracle_quantile(xs, Fraction(19, 20))
    return {
        "cr": (xs[-1] - xs[0]) / (xs[-1] + xs[0]),
        "cd": sum(abs(x - med) for x in xs) / n / med,
        "cmd": sum(abs(x - mu) for x in xs) / n / mu,
        "ciqr90": (q95 - q05) / (q95 + q05),
        "gc": sum(abs(a - b) for a in xs for b in xs) / (2 * n * n * mu),
    }


def test_rational_indicators_match_exact_oracle_on_small_integer_grid():
    # Series are multisets, so combinations cover every ordering class.
    for n in range(1, 9):
        for values in itertools.combinations_with_replacement(range(1, 7), n):
            computed = indicator_values(values)
            for column, exact in _oracle_indicators(values).items():
                assert computed[column] == pytest.approx(float(exact), rel=1e-12, abs=1e-15), (values, column)


# === Indicator sets from case records ===

def test_success_rate_counts_every_case():
    records = make_records("P", [10, 20, 30, 40], failures=1)
    assert success_rate(records) == 75.0


def test_success_rate_of_no_records_is_an_error():
    with pytest.raises(EmptySeries):
        success_rate([])


def test_indicator_set_includes_failed_durations_by_default():
    records = make_records("P", [10, 20, 30, 1000], failures=1)
    everything = compute_indicator_set(records)
    successes = compute_indicator_set(records, DurationInclusionPolicy.SUCCESSES_ONLY)

    assert everything.cr == pytest.approx(990 / 1010)
    assert successes.cr == pytest.approx(0.5)
    assert everything.success_rate == successes.success_rate == 75.0
    assert everything.case_count == successes.case_count == 4


def test_indicator_set_without_successful_durations_is_an_error():
    records = make_records("MP", [10, 20], failures=2)
    with pytest.raises(EmptySeries):
        compute_indicator_set(records, DurationInclusionPolicy.SUCCESSES_ONLY)


def test_indicator_set_rejects_empty_records():
    with pytest.raises(EmptySeries):
        compute_indicator_set([])


def test_policy_from_flag():
    assert DurationInclusionPolicy.from_flag(True) is DurationInclusionPolicy.ALL
    assert DurationInclusionPolicy.from_flag(False) is DurationInclusionPolicy.SUCCESSES_ONLY


def test_indicator_set_honours_rule_multipliers(sample_durations):
    records = make_records("EFP", sample_durations["EFP"])
    default = compute_indicator_set(records)
    wide = compute_indicator_set(records, sd_multiplier=2.0)
    assert default.oo_os == pytest.approx(0.4)
    assert wide.oo_os == 0.0
    assert all(r.outcome is Outcome.SUCCESS for r in records)
