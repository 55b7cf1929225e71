import math

import pytest

from geompair import analysis
from geompair.analysis import (
    CkLengthModel,
    CminusLengthModel,
    GolombPairLengthModel,
    LimitLengthModel,
    NoConvergence,
    NoSignChange,
    QOutOfRange,
    adaptive_select,
    asymptotic_redundancy,
    avg_len_by_series,
    avg_len_ck,
    avg_len_ck_design,
    avg_len_limit_closed,
    best_golomb_order,
    crossover,
    entropy_per_symbol,
    golomb_pair_avg_len,
    oscillation_extremes,
    redundancy_per_symbol,
)

GOLDEN = (math.sqrt(5) - 1) / 2


def test_entropy_examples():
    assert entropy_per_symbol(0.5) == 2.0
    assert abs(entropy_per_symbol(0.25) - 1.0817042) < 1e-6
    for q in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(QOutOfRange):
            entropy_per_symbol(q)


def test_avg_len_ck_examples():
    assert avg_len_ck(0.5, 1) == 4.0
    assert abs(avg_len_ck(2**-0.5, 2) - 6.0) < 1e-12
    assert abs(avg_len_ck_design(3) - 7.1526779) < 1e-6
    with pytest.raises(QOutOfRange):
        avg_len_ck(1.0, 3)


def test_zero_redundancy_at_half():
    assert abs(0.5 * avg_len_ck(0.5, 1) - entropy_per_symbol(0.5)) < 1e-12


@pytest.mark.parametrize("k", range(1, 65))
def test_design_specialization_consistent(k):
    q = 2 ** (-1 / k)
    a, b = avg_len_ck(q, k), avg_len_ck_design(k)
    assert abs(a - b) <= 1e-12 * b


@pytest.mark.parametrize("q", [0.3, 0.6, 0.8, 0.9])
@pytest.mark.parametrize("k", range(1, 9))
def test_series_matches_ck_closed_form(q, k):
    srs = avg_len_by_series(CkLengthModel(k), q, 1e-10)
    assert abs(srs - avg_len_ck(q, k)) < 1e-10 + 1e-9


def test_series_examples():
    assert abs(avg_len_by_series(GolombPairLengthModel(1), 0.5, 1e-10) - 4.0) < 1e-9
    limit_series = avg_len_by_series(LimitLengthModel(), 0.25, 1e-10)
    assert abs(limit_series - avg_len_limit_closed(0.25)) < 1e-9
    v = avg_len_by_series(CminusLengthModel(2), 0.25, 1e-10)
    assert 2 * entropy_per_symbol(0.25) - 1e-9 <= v <= avg_len_limit_closed(0.25)


def test_series_error_conditions():
    with pytest.raises(NoConvergence):
        avg_len_by_series(LimitLengthModel(), 1.0, 1e-9)
    with pytest.raises(QOutOfRange):
        avg_len_by_series(LimitLengthModel(), -0.5, 1e-9)
    with pytest.raises(ValueError):
        avg_len_by_series(LimitLengthModel(), 0.5, 0.0)


def test_limit_closed_examples():
    assert abs(avg_len_limit_closed(0.25) - 2.2345378) < 1e-6
    assert avg_len_limit_closed(0.5) > 4.0
    assert abs(avg_len_limit_closed(1e-6) - 1.0) < 1e-4


@pytest.mark.parametrize(
    "q,k", [(0.5, 1), (0.7, 2), (GOLDEN, 1), (0.618035, 2), (0.9, 7)]
)
def test_best_golomb_order(q, k):
    assert best_golomb_order(q) == k


def test_golomb_interval_endpoints_via_root_finding():
    # endpoint of the first interval solves q + q^2 = 1; bisect it and
    # compare with the closed form
    lo, hi = 0.5, 0.7
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid + mid * mid <= 1:
            lo = mid
        else:
            hi = mid
    assert abs(lo - GOLDEN) < 1e-12


def test_golomb_pair_closed_form_matches_series():
    for q, k in [(0.5, 1), (0.7, 2), (0.9, 5), (0.3, 1)]:
        srs = avg_len_by_series(GolombPairLengthModel(k), q, 1e-10)
        assert abs(srs - golomb_pair_avg_len(q, k)) < 1e-9


def test_no_family_beats_entropy():
    qs = [round(0.05 * i, 2) for i in range(1, 20)]
    for q in qs:
        floor = 2 * entropy_per_symbol(q) - 1e-9
        for k in (1, 2, 3, 5, 8):
            assert avg_len_ck(q, k) >= floor
            assert golomb_pair_avg_len(q, k) >= floor
        for k in (2, 3, 4):
            assert avg_len_by_series(CminusLengthModel(k), q, 1e-9) >= floor
        assert avg_len_limit_closed(q) >= floor


def test_oscillation_extremes():
    lo, hi = oscillation_extremes()
    assert abs(lo - 0.014159) < 1e-5
    assert abs(hi - 0.014583) < 1e-5


def test_asymptotic_redundancy_sweep_within_extremes():
    lo, hi = oscillation_extremes()
    vals = [asymptotic_redundancy(k) for k in range(3, 100_001, 13)]
    assert min(vals) >= lo - 1e-4 and abs(min(vals) - lo) < 1e-4
    assert max(vals) <= hi + 1e-4 and abs(max(vals) - hi) < 1e-4
    with pytest.raises(ValueError):
        asymptotic_redundancy(2)


def test_asymptotic_matches_actual_at_large_k():
    k = 4096
    q = 2 ** (-1 / k)
    actual = 0.5 * avg_len_ck(q, k) - entropy_per_symbol(q)
    assert abs(actual - asymptotic_redundancy(k)) < 1e-3


def test_crossover_limit_vs_unary_pair():
    q_star = crossover(
        avg_len_limit_closed, lambda q: avg_len_ck(q, 1), 0.25, 0.45, 1e-5
    )
    assert abs(q_star - 0.33715) < 5e-5


def test_crossover_between_first_two_orders_hits_golden_ratio():
    q_star = crossover(
        lambda q: avg_len_ck(q, 1), lambda q: avg_len_ck(q, 2), 0.55, 0.7, 1e-7
    )
    assert abs(q_star - GOLDEN) < 1e-6


def test_crossover_requires_sign_change():
    with pytest.raises(NoSignChange):
        crossover(lambda q: 1.0, lambda q: 2.0, 0.2, 0.4, 1e-5)


def test_limit_vs_unary_pair_ordering_flips_at_crossover():
    assert avg_len_limit_closed(0.33) < avg_len_ck(0.33, 1)
    assert avg_len_limit_closed(0.34) > avg_len_ck(0.34, 1)


def test_design_point_beats_best_golomb():
    for k in range(3, 11):
        q = 2 ** (-1 / k)
        best = best_golomb_order(q)
        assert best == k
        r_new = redundancy_per_symbol(avg_len_ck_design(k), q)
        r_golomb = redundancy_per_symbol(golomb_pair_avg_len(q, best), q)
        assert r_new < r_golomb


def test_adaptive_select_examples():
    assert adaptive_select(1.0) == analysis.CodeFamily("ck", 1)
    low = adaptive_select(0.2)
    assert low.kind in ("cminus", "limit")
    three = adaptive_select(3.0)
    best_k = min(range(1, 65), key=lambda k: avg_len_ck(0.75, k))
    assert three == analysis.CodeFamily("ck", best_k)
    with pytest.raises(ValueError):
        adaptive_select(-0.5)
    assert adaptive_select(0.0).kind == "limit"
