from collections import Counter

import numpy as np
import pytest

from geompair.analysis import (
    CminusLengthModel,
    avg_len_by_series,
    avg_len_ck_design,
)
from geompair.oracle import (
    EmptySource,
    SourceTooLarge,
    TAIL,
    build_truncated_source,
    gap_bound,
    huffman_lengths,
    max_gap,
    oracle_optimal_avg_len,
    tail_fraction,
    truncated_huffman,
    two_level_check,
)


def test_truncation_sizes():
    src = build_truncated_source(0.5, 1e-9)
    assert 34 <= src.s_max <= 38
    assert 600 <= len(src.weights) <= 800
    src = build_truncated_source(0.9, 1e-9)
    assert 200 <= src.s_max <= 300
    assert 20_000 <= len(src.weights) <= 45_000


def test_truncation_tail_bound_is_minimal():
    src = build_truncated_source(0.5, 1e-9)
    assert tail_fraction(0.5, src.s_max) < 1e-9
    assert tail_fraction(0.5, src.s_max - 1) >= 1e-9


def test_truncation_validation():
    with pytest.raises(ValueError):
        build_truncated_source(0.5, 1.0)
    with pytest.raises(SourceTooLarge):
        build_truncated_source(0.95, 1e-12, cap=10_000)


def test_source_is_sorted_with_tail_marker():
    src = build_truncated_source(0.8, 1e-6)
    assert np.all(np.diff(src.weights) <= 0)
    assert np.count_nonzero(src.signatures == TAIL) == 1
    mults = Counter(src.signatures.tolist())
    for s in range(src.s_max + 1):
        assert mults[s] == s + 1


def test_huffman_textbook_instance():
    lengths = huffman_lengths([0.4, 0.3, 0.2, 0.1])
    assert lengths.tolist() == [1, 2, 3, 3]


def test_huffman_uniform_dyadic():
    lengths = huffman_lengths([1.0] * 16)
    assert lengths.tolist() == [4] * 16


def test_huffman_edge_cases():
    assert huffman_lengths([1.0]).tolist() == [0]
    with pytest.raises(EmptySource):
        huffman_lengths([])
    with pytest.raises(ValueError):
        huffman_lengths([0.1, 0.4])
    with pytest.raises(ValueError):
        huffman_lengths([0.4, -0.1])


def test_huffman_kraft_exact():
    rng = np.random.default_rng(3)
    for _ in range(30):
        n = int(rng.integers(1, 400))
        w = np.sort(rng.random(n) + 1e-3)[::-1]
        lengths = huffman_lengths(w)
        top = int(lengths.max())
        assert sum(1 << (top - int(l)) for l in lengths) == 1 << top


def test_huffman_deterministic():
    w = build_truncated_source(0.6, 1e-8).weights
    a = huffman_lengths(w)
    b = huffman_lengths(w)
    assert np.array_equal(a, b)


def test_huffman_n19_worked_example():
    w = [4, 4, 3, 3, 3, 3, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2, 1, 1]
    lengths = huffman_lengths(w)
    assert float(np.dot(w, lengths)) == 206.0
    profile = Counter(lengths.tolist())
    plateau = [
        {3: 1, 4: 10, 5: 8},
        {4: 13, 5: 6},
        {4: 14, 5: 3, 6: 2},
    ]
    assert dict(profile) in plateau


def test_oracle_dyadic_point():
    est, unc = oracle_optimal_avg_len(0.5, 1e-9)
    assert abs(est - 4.0) < 1e-6
    assert 0 < unc < 1e-6


@pytest.mark.parametrize("k", [2, 3, 4])
def test_oracle_matches_design_families(k):
    est, _ = oracle_optimal_avg_len(2 ** (-1 / k), 1e-9)
    assert abs(est - avg_len_ck_design(k)) < 1e-3
    est, _ = oracle_optimal_avg_len(2.0**-k, 1e-9)
    series = avg_len_by_series(CminusLengthModel(k), 2.0**-k, 1e-10)
    assert abs(est - series) < 1e-3


def test_two_level_check_passes_on_oracle_output():
    code = truncated_huffman(0.5, 1e-9)
    ok, witnesses = two_level_check(code.lengths_by_signature, code.source.s_max // 2)
    assert ok and not witnesses


def test_two_level_check_negative_control():
    by_sig = {0: [1], 1: [2, 4], 2: [4, 4, 5]}
    ok, witnesses = two_level_check(by_sig, 2)
    assert not ok and witnesses == [1]


def test_max_gap_examples():
    for q, expected in [(0.5, 0), (0.6, 0)]:
        code = truncated_huffman(q, 1e-9)
        assert max_gap(code.lengths_by_signature, code.source.s_max // 2) == expected
    code = truncated_huffman(0.25, 1e-9)
    g = max_gap(code.lengths_by_signature, code.source.s_max // 2)
    assert g <= gap_bound(0.25) == 2


def test_max_gap_synthetic():
    by_sig = {0: [1], 1: [4, 5], 2: [5, 6]}
    assert max_gap(by_sig, 2) == 0
    assert max_gap({0: [1], 1: [2], 2: [6]}, 2) == 3
