import random
from collections import Counter
from fractions import Fraction

import pytest

from geompair.analysis import avg_len_ck_design, golomb_pair_avg_len
from geompair.basecodes import golomb_length
from geompair.bitio import BitReader, BitWriter, StreamExhausted
from geompair.ck_codec import CkCodec


@pytest.mark.parametrize(
    "k,pair,bits",
    [
        (1, (2, 1), "11010"),
        (3, (0, 0), "00000"),
        (3, (4, 1), "100100"),
    ],
)
def test_encode_examples(k, pair, bits):
    assert CkCodec(k).encode(pair).bits() == bits


@pytest.mark.parametrize("k", [1, 2, 3, 4, 7, 9, 16, 32])
def test_roundtrip_random_pairs(k):
    codec = CkCodec(k)
    rng = random.Random(k)
    pairs = [(rng.randint(0, 10_000), rng.randint(0, 10_000)) for _ in range(400)]
    w = BitWriter()
    for p in pairs:
        codec.encode_to(w, p)
    r = BitReader(w.getvalue())
    assert [codec.decode(r) for _ in pairs] == pairs
    assert r.bits_remaining < 8


def test_decode_on_truncated_stream():
    codec = CkCodec(3)
    w = BitWriter()
    codec.encode_to(w, (50, 2))
    data = w.getvalue()[:2]
    r = BitReader(data)
    with pytest.raises(StreamExhausted):
        codec.decode(r)


@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_kraft_completeness_truncated(k):
    codec = CkCodec(k)
    bound = 64 * k
    total = Fraction(0)
    for i in range(bound):
        for j in range(bound):
            total += Fraction(1, 1 << codec.length_of((i, j)))
    assert 0 < 1 - total < 2 * Fraction(1, 2) ** (bound // k)


def test_length_of_matches_encode():
    codec = CkCodec(5)
    for pair in [(0, 0), (4, 4), (23, 7), (100, 0)]:
        assert codec.length_of(pair) == codec.encode(pair).length


def test_k2_equivalent_to_golomb_pair():
    # same codeword-length multiset as order-2 Golomb on each component,
    # checked over a block of pairs covering all residues
    codec = CkCodec(2)
    mine = Counter(codec.length_of((i, j)) for i in range(40) for j in range(40))
    golomb = Counter(
        golomb_length(2, i) + golomb_length(2, j)
        for i in range(40)
        for j in range(40)
    )
    assert mine == golomb


@pytest.mark.parametrize("k", range(3, 11))
def test_beats_symbol_by_symbol_golomb_at_design_point(k):
    q = 2 ** (-1 / k)
    assert golomb_pair_avg_len(q, k) - avg_len_ck_design(k) > 1e-4
