"""Building-block codes: unary, quasi-uniform, and Golomb.

A quasi-uniform code on N symbols uses the two lengths floor(log2 N) and
ceil(log2 N); the shorter codewords go to the smaller (more probable)
ranks.  The Golomb code of order k sends the k-ary remainder through the
quasi-uniform code for N = k, then the quotient in unary.  Ranks here are
0-based everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitio import BitReader, BitWriter, Codeword


class RankOutOfRange(ValueError):
    """Rank outside [0, N) for a quasi-uniform code of size N."""


def unary_encode(n: int) -> Codeword:
    """n ones followed by a zero; length n + 1."""
    if n < 0:
        raise ValueError("unary argument must be >= 0")
    return Codeword((1 << (n + 1)) - 2, n + 1)


def read_unary(reader: BitReader) -> int:
    """Count of ones before the terminating zero."""
    n = 0
    while reader.read_bit():
        n += 1
    return n


@dataclass(frozen=True)
class QuasiUniformSpec:
    """Shape of the quasi-uniform code for an alphabet of N symbols.

    ``short_count`` ranks get ``m - 1`` bits, the rest ``m`` bits, where
    m = ceil(log2 N).  When N is a power of two every codeword has length
    log2 N and ``short_count`` is 0.  N = 1 is the null code (one empty
    codeword).
    """

    n: int
    m: int
    short_count: int

    @classmethod
    def for_size(cls, n: int) -> "QuasiUniformSpec":
        if n < 1:
            raise ValueError("alphabet size must be >= 1")
        m = (n - 1).bit_length()  # ceil(log2 n), with m = 0 for n = 1
        return cls(n, m, (1 << m) - n)

    def length_of(self, rank: int) -> int:
        if not 0 <= rank < self.n:
            raise RankOutOfRange(f"rank {rank} outside [0, {self.n})")
        return self.m - 1 if rank < self.short_count else self.m


def quasi_uniform_encode(n: int, rank: int) -> Codeword:
    """Canonical quasi-uniform codeword for ``rank`` in an N-symbol alphabet.

    Ranks below ``short_count`` get their (m-1)-bit binary value; rank
    r >= short_count gets the m-bit value r + short_count.  The resulting
    codewords are numerically increasing and prefix-free with Kraft sum
    exactly 1.
    """
    spec = QuasiUniformSpec.for_size(n)
    if not 0 <= rank < n:
        raise RankOutOfRange(f"rank {rank} outside [0, {n})")
    if rank < spec.short_count:
        return Codeword(rank, spec.m - 1)
    return Codeword(rank + spec.short_count, spec.m)


def quasi_uniform_decode(n: int, reader: BitReader) -> int:
    """Inverse of :func:`quasi_uniform_encode`, consuming exactly one codeword."""
    spec = QuasiUniformSpec.for_size(n)
    if spec.m == 0:
        return 0
    value = reader.read_bits(spec.m - 1) if spec.m > 1 else 0
    if value < spec.short_count:
        return value
    value = (value << 1) | reader.read_bit()
    return value - spec.short_count


def golomb_encode(k: int, i: int) -> Codeword:
    """Golomb codeword of order k: quasi-uniform k-remainder, then unary quotient."""
    if k < 1:
        raise ValueError("Golomb order must be >= 1")
    if i < 0:
        raise ValueError("Golomb argument must be >= 0")
    return quasi_uniform_encode(k, i % k) + unary_encode(i // k)


def golomb_decode(k: int, reader: BitReader) -> int:
    if k < 1:
        raise ValueError("Golomb order must be >= 1")
    rem = quasi_uniform_decode(k, reader)
    return k * read_unary(reader) + rem


def golomb_length(k: int, i: int) -> int:
    """Length in bits of the order-k Golomb codeword for i."""
    spec = QuasiUniformSpec.for_size(k)
    return spec.length_of(i % k) + i // k + 1


def canonical_codewords(lengths: list[int]) -> list[Codeword]:
    """Canonical prefix codewords for a nondecreasing list of lengths.

    Codeword values increase numerically in list order; each step shifts
    left by the length difference.  Raises ValueError if the lengths
    decrease somewhere or overflow the code space (Kraft sum above 1).
    """
    out: list[Codeword] = []
    value = 0
    cur_len = lengths[0] if lengths else 0
    for length in lengths:
        if length < cur_len:
            raise ValueError("lengths must be nondecreasing")
        value <<= length - cur_len
        cur_len = length
        if value >> length:
            raise ValueError("lengths overflow the code space")
        out.append(Codeword(value, length))
        value += 1
    return out


class GolombPairCodec:
    """Pair codec applying the order-k Golomb code to each component."""

    def __init__(self, k: int) -> None:
        if k < 1:
            raise ValueError("Golomb order must be >= 1")
        self.k = k

    def encode(self, pair: tuple[int, int]) -> Codeword:
        i, j = pair
        return golomb_encode(self.k, i) + golomb_encode(self.k, j)

    def encode_to(self, writer: BitWriter, pair: tuple[int, int]) -> None:
        writer.write_codeword(self.encode(pair))

    def decode(self, reader: BitReader) -> tuple[int, int]:
        return golomb_decode(self.k, reader), golomb_decode(self.k, reader)
