"""Pair codecs for the design points q = 2^(-k), k >= 2, and their limit.

Each signature s = i + j owns s + 1 pairs.  For parameter k the code
assigns every signature a base length Lambda_s; n_short of its pairs get
Lambda_s bits and the remaining n_long get Lambda_s + 1.  The counts
follow two regimes: an initial doubling regime for s <= 2^(k-1) - 2 and
a periodic regime (period 2^k - 1) afterwards.  We realize the unique
canonical prefix code with exactly this length multiset: enumerating
signatures in increasing order (short block before long block within a
signature) the lengths are nondecreasing, so codeword values are simply
allocated in numeric order.  The emitted bits therefore differ from any
particular tree drawing, but the length of every codeword, and hence
optimality, is preserved.

The limit codec is the k -> infinity limit: a chain of quasi-uniform
codes of growing size, each hanging off the all-ones leaf of the
previous one.  Its codeword for a pair stabilizes once k exceeds a
threshold depending on the signature, so it agrees with every order-k
code on the initial regime.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .basecodes import quasi_uniform_decode, quasi_uniform_encode
from .bitio import BitReader, BitWriter, Codeword


@dataclass(frozen=True)
class SignatureLengthRow:
    """Length distribution of one signature: counts at Lambda and Lambda+1."""

    s: int
    lam: int
    n_short: int
    n_long: int

    def total_pairs(self) -> int:
        return self.n_short + self.n_long


def signature_length_row(k: int, s: int) -> SignatureLengthRow:
    """Base length and short/long codeword counts for signature s, order k.

    Initial regime (s <= 2^(k-1) - 2): write s = 2^i + j - 1 with
    0 <= j < 2^i; then Lambda_s = (s+2)(i+1) - 2^(i+1), with 2^i - j - 1
    short and 2j + 1 long codewords.

    Periodic regime (s >= 2^(k-1) - 1): write
    s = 2^(k-1) - 1 + (2^k - 1) l + j with 0 <= j < 2^k - 1; then
    Lambda_s = (s+2)k - 2^k and the counts cycle through five phases in
    j.  In every phase the counts sum to s + 1, one codeword per pair.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if s < 0:
        raise ValueError("signature must be >= 0")
    half = 1 << (k - 1)
    if s <= half - 2:
        i = (s + 1).bit_length() - 1
        j = s + 1 - (1 << i)
        lam = (s + 2) * (i + 1) - (1 << (i + 1))
        return SignatureLengthRow(s, lam, (1 << i) - j - 1, 2 * j + 1)

    full = (1 << k) - 1
    ell, j = divmod(s - (half - 1), full)
    lam = (s + 2) * k - (full + 1)
    base = full * ell
    if j <= half - 3:
        n_short, n_long = base + half - j - 1, 2 * j + 1
    elif j == half - 2:
        n_short, n_long = base, 2 * half - 2
    elif j <= full - 3:
        n_short, n_long = base + 3 * half - 2 - j, 2 * j + 2 - 2 * half
    elif j == full - 2:
        n_short, n_long = base + half + 1, 2 * half - 4
    else:  # j == full - 1
        n_short, n_long = base + half - 1, full
    row = SignatureLengthRow(s, lam, n_short, n_long)
    assert row.total_pairs() == s + 1
    return row


class CminusCodec:
    """Canonical pair codec for parameter k >= 2.

    Keeps a per-signature allocation table (first canonical value of the
    short and long blocks), grown lazily; encoding a pair of signature s
    is then O(1) after the table covers s.
    """

    def __init__(self, k: int) -> None:
        if k < 2:
            raise ValueError("k must be >= 2")
        self.k = k
        # per signature: (lam, n_short, n_long, first_short, first_long)
        self._rows: list[tuple[int, int, int, int, int]] = []
        self._next_value = 0
        self._next_length = 0
        self._grow_lock = threading.Lock()

    def _row(self, s: int) -> tuple[int, int, int, int, int]:
        if s < len(self._rows):
            return self._rows[s]
        with self._grow_lock:
            while len(self._rows) <= s:
                cur = len(self._rows)
                row = signature_length_row(self.k, cur)
                firsts = []
                for length, count in (
                    (row.lam, row.n_short),
                    (row.lam + 1, row.n_long),
                ):
                    if count == 0:
                        firsts.append(-1)
                        continue
                    if length < self._next_length:
                        raise AssertionError(
                            f"length sequence decreases at signature {cur}"
                        )
                    self._next_value <<= length - self._next_length
                    self._next_length = length
                    firsts.append(self._next_value)
                    self._next_value += count
                self._rows.append((row.lam, row.n_short, row.n_long, *firsts))
        return self._rows[s]

    def encode(self, pair: tuple[int, int]) -> Codeword:
        i, j = pair
        if i < 0 or j < 0:
            raise ValueError("pair components must be >= 0")
        s = i + j
        lam, n_short, _, first_short, first_long = self._row(s)
        if i < n_short:
            return Codeword(first_short + i, lam)
        return Codeword(first_long + (i - n_short), lam + 1)

    def encode_to(self, writer: BitWriter, pair: tuple[int, int]) -> None:
        writer.write_codeword(self.encode(pair))

    def decode(self, reader: BitReader) -> tuple[int, int]:
        # Walks the canonical blocks tracking rel = window value minus the
        # block's first codeword value.  Between consecutive blocks the
        # allocation pointer advances with the window, so rel stays small
        # (at most the Kraft gap scaled by one block step) even though the
        # window itself grows to thousands of bits.
        rel = 0
        length = 0
        s = 0
        rows = self._rows
        read_bits = reader.read_bits
        read_bit = reader.read_bit
        while True:
            if s >= len(rows):
                self._row(s)
            lam, n_short, n_long, _, _ = rows[s]
            need = lam - length
            while need > 0:
                take = need if need < 64 else 64
                rel = (rel << take) | read_bits(take)
                need -= take
            length = lam
            if rel < n_short:
                return rel, s - rel
            rel -= n_short
            if n_long:
                rel = (rel << 1) | read_bit()
                length += 1
                if rel < n_long:
                    i = n_short + rel
                    return i, s - i
                rel -= n_long
            s += 1


# ---------------------------------------------------------------------------
# Limit code
# ---------------------------------------------------------------------------


def limit_row(s: int) -> SignatureLengthRow:
    """Length distribution of the limit code at signature s.

    With s = 2^t - 1 + r, 0 <= r < 2^t: 2^t - 1 - r pairs get length
    (t-1)(s+2) + 2r + 2 and the other 2r + 1 get one bit more.
    """
    if s < 0:
        raise ValueError("signature must be >= 0")
    t = (s + 1).bit_length() - 1
    r = s + 1 - (1 << t)
    lam = (t - 1) * (s + 2) + 2 * r + 2
    return SignatureLengthRow(s, lam, (1 << t) - 1 - r, 2 * r + 1)


def limit_encode(pair: tuple[int, int]) -> Codeword:
    """Limit codeword: all-ones descent to the signature's block, then
    the rank inside a quasi-uniform code on s + 2 symbols.

    The descent length for s = 2^t - 1 + r is (t-1)(s+1) + 2r + 1 ones
    (zero ones for s = 0); rank i takes the i-th of the s + 2 canonical
    quasi-uniform codewords, the all-ones one staying reserved as the
    root of the next signature's block.
    """
    i, j = pair
    if i < 0 or j < 0:
        raise ValueError("pair components must be >= 0")
    s = i + j
    t = (s + 1).bit_length() - 1
    r = s + 1 - (1 << t)
    run = (t - 1) * (s + 1) + 2 * r + 1
    return Codeword((1 << run) - 1, run) + quasi_uniform_encode(s + 2, i)


def limit_decode(reader: BitReader) -> tuple[int, int]:
    """Inverse of :func:`limit_encode`.

    Descends the chain of quasi-uniform blocks: at signature s the
    decoded rank either identifies a pair (rank <= s) or is the reserved
    all-ones rank s + 1, meaning the codeword belongs to a deeper
    signature.  This consumes exactly one codeword; a truncated stream
    raises StreamExhausted.
    """
    s = 0
    while True:
        rank = quasi_uniform_decode(s + 2, reader)
        if rank <= s:
            return rank, s - rank
        s += 1


class LimitCodec:
    """Stateless pair codec facade for the limit code."""

    k = 0

    def encode(self, pair: tuple[int, int]) -> Codeword:
        return limit_encode(pair)

    def encode_to(self, writer: BitWriter, pair: tuple[int, int]) -> None:
        writer.write_codeword(limit_encode(pair))

    def decode(self, reader: BitReader) -> tuple[int, int]:
        return limit_decode(reader)
