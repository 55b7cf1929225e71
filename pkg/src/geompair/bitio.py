"""Bit-granular stream I/O with MSB-first bit order.

All codecs in this package produce and consume :class:`Codeword` values
and move them through a :class:`BitWriter` / :class:`BitReader` pair.
Within each byte the first bit written occupies the most significant
position, so hex dumps read left to right in transmission order.  The
final partial byte of a finalized stream is padded with zero bits.
"""

from __future__ import annotations

from dataclasses import dataclass


class StreamExhausted(Exception):
    """A read required more bits than the stream holds."""


@dataclass(frozen=True)
class Codeword:
    """A finite bit string: the low ``length`` bits of ``value``, MSB first.

    Leading zeros are significant, e.g. ``Codeword(1, 3)`` is the string
    ``001``.  ``length`` 0 denotes the empty codeword.  ``value`` may be an
    arbitrarily large int, so a single Codeword can carry logically
    unbounded codewords; fixed-width transports can split it into
    fragments of at most 64 bits and concatenation restores it.
    """

    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("codeword length must be >= 0")
        if self.value < 0 or self.value >> self.length:
            raise ValueError(
                f"value {self.value} does not fit in {self.length} bits"
            )

    def __add__(self, other: "Codeword") -> "Codeword":
        """Concatenation: bits of ``self`` followed by bits of ``other``."""
        return Codeword(
            (self.value << other.length) | other.value,
            self.length + other.length,
        )

    def __len__(self) -> int:
        return self.length

    def bits(self) -> str:
        """The codeword as a ``'01'`` string (empty for length 0)."""
        return format(self.value, "0{}b".format(self.length)) if self.length else ""

    def fragments(self, width: int = 64):
        """Split into codewords of at most ``width`` bits, in stream order."""
        if width < 1:
            raise ValueError("fragment width must be >= 1")
        out = []
        remaining = self.length
        while remaining > 0:
            take = min(width, remaining)
            remaining -= take
            out.append(Codeword((self.value >> remaining) & ((1 << take) - 1), take))
        return out


class BitWriter:
    """Append-only bit sink; grows an internal byte buffer as needed."""

    def __init__(self) -> None:
        self._buf = bytearray()
        self._acc = 0  # pending bits not yet flushed to _buf, MSB-first
        self._nacc = 0  # count of pending bits, always < 8 between calls
        self._written = 0

    @property
    def bits_written(self) -> int:
        """Total number of bits written so far (padding not included)."""
        return self._written

    def write(self, value: int, length: int) -> None:
        """Append the low ``length`` bits of ``value``, MSB first.

        ``length`` may be arbitrarily large; full bytes are flushed to the
        buffer as they complete.
        """
        if length < 0:
            raise ValueError("length must be >= 0")
        if value < 0 or value >> length:
            raise ValueError(f"value {value} does not fit in {length} bits")
        self._acc = (self._acc << length) | value
        self._nacc += length
        self._written += length
        whole, rem = divmod(self._nacc, 8)
        if whole:
            self._buf += (self._acc >> rem).to_bytes(whole, "big")
            self._acc &= (1 << rem) - 1
            self._nacc = rem

    def write_codeword(self, cw: Codeword) -> None:
        self.write(cw.value, cw.length)

    def getvalue(self) -> bytes:
        """Finalized stream: the bits written, zero-padded to a whole byte.

        Non-destructive; the writer stays usable, and a later call
        reflects any additional writes.
        """
        if not self._nacc:
            return bytes(self._buf)
        return bytes(self._buf) + bytes([(self._acc << (8 - self._nacc)) & 0xFF])


class BitReader:
    """Reads bits MSB-first from a byte string, tracking exact consumption."""

    MAX_READ = 64  # per-call limit; larger reads are the caller's loop

    def __init__(self, data: bytes) -> None:
        self._data = data
        self._pos = 0
        self._total = 8 * len(data)

    @property
    def bits_consumed(self) -> int:
        return self._pos

    @property
    def bits_remaining(self) -> int:
        return self._total - self._pos

    def read_bits(self, n: int) -> int:
        """Next ``n`` bits as an unsigned int, MSB first.  0 <= n <= 64."""
        if n < 0 or n > self.MAX_READ:
            raise ValueError(f"read size {n} outside [0, {self.MAX_READ}]")
        if n == 0:
            return 0
        if self._pos + n > self._total:
            raise StreamExhausted(
                f"need {n} bits, only {self._total - self._pos} remain"
            )
        first, off = divmod(self._pos, 8)
        last = (self._pos + n - 1) >> 3
        window = int.from_bytes(self._data[first : last + 1], "big")
        shift = 8 * (last - first + 1) - off - n
        self._pos += n
        return (window >> shift) & ((1 << n) - 1)

    def read_bit(self) -> int:
        if self._pos >= self._total:
            raise StreamExhausted("stream exhausted")
        byte = self._data[self._pos >> 3]
        bit = (byte >> (7 - (self._pos & 7))) & 1
        self._pos += 1
        return bit
