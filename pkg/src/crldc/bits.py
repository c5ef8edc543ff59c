"""Bit strings, distance metrics, and the query-counted read oracle.

Bit strings are 1-indexed in the public API: ``x[a, b]`` means bits a
through b inclusive, matching the usual coding-theory notation.  Storage
is a read-only numpy uint8 array of 0/1 values.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import LengthMismatch, OutOfRange
from .kernels import ed_banded


class BitString:
    __slots__ = ("_a", "_digest", "_s")

    def __init__(self, bits):
        a = np.asarray(bits, dtype=np.uint8)
        if a.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        if a.size and a.max() > 1:
            raise ValueError("bits must be 0/1")
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        self._a = a
        self._digest = None
        self._s = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_str(cls, s: str) -> "BitString":
        return cls(np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0"))

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(np.zeros(n, dtype=np.uint8))

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls(np.ones(n, dtype=np.uint8))

    @classmethod
    def random(cls, n: int, rng) -> "BitString":
        if hasattr(rng, "integers"):  # numpy Generator
            return cls(rng.integers(0, 2, size=n, dtype=np.uint8))
        return cls(np.fromiter((rng.randrange(2) for _ in range(n)),
                               dtype=np.uint8, count=n))

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitString":
        """Big-endian fixed-width encoding of a non-negative integer."""
        if value < 0 or value >> width:
            raise ValueError(f"{value} does not fit in {width} bits")
        return cls([(value >> (width - 1 - i)) & 1 for i in range(width)])

    @classmethod
    def from_bytes_msb(cls, data: bytes, nbits: int) -> "BitString":
        a = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        if len(a) < nbits:
            raise ValueError("byte buffer shorter than bit length")
        return cls(a[:nbits])

    # -- accessors ----------------------------------------------------

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __len__(self) -> int:
        return self._a.size

    def __getitem__(self, i):
        if isinstance(i, tuple):
            a, b = i
            return self.slice(a, b)
        if not 1 <= i <= len(self):
            raise OutOfRange(f"bit index {i} outside [1, {len(self)}]")
        return int(self._a[i - 1])

    def slice(self, a: int, b: int) -> "BitString":
        """Bits a..b inclusive, 1-indexed."""
        if not (1 <= a <= b <= len(self)):
            raise OutOfRange(f"slice [{a}, {b}] outside [1, {len(self)}]")
        return BitString(self._a[a - 1:b])

    def __add__(self, other: "BitString") -> "BitString":
        return BitString(np.concatenate([self._a, other._a]))

    def __xor__(self, other: "BitString") -> "BitString":
        if len(self) != len(other):
            raise LengthMismatch("xor operands differ in length")
        return BitString(self._a ^ other._a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return len(self) == len(other) and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash(self._a.tobytes())

    def __lt__(self, other: "BitString") -> bool:
        # lexicographic; used by the majority tie-break rule
        return self.to01() < other.to01()

    def __repr__(self):
        s = self.to01()
        if len(s) > 64:
            s = s[:61] + "..."
        return f"BitString({s!r}, len={len(self)})"

    def to01(self) -> str:
        if self._s is None:
            self._s = (self._a + ord("0")).tobytes().decode("ascii")
        return self._s

    def to_int(self) -> int:
        v = 0
        for b in self._a:
            v = (v << 1) | int(b)
        return v

    def to_bytes_msb(self) -> bytes:
        return np.packbits(self._a).tobytes()

    def weight(self) -> int:
        return int(self._a.sum())

    def digest(self) -> bytes:
        """Cached content hash; used as a cache key by decoders."""
        if self._digest is None:
            import hashlib

            self._digest = hashlib.sha1(self._a.tobytes()).digest()
        return self._digest


@dataclass(frozen=True)
class DistanceReport:
    raw: int
    normalized: Fraction
    metric: str  # "HAM" or "ED"


def hamming_distance(u: BitString, v: BitString) -> DistanceReport:
    if len(u) != len(v):
        raise LengthMismatch(f"|u|={len(u)} != |v|={len(v)}")
    flips = int(np.count_nonzero(u.array ^ v.array))
    return DistanceReport(flips, Fraction(flips, len(u)) if len(u) else Fraction(0), "HAM")


def raw_edit_distance(u: BitString, v: BitString) -> int:
    """Exact insertion/deletion edit distance (no substitutions).

    Uses a banded DP with doubling band width, so the cost is
    O(max(|u|,|v|) * distance) instead of the full quadratic table.
    """
    a, b = u.array, v.array
    if len(a) == 0 or len(b) == 0:
        return len(a) + len(b)
    band = max(8, abs(len(a) - len(b)))
    limit = len(a) + len(b)
    while True:
        d = int(ed_banded(a, b, band))
        if d <= band:
            return d
        if band >= limit:
            return limit
        band = min(2 * band, limit)


def edit_distance(u: BitString, v: BitString) -> DistanceReport:
    """Normalized by 2*max(|u|, |v|), the convention used throughout."""
    raw = raw_edit_distance(u, v)
    denom = 2 * max(len(u), len(v))
    return DistanceReport(raw, Fraction(raw, denom) if denom else Fraction(0), "ED")


class ReceivedWordOracle:
    """Query-counted read-only view of a (possibly corrupted) codeword.

    Each bit read increments ``query_count`` by one; a range read of w
    bits increments it by w.
    """

    def __init__(self, word: BitString, keep_log: bool = False):
        self.word = word
        self.query_count = 0
        self.query_log = [] if keep_log else None

    def __len__(self) -> int:
        return len(self.word)

    def read(self, a: int, b: int) -> BitString:
        if not (1 <= a <= b <= len(self.word)):
            raise OutOfRange(f"read [{a}, {b}] outside [1, {len(self.word)}]")
        self.query_count += b - a + 1
        if self.query_log is not None:
            self.query_log.append((a, b))
        return self.word.slice(a, b)

    def read_bit(self, i: int) -> int:
        return self.read(i, i)[1]


def oracle_read(o: ReceivedWordOracle, a: int, b: int) -> BitString:
    return o.read(a, b)


# -- codeword file format --------------------------------------------
# 8-byte little-endian bit-length header, then the bits packed MSB-first.

def write_codeword(path, x: BitString) -> None:
    with open(path, "wb") as f:
        f.write(struct.pack("<Q", len(x)))
        f.write(x.to_bytes_msb())


def read_codeword(path) -> BitString:
    with open(path, "rb") as f:
        (nbits,) = struct.unpack("<Q", f.read(8))
        return BitString.from_bytes_msb(f.read(), nbits)
