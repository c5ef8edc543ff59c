"""Bit strings, distances and the read oracle.

The edit-distance oracle here is an independent brute-force recursion
over all insertion/deletion alignments, checked against the banded DP.
"""

import random
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crldc.bits import (BitString, ReceivedWordOracle, edit_distance,
                        hamming_distance, raw_edit_distance, read_codeword,
                        write_codeword)
from crldc.errors import LengthMismatch, OutOfRange


def brute_ed(u: str, v: str) -> int:
    """Reference insertion/deletion edit distance, plain recursion."""

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(u):
            return len(v) - j
        if j == len(v):
            return len(u) - i
        best = min(go(i + 1, j) + 1, go(i, j + 1) + 1)
        if u[i] == v[j]:
            best = min(best, go(i + 1, j + 1))
        return best

    return go(0, 0)


class TestBitString:
    def test_round_trips(self):
        b = BitString.from_str("10110")
        assert b.to01() == "10110"
        assert b.to_int() == 22
        assert BitString.from_int(22, 5) == b
        assert BitString.from_bytes_msb(b.to_bytes_msb(), 5) == b
        assert len(b) == 5 and b.weight() == 3

    def test_one_indexing(self):
        b = BitString.from_str("10110")
        assert b[1] == 1 and b[5] == 0
        assert b.slice(2, 4).to01() == "011"
        assert b[2, 4].to01() == "011"
        with pytest.raises(OutOfRange):
            b[0]
        with pytest.raises(OutOfRange):
            b.slice(3, 6)

    def test_from_int_width_guard(self):
        with pytest.raises(ValueError):
            BitString.from_int(8, 3)
        assert BitString.from_int(7, 3).to01() == "111"
        wide = BitString.from_int(1 << 70, 80)
        assert wide.to_int() == 1 << 70

    def test_concat_xor_compare(self):
        a = BitString.from_str("101")
        b = BitString.from_str("011")
        assert (a + b).to01() == "101011"
        assert (a ^ b).to01() == "110"
        with pytest.raises(LengthMismatch):
            a ^ BitString.from_str("01")
        assert BitString.from_str("011") < BitString.from_str("101")

    def test_immutable(self):
        b = BitString.from_str("101")
        with pytest.raises(ValueError):
            b.array[0] = 0

    @given(st.binary(max_size=16), st.integers(0, 128))
    def test_bytes_round_trip(self, data, nbits):
        if nbits > 8 * len(data):
            return
        b = BitString.from_bytes_msb(data, nbits)
        assert len(b) == nbits


class TestDistances:
    def test_hamming(self):
        d = hamming_distance(BitString.from_str("1010"),
                             BitString.from_str("1001"))
        assert d.raw == 2 and d.normalized == Fraction(1, 2)
        with pytest.raises(LengthMismatch):
            hamming_distance(BitString.from_str("1"), BitString.from_str("11"))

    @given(st.text(alphabet="01", max_size=12),
           st.text(alphabet="01", max_size=12))
    @settings(max_examples=200, deadline=None)
    def test_edit_distance_matches_brute_force(self, u, v):
        bu = BitString.from_str(u) if u else BitString.zeros(0)
        bv = BitString.from_str(v) if v else BitString.zeros(0)
        assert raw_edit_distance(bu, bv) == brute_ed(u, v)

    def test_edit_distance_normalization(self):
        u = BitString.from_str("1111")
        v = BitString.from_str("11")
        d = edit_distance(u, v)
        assert d.raw == 2 and d.normalized == Fraction(2, 8)

    def test_edit_distance_large_band_doubling(self):
        rng = random.Random(5)
        u = BitString.random(3000, rng)
        arr = list(u.array)
        for _ in range(300):  # force distance past the initial band
            del arr[rng.randrange(len(arr))]
        v = BitString(np.array(arr, dtype=np.uint8))
        assert raw_edit_distance(u, v) == 300

    def test_identity_and_symmetry(self):
        rng = random.Random(1)
        u = BitString.random(64, rng)
        v = BitString.random(60, rng)
        assert raw_edit_distance(u, u) == 0
        assert raw_edit_distance(u, v) == raw_edit_distance(v, u)


class TestOracle:
    def test_query_accounting(self):
        o = ReceivedWordOracle(BitString.from_str("10110"), keep_log=True)
        assert o.read(2, 4).to01() == "011"
        assert o.read_bit(1) == 1
        assert o.query_count == 4
        assert o.query_log == [(2, 4), (1, 1)]
        with pytest.raises(OutOfRange):
            o.read(0, 2)


def test_codeword_file_round_trip(tmp_path):
    rng = random.Random(2)
    for n in (0, 1, 7, 8, 12384):
        b = BitString.random(n, rng)
        path = tmp_path / f"cw{n}.bin"
        write_codeword(path, b)
        assert read_codeword(path) == b
