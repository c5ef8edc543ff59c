"""DP kernels against brute-force oracles.

The layered-decomposition oracle enumerates every split of the received
word into d contiguous segments and sums exact per-segment edit
distances; feasible for the tiny cases used here.
"""

import itertools
import random
import re

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from crldc import kernels
from tests.test_bits import brute_ed


def to_arr(s):
    return np.frombuffer(s.encode(), dtype=np.uint8) - ord("0")


class TestEdBanded:
    @given(st.text(alphabet="01", max_size=10),
           st.text(alphabet="01", max_size=10))
    @settings(max_examples=150, deadline=None)
    def test_matches_brute_force_with_wide_band(self, u, v):
        d = int(kernels.ed_banded(to_arr(u), to_arr(v), 32))
        assert d == brute_ed(u, v)

    def test_narrow_band_overestimates_only(self):
        u = to_arr("1111111100000000")
        v = to_arr("0000000011111111")
        exact = brute_ed("1111111100000000", "0000000011111111")
        for band in range(1, 20):
            d = int(kernels.ed_banded(u, v, band))
            assert d >= exact
            if d <= band:
                assert d == exact


def brute_decomposition(blocks, w):
    """Minimum total ED over all ordered splits of w into d segments."""
    d = len(blocks)
    n = len(w)
    best = None
    for cuts in itertools.combinations_with_replacement(range(n + 1), d - 1):
        bounds = (0,) + cuts + (n,)
        total = sum(brute_ed(blocks[j], w[bounds[j]:bounds[j + 1]])
                    for j in range(d))
        if best is None or total < best:
            best = total
    return best


class TestDecomposeLayers:
    @given(st.lists(st.text(alphabet="01", min_size=3, max_size=3),
                    min_size=2, max_size=3),
           st.text(alphabet="01", max_size=8))
    @settings(max_examples=100, deadline=None)
    def test_total_matches_split_enumeration(self, blocks, w):
        arr = np.stack([to_arr(b) for b in blocks])
        L = kernels.decompose_layers(arr, to_arr(w))
        assert int(L[len(blocks), len(w)]) == brute_decomposition(blocks, w)

    def test_layer_zero(self):
        L = kernels.decompose_layers(np.zeros((1, 2), dtype=np.uint8),
                                     to_arr("0101"))
        assert L[0, 0] == 0 and L[0, 1] >= kernels._BIG

    def test_leading_insertions(self):
        # received word has junk before block 1; the free-start row must
        # absorb it as insertions, not force a worse alignment
        blocks = np.stack([to_arr("1111"), to_arr("0000")])
        w = to_arr("0101" + "1111" + "0000")
        L = kernels.decompose_layers(blocks, w)
        assert int(L[2, len(w)]) == 4


class TestSegEdToEnd:
    @given(st.text(alphabet="01", min_size=1, max_size=6),
           st.text(alphabet="01", max_size=8))
    @settings(max_examples=100, deadline=None)
    def test_matches_brute_force_all_starts(self, block, w):
        out = kernels.seg_ed_to_end(to_arr(block), to_arr(w), len(w))
        for q in range(len(w) + 1):
            assert int(out[q]) == brute_ed(block, w[q:])


class TestOnesRuns:
    @given(st.text(alphabet="01", max_size=60), st.integers(1, 8))
    @settings(max_examples=150, deadline=None)
    def test_matches_regex(self, s, min_len):
        starts, ends = kernels.ones_runs(to_arr(s), min_len)
        expected = [(m.start(), m.end()) for m in re.finditer("1+", s)
                    if m.end() - m.start() >= min_len]
        assert list(zip(starts.tolist(), ends.tolist())) == expected


def test_backend_flag_reported():
    assert isinstance(kernels.NUMBA_ENABLED, bool)


def test_fallback_matches_active_backend():
    """Re-execute the kernel module with numba disabled and compare
    outputs bit for bit on random inputs."""
    import importlib
    import os

    rng = random.Random(9)
    u = np.array([rng.randrange(2) for _ in range(200)], dtype=np.uint8)
    v = np.array([rng.randrange(2) for _ in range(190)], dtype=np.uint8)
    blocks = np.array([[rng.randrange(2) for _ in range(20)]
                       for _ in range(3)], dtype=np.uint8)
    w = np.array([rng.randrange(2) for _ in range(70)], dtype=np.uint8)

    active = (int(kernels.ed_banded(u, v, 64)),
              kernels.decompose_layers(blocks, w).tolist(),
              kernels.seg_ed_to_end(blocks[0], w, len(w)).tolist(),
              [a.tolist() for a in kernels.ones_runs(w, 3)])

    os.environ["CRLDC_NO_NUMBA"] = "1"
    try:
        pure = importlib.reload(kernels)
        assert not pure.NUMBA_ENABLED
        fallback = (int(pure.ed_banded(u, v, 64)),
                    pure.decompose_layers(blocks, w).tolist(),
                    pure.seg_ed_to_end(blocks[0], w, len(w)).tolist(),
                    [a.tolist() for a in pure.ones_runs(w, 3)])
    finally:
        del os.environ["CRLDC_NO_NUMBA"]
        importlib.reload(kernels)
    assert active == fallback
