"""InsDel crLDC: exact parameter identities, block decode, noisy binary
search, the rotation attack, and the decomposition analysis oracles."""

import random
from fractions import Fraction

import numpy as np
import pytest

from crldc.adversaries import random_insdel_channel, rotation_insdel
from crldc.bits import BitString, ReceivedWordOracle, raw_edit_distance
from crldc.errors import InfeasibleTarget, OutOfRange, ParamMismatch
from crldc.insdel import (GAMMA, block_dec, classify_gamma_good,
                          compute_insdel_params, dec_ins,
                          dec_ins_positional, enc_ins, nbs,
                          optimal_block_decomposition)
from crldc.sigscheme import HashModulusScheme
from tests.test_bits import brute_ed

LAM = 64


@pytest.fixture(scope="module")
def setup():
    params = compute_insdel_params(LAM, k=256, r=64)
    scheme = HashModulusScheme(LAM)
    rng = random.Random(0)
    x = BitString.random(params.k, rng)
    codeword, debug = enc_ins(x, params, scheme, rng)
    return params, scheme, x, codeword, debug


class TestParams:
    def test_desk_scale_frozen_values(self):
        p = compute_insdel_params(128, 1024, 128)
        assert (p.d, p.idx_bits, p.tau) == (8, 10, 394)
        assert p.buffer_len == 1
        assert (p.core_len, p.block_len, p.K) == (4000, 4002, 32016)
        assert p.gamma == Fraction(1, 12)
        assert p.rho_sz == Fraction(1, 500)
        assert p.beta_sz == Fraction(197, 2000)
        assert p.alpha == Fraction(1, 394)
        assert p.beta == Fraction(2001, 197)
        assert p.mu == 82
        assert p.q > Fraction(1, 2)
        assert 0 < p.rho < p.rho_sz
        assert p.delta > Fraction(3, 4)

    def test_exact_identities(self):
        p = compute_insdel_params(128, 1024, 128)
        assert p.beta == 2 * p.alpha + 1 / p.beta_sz
        assert p.beta == Fraction(p.block_len, p.tau)
        assert p.delta + 2 * p.beta * p.rho / (p.gamma * p.alpha) == 1
        assert p.q == (1 - p.gamma) * ((p.beta - p.alpha * p.gamma)
                                       / p.beta) * p.delta

    def test_invalid_inputs(self):
        with pytest.raises(ParamMismatch):
            compute_insdel_params(128, 1024, 128, rho_star=Fraction(1, 2))
        with pytest.raises(InfeasibleTarget):
            compute_insdel_params(128, 1024, 128, target_p=0.9)


class TestBlockDec:
    def test_clean_every_position_parses_right_block(self, setup):
        params, scheme, x, codeword, debug = setup
        cache = {}
        oracle = ReceivedWordOracle(codeword)
        rng = random.Random(1)
        for _ in range(60):
            i = rng.randrange(1, len(codeword) + 1)
            payload = block_dec(oracle, i, params, cache=cache)
            assert payload is not None
            j = min(params.d, (i - 1) // params.block_len + 1)
            assert payload.index == j
            assert payload == debug["payloads"][j - 1]

    def test_bounded_reads(self, setup):
        params, scheme, x, codeword, _ = setup
        oracle = ReceivedWordOracle(codeword)
        block_dec(oracle, len(codeword) // 2, params)
        assert oracle.query_count <= params.scan_window()

    def test_out_of_range(self, setup):
        params, scheme, x, codeword, _ = setup
        oracle = ReceivedWordOracle(codeword)
        with pytest.raises(OutOfRange):
            block_dec(oracle, 0, params)

    def test_destroyed_neighborhood_returns_bottom(self, setup):
        params, scheme, x, codeword, _ = setup
        arr = codeword.array.copy()
        # zero out block 2 entirely: positions inside it must give ⊥,
        # not silently decode a neighboring block
        s = params.block_len
        arr[s:2 * s] = 0
        oracle = ReceivedWordOracle(BitString(arr))
        mid = s + params.block_len // 2
        assert block_dec(oracle, mid, params) is None


class TestNbs:
    def test_clean_all_blocks(self, setup):
        params, scheme, x, codeword, debug = setup
        cache = {}
        oracle = ReceivedWordOracle(codeword)
        for j in range(1, params.d + 1):
            payload = nbs(oracle, j, params, seed=j, cache=cache)
            assert payload == debug["payloads"][j - 1]

    def test_rotation_still_finds_blocks(self, setup):
        params, scheme, x, codeword, debug = setup
        bad, _ = rotation_insdel(codeword, params.block_len)
        cache = {}
        oracle = ReceivedWordOracle(bad)
        hits = sum(nbs(oracle, j, params, seed=j, cache=cache)
                   == debug["payloads"][j - 1]
                   for j in range(1, params.d))  # blocks 1..d-1 intact
        assert hits >= params.d - 2


class TestDecoder:
    def test_clean_completeness(self, setup):
        params, scheme, x, codeword, _ = setup
        cache = {}
        oracle = ReceivedWordOracle(codeword)
        rng = random.Random(2)
        for _ in range(25):
            i = rng.randrange(1, params.k + 1)
            out = dec_ins(oracle, i, params, scheme,
                          seed=rng.getrandbits(30), cache=cache)
            assert out.value == x[i]
            assert out.queries_used <= params.locality_bound(len(codeword))

    def test_rotation_defense_vs_positional(self, setup):
        params, scheme, x, codeword, _ = setup
        bad, rec = rotation_insdel(codeword, params.block_len)
        cache = {}
        oracle = ReceivedWordOracle(bad)
        rng = random.Random(3)
        correct = 0
        for _ in range(15):
            i = rng.randrange(1, params.k + 1)
            out = dec_ins(oracle, i, params, scheme,
                          seed=rng.getrandbits(30), cache=cache)
            assert out.value in (x[i], None)
            correct += out.value == x[i]
        assert correct >= 12
        # the positional variant never succeeds on the rotated word
        for _ in range(5):
            i = rng.randrange(1, params.k + 1)
            out = dec_ins_positional(oracle, i, params, scheme,
                                     seed=rng.getrandbits(30))
            assert out.value is None


class TestDecomposition:
    def test_small_case_matches_brute_force(self):
        rng = random.Random(4)
        d, B = 3, 6
        C = BitString.random(d * B, rng)
        arr = list(C.array)
        for _ in range(3):
            arr.insert(rng.randrange(len(arr) + 1), rng.randrange(2))
        Ct = BitString(np.array(arr, dtype=np.uint8))
        decomp = optimal_block_decomposition(C, Ct, d)
        # oracle: enumerate every split of Ct into d segments
        s = C.to01()
        w = Ct.to01()
        blocks = [s[j * B:(j + 1) * B] for j in range(d)]
        best = min(
            sum(brute_ed(blocks[j], w[b[j]:b[j + 1]]) for j in range(d))
            for b in [(0, i, jj, len(w))
                      for i in range(len(w) + 1)
                      for jj in range(i, len(w) + 1)])
        assert decomp.total_raw == best
        assert decomp.intervals[0][0] == 0
        assert decomp.intervals[-1][1] == len(w)
        for (a, b), (a2, _) in zip(decomp.intervals, decomp.intervals[1:]):
            assert b == a2

    def test_per_block_eds_are_exact(self, setup):
        params, scheme, x, codeword, _ = setup
        bad, _ = rotation_insdel(codeword, params.block_len)
        decomp = optimal_block_decomposition(codeword, bad, params.d)
        assert decomp.total_raw == raw_edit_distance(codeword, bad)
        for j, (s, e) in enumerate(decomp.intervals):
            block = codeword.slice(j * params.block_len + 1,
                                   (j + 1) * params.block_len)
            seg = (bad.slice(s + 1, e) if e > s
                   else BitString.zeros(0))
            assert decomp.raw_eds[j] == raw_edit_distance(block, seg)

    def test_gamma_classifier(self, setup):
        params, scheme, x, codeword, _ = setup
        decomp = optimal_block_decomposition(codeword, codeword, params.d)
        rep = classify_gamma_good(decomp, GAMMA)
        assert rep.good_indices == list(range(1, params.d + 1))
        assert rep.bad_fraction == 0
        assert all(n == params.block_len
                   for n in rep.interval_lengths.values())
