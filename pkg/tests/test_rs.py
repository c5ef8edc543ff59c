"""Reed-Solomon layer: systematic encoding, unique decoding radius,
errors-and-erasures combinations, and decode failure past the radius."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crldc.rs import RSDecodeFailure, rs_decode, rs_encode


def corrupt(msg, positions, rng):
    out = bytearray(msg)
    for p in positions:
        old = out[p]
        while out[p] == old:
            out[p] = rng.randrange(256)
    return bytes(out)


class TestRoundTrip:
    @given(st.binary(min_size=1, max_size=60), st.integers(2, 40))
    @settings(max_examples=100, deadline=None)
    def test_clean(self, data, nsym):
        cw = rs_encode(data, nsym)
        assert len(cw) == len(data) + nsym
        assert bytes(cw[: len(data)]) == data  # systematic
        assert bytes(rs_decode(cw, nsym)) == data

    def test_errors_up_to_half_nsym(self):
        rng = random.Random(0)
        data = bytes(rng.randrange(256) for _ in range(40))
        nsym = 20
        cw = rs_encode(data, nsym)
        for n_err in range(nsym // 2 + 1):
            pos = rng.sample(range(len(cw)), n_err)
            assert bytes(rs_decode(corrupt(cw, pos, rng), nsym)) == data

    def test_erasures_up_to_nsym(self):
        rng = random.Random(1)
        data = bytes(rng.randrange(256) for _ in range(30))
        nsym = 12
        cw = rs_encode(data, nsym)
        for n_era in range(nsym + 1):
            pos = rng.sample(range(len(cw)), n_era)
            bad = corrupt(cw, pos, rng)
            assert bytes(rs_decode(bad, nsym, erase_pos=pos)) == data

    def test_mixed_errors_and_erasures(self):
        # correctable whenever 2*errors + erasures <= nsym
        rng = random.Random(2)
        data = bytes(rng.randrange(256) for _ in range(25))
        nsym = 10
        cw = rs_encode(data, nsym)
        for n_era in range(nsym + 1):
            for n_err in range((nsym - n_era) // 2 + 1):
                pos = rng.sample(range(len(cw)), n_era + n_err)
                bad = corrupt(cw, pos, rng)
                got = rs_decode(bad, nsym, erase_pos=pos[:n_era])
                assert bytes(got) == data, (n_era, n_err)

    def test_failure_past_radius_detected(self):
        rng = random.Random(3)
        data = bytes(rng.randrange(256) for _ in range(20))
        nsym = 8
        cw = rs_encode(data, nsym)
        misdecoded = 0
        for trial in range(50):
            pos = rng.sample(range(len(cw)), nsym)  # 2x the radius
            bad = corrupt(cw, pos, rng)
            try:
                got = bytes(rs_decode(bad, nsym))
            except RSDecodeFailure:
                continue
            if got != data:
                misdecoded += 1
        # past the unique-decoding radius we only require that the
        # decoder never silently *mis*decodes into the wrong codeword
        # while claiming success on a residual-syndrome check
        assert misdecoded == 0

    def test_too_many_erasures_raise(self):
        cw = rs_encode(b"hello", 4)
        with pytest.raises(RSDecodeFailure):
            rs_decode(corrupt(cw, list(range(5)), random.Random(4)), 4,
                      erase_pos=list(range(5)))
