"""Inner Hamming-metric block code with declared rate and radius.

Construction: pack the t-bit message into bytes, encode with a
systematic Reed-Solomon code over GF(256) whose total length is
floor(t/2) bytes, then zero-pad the bit stream to exactly 4t bits so
the rate is exactly beta_in = 1/4 for every t.  A flipped bit corrupts
at most one RS symbol, so any pattern of up to floor((n-s)/2) flips is
uniquely decodable; that count over 4t is the declared radius rho_in.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .bits import BitString
from .errors import LengthMismatch, TTooSmall
from .rs import RSDecodeFailure, rs_decode, rs_encode


class InnerHammingCode:
    beta_in = Fraction(1, 4)

    def __init__(self, t: int):
        if t < 6:
            raise TTooSmall("message length must be at least 6 bits")
        if t > 510:
            raise TTooSmall("message length above GF(256) single-block limit")
        self.t = t
        self.data_bytes = -(-t // 8)
        self.total_bytes = t // 2
        self.nsym = self.total_bytes - self.data_bytes
        if self.nsym < 2:
            raise TTooSmall("not enough parity room at this length")
        self.codeword_len = 4 * t
        self.pad_bits = self.codeword_len - 8 * self.total_bytes
        self.rho_in = Fraction(self.nsym // 2, self.codeword_len)

    def enc_in(self, m: BitString) -> BitString:
        if len(m) != self.t:
            raise LengthMismatch(f"|m|={len(m)} != t={self.t}")
        padded = np.zeros(8 * self.data_bytes, dtype=np.uint8)
        padded[: self.t] = m.array
        data = np.packbits(padded).tobytes()
        word = rs_encode(data, self.nsym)
        bits = np.unpackbits(np.frombuffer(bytes(word), dtype=np.uint8))
        out = np.zeros(self.codeword_len, dtype=np.uint8)
        out[: 8 * self.total_bytes] = bits
        return BitString(out)

    def dec_in(self, y: BitString) -> BitString:
        """Nearest-codeword decode within radius; beyond the radius the
        output is best-effort but deterministic (callers authenticate
        via signatures, never via decoder trust)."""
        if len(y) != self.codeword_len:
            raise LengthMismatch(f"|y|={len(y)} != {self.codeword_len}")
        word = np.packbits(y.array[: 8 * self.total_bytes]).tobytes()
        try:
            data = rs_decode(bytearray(word), self.nsym)
        except RSDecodeFailure:
            data = bytearray(word[: self.data_bytes])
        bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))
        return BitString(bits[: self.t])
