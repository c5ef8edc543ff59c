"""Synchronizable inner code for insertion/deletion channels.

Interface: constant-rate encoding, unique decoding up to a declared
normalized edit distance rho_sz, and a window weight-density guarantee
(every window of length 2*ceil(log2 t) has fractional weight >= 2/5)
so the all-zero buffers around blocks stay distinguishable.

Construction: the t-bit message is packed into bytes and protected by a
systematic Reed-Solomon errors-and-erasures code over GF(256) (chunked
when longer than one RS block).  Every outer symbol is shipped in a
40-bit frame:

    11111111 | manchester(global index mod 256) | manchester(data byte)

The Manchester mapping (0 -> 01, 1 -> 10) never produces three equal
bits in a row, so a run of >= 7 ones can only be a marker and the
decoder can resynchronize after arbitrary insertions and deletions.
Frames whose payload is not valid Manchester become erasures; frames
lost entirely become erasures; surviving garbled frames become symbol
errors that the RS layer corrects.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .bits import BitString
from .errors import LengthMismatch, TTooSmall
from .kernels import ones_runs
from .rs import RSDecodeFailure, rs_decode, rs_encode

MARKER_LEN = 8
FRAME_BODY = 32
FRAME_LEN = MARKER_LEN + FRAME_BODY
SYNC_MIN_RUN = 7
_MAX_CHUNK_DATA = 127

# Manchester lookup: byte value -> 16-bit pattern
_MANCH = np.zeros((256, 16), dtype=np.uint8)
for _v in range(256):
    for _b in range(8):
        bit = (_v >> (7 - _b)) & 1
        _MANCH[_v, 2 * _b] = bit
        _MANCH[_v, 2 * _b + 1] = 1 - bit


def _chunk_sizes(s: int):
    """Split s data bytes into RS chunks of at most _MAX_CHUNK_DATA."""
    nchunks = -(-s // _MAX_CHUNK_DATA)
    base = s // nchunks
    rem = s % nchunks
    return [base + (1 if i < rem else 0) for i in range(nchunks)]


class InnerInsDelCode:
    def __init__(self, t: int):
        if t < 4:
            raise TTooSmall("message length must be at least 4 bits")
        self.t = t
        self.data_bytes = -(-t // 8)
        self.chunks = []  # list of (s_c, n_c)
        for s_c in _chunk_sizes(self.data_bytes):
            n_c = max(2 * s_c, s_c + 4)
            self.chunks.append((s_c, n_c))
        self.n_out = sum(n for _, n in self.chunks)
        self.codeword_len = FRAME_LEN * self.n_out
        self.beta_sz = Fraction(t, self.codeword_len)
        min_nsym = min(n - s for s, n in self.chunks)
        self.edit_budget = max(1, min_nsym // 3)
        self.rho_sz = Fraction(self.edit_budget, 2 * self.codeword_len)

    # -- encoding -----------------------------------------------------

    def _symbols(self, m: BitString) -> bytearray:
        padded = np.zeros(8 * self.data_bytes, dtype=np.uint8)
        padded[: self.t] = m.array
        data = np.packbits(padded).tobytes()
        out = bytearray()
        off = 0
        for s_c, n_c in self.chunks:
            out += rs_encode(data[off:off + s_c], n_c - s_c)
            off += s_c
        return out

    def sz_enc(self, m: BitString) -> BitString:
        if len(m) != self.t:
            raise LengthMismatch(f"|m|={len(m)} != t={self.t}")
        symbols = self._symbols(m)
        out = np.empty(self.codeword_len, dtype=np.uint8)
        pos = 0
        for g, byte in enumerate(symbols):
            out[pos:pos + MARKER_LEN] = 1
            pos += MARKER_LEN
            out[pos:pos + 16] = _MANCH[g % 256]
            pos += 16
            out[pos:pos + 16] = _MANCH[byte]
            pos += 16
        return BitString(out)

    # -- frame scanning ----------------------------------------------

    @staticmethod
    def _demanchester(bits: np.ndarray):
        """16 bits -> byte value, or None if not valid Manchester."""
        first = bits[0::2]
        if np.any(first == bits[1::2]):
            return None
        return int(np.packbits(first)[0])

    @classmethod
    def scan_frames(cls, arr: np.ndarray):
        """All parseable frames in a bit array.

        Returns a list of (run_start, body_start, idx_byte, data_byte),
        0-based; body_start is the end of the sync run of ones.  Frames
        with invalid Manchester payloads are dropped.
        """
        frames = []
        n = len(arr)
        starts, ends = ones_runs(np.ascontiguousarray(arr), SYNC_MIN_RUN)
        for rs, re in zip(starts, ends):
            # a Manchester body whose first bit is 1 extends the marker
            # run by exactly one bit, so the true body start is re or
            # re - 1; try both and keep the first that parses
            for b0 in (int(re), int(re) - 1):
                if b0 - rs < SYNC_MIN_RUN or b0 + FRAME_BODY > n:
                    continue
                body = arr[b0:b0 + FRAME_BODY]
                idx = cls._demanchester(body[:16])
                data = cls._demanchester(body[16:])
                if idx is not None and data is not None:
                    frames.append((int(rs), b0, idx, data))
                    break
        return frames

    def decode_symbols(self, placed: dict) -> BitString | None:
        """RS-decode a {global_index: byte_or_None} map; None means a
        detected conflict (treated as erasure).  Missing entries are
        erasures too.  Returns the message or None on failure."""
        word = bytearray(self.n_out)
        known = [False] * self.n_out
        for g, byte in placed.items():
            if 0 <= g < self.n_out and byte is not None:
                word[g] = byte
                known[g] = True
        data = bytearray()
        off = 0
        for s_c, n_c in self.chunks:
            chunk = word[off:off + n_c]
            erase = [i for i in range(n_c) if not known[off + i]]
            try:
                data += rs_decode(chunk, n_c - s_c, erase)
            except RSDecodeFailure:
                return None
            off += n_c
        bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))
        return BitString(bits[: self.t])

    # -- decoding -----------------------------------------------------

    def sz_dec(self, y: BitString) -> BitString | None:
        """Decode an arbitrary-length received word; None plays the role
        of the ⊥ output."""
        arr = y.array
        frames = self.scan_frames(arr)
        if not frames:
            return None
        placed: dict = {}
        for _, pos, idx, data in frames:
            # infer the global symbol index from the frame position,
            # disambiguated by the mod-256 index byte
            g_pos = round((pos - MARKER_LEN) / FRAME_LEN)
            g = idx + 256 * round((g_pos - idx) / 256)
            if g < 0 or g >= self.n_out:
                continue
            if g in placed and placed[g] != data:
                placed[g] = None  # conflicting duplicates -> erasure
            else:
                placed.setdefault(g, data)
        return self.decode_symbols(placed)
