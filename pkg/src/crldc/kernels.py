"""Hot numeric kernels with optional numba acceleration.

Every kernel has a pure-Python/numpy implementation; when numba is
importable and the environment variable ``CRLDC_NO_NUMBA`` is unset, the
same function body is compiled with ``@njit``.  Both paths compute
byte-identical results, which the benchmark script and the test suite
check.
"""

import os

import numpy as np

_BIG = np.int64(1) << 40

NUMBA_ENABLED = False
if not os.environ.get("CRLDC_NO_NUMBA"):
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        pass

if not NUMBA_ENABLED:
    def njit(*args, **kwargs):
        # Transparent fallback decorator: numba disabled or missing.
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def ed_banded(u, v, band):
    """Insertion/deletion edit distance of two uint8 arrays.

    Cells with |i - j| > band are treated as unreachable.  Returns the
    exact distance when it is <= band, otherwise a value > band (callers
    retry with a wider band).
    """
    n = len(u)
    m = len(v)
    if band < abs(n - m):
        return _BIG
    width = 2 * band + 1
    prev = np.full(width, _BIG, dtype=np.int64)
    cur = np.full(width, _BIG, dtype=np.int64)
    # column j of row i lives at offset j - i + band
    prev[band] = 0
    for j in range(1, min(m, band) + 1):
        prev[band + j] = j
    for i in range(1, n + 1):
        for c in range(width):
            cur[c] = _BIG
        jlo = max(0, i - band)
        jhi = min(m, i + band)
        for j in range(jlo, jhi + 1):
            off = j - i + band
            best = _BIG
            if off + 1 < width and prev[off + 1] < best:  # delete u[i-1]
                best = prev[off + 1]
            if best < _BIG:
                best += 1
            if j > 0 and cur[off - 1] + 1 < best:  # insert v[j-1]
                best = cur[off - 1] + 1
            if i > 0 and j > 0 and u[i - 1] == v[j - 1] and prev[off] < best:
                best = prev[off]
            cur[off] = best
        prev, cur = cur, prev
    return prev[m - n + band]


@njit(cache=True)
def decompose_layers(blocks, w):
    """Layered alignment DP for block decomposition.

    blocks: (d, B) uint8 array of clean per-block codewords.
    w: (Kp,) uint8 received word.
    Returns an (d+1, Kp+1) int64 array L where L[j, p] is the minimum
    total raw edit distance of aligning blocks 1..j against the prefix
    w[:p], minimized over all split points.
    """
    d, B = blocks.shape
    Kp = len(w)
    L = np.empty((d + 1, Kp + 1), dtype=np.int64)
    # Zero blocks can only cover the empty prefix.
    L[0, 0] = 0
    for p in range(1, Kp + 1):
        L[0, p] = _BIG
    prev_row = np.empty(Kp + 1, dtype=np.int64)
    cur_row = np.empty(Kp + 1, dtype=np.int64)
    for j in range(1, d + 1):
        # alignment of block j against w with free start cost L[j-1, q];
        # row 0 is closed under insertions so alignments may begin by
        # consuming received characters before the first block character
        prev_row[0] = L[j - 1, 0]
        for p in range(1, Kp + 1):
            t = prev_row[p - 1] + 1
            prev_row[p] = t if t < L[j - 1, p] else L[j - 1, p]
        for bi in range(1, B + 1):
            ch = blocks[j - 1, bi - 1]
            cur_row[0] = prev_row[0] + 1
            for p in range(1, Kp + 1):
                best = prev_row[p] + 1  # delete block char
                t = cur_row[p - 1] + 1  # insert received char
                if t < best:
                    best = t
                if ch == w[p - 1]:
                    t = prev_row[p - 1]
                    if t < best:
                        best = t
                cur_row[p] = best
            prev_row, cur_row = cur_row, prev_row
        for p in range(Kp + 1):
            L[j, p] = prev_row[p]
    return L


@njit(cache=True)
def seg_ed_to_end(block, w, p_end):
    """Raw edit distance of block vs w[q:p_end] for every start q.

    Returns an int64 array E with E[q] = ED(block, w[q:p_end]),
    0 <= q <= p_end.  Used to recover split points from the layer DP.
    """
    B = len(block)
    # align reversed block against reversed w[0:p_end]
    prev = np.empty(p_end + 1, dtype=np.int64)
    cur = np.empty(p_end + 1, dtype=np.int64)
    for t in range(p_end + 1):
        prev[t] = t  # consuming t received chars with zero block chars
    for bi in range(1, B + 1):
        ch = block[B - bi]
        cur[0] = bi
        for t in range(1, p_end + 1):
            best = prev[t] + 1
            c = cur[t - 1] + 1
            if c < best:
                best = c
            if ch == w[p_end - t]:
                c = prev[t - 1]
                if c < best:
                    best = c
            cur[t] = best
        prev, cur = cur, prev
    out = np.empty(p_end + 1, dtype=np.int64)
    for q in range(p_end + 1):
        out[q] = prev[p_end - q]
    return out


@njit(cache=True)
def ones_runs(w, min_len):
    """Start/end indices (half-open, 0-based) of maximal runs of ones
    with length >= min_len."""
    n = len(w)
    starts = np.empty(n, dtype=np.int64)
    ends = np.empty(n, dtype=np.int64)
    cnt = 0
    i = 0
    while i < n:
        if w[i] == 1:
            j = i
            while j < n and w[j] == 1:
                j += 1
            if j - i >= min_len:
                starts[cnt] = i
                ends[cnt] = j
                cnt += 1
            i = j
        else:
            i += 1
    return starts[:cnt], ends[:cnt]
