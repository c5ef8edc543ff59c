"""Relaxed locally decodable code for insertion/deletion channels.

Encoder: per block, sign x_j | j, build payload x_j | sigma_j | pk | j,
protect it with the synchronizable inner code and wrap the result in
all-zero buffers.  Decoder: recover pk by majority over block decodes
at mu random positions, retrieve the target block with a noisy binary
search keyed on the block index parsed out of probed blocks, and verify
the signature under the majority key and the computed index.

Also hosts the analysis oracles: the exact block-decomposition dynamic
program and the gamma-good classifier used by the test harness.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import BitString, ReceivedWordOracle
from .errors import (IndexOutOfRange, InfeasibleTarget, OutOfRange,
                     ParamMismatch)
from .hamming import DecodeOutcome, SignedBlockPayload, index_field, majority
from .inner_insdel import (FRAME_BODY, FRAME_LEN, MARKER_LEN, SYNC_MIN_RUN,
                           InnerInsDelCode)
from .kernels import decompose_layers, seg_ed_to_end

GAMMA = Fraction(1, 12)
SCAN_SLACK = 1.5  # extra scan radius on top of (beta + alpha*gamma) * tau
NBS_RETRY_CAP = 3
NBS_ITER_CAP = 64
QUERY_CONSTANT_C1 = 8  # declared constant for the locality bound
# Largest distance (in bits) between a queried position and the nearest
# detected block core that block_dec will still bridge; positions
# farther from any core (e.g. inside an erased block) return ⊥.
CORE_ATTACH_SLACK = 2 * FRAME_LEN


@dataclass
class InsDelParams:
    lam: int
    k: int
    r: int
    pk_len: int
    mu: int
    gamma: Fraction
    rho_sz: Fraction
    beta_sz: Fraction
    alpha_raw: Fraction
    alpha: Fraction
    beta: Fraction
    rho_star: Fraction
    rho: Fraction
    delta: Fraction
    q: Fraction
    d: int
    idx_bits: int
    tau: int
    buffer_len: int
    core_len: int
    block_len: int
    K: int

    def block_of(self, i: int) -> int:
        return (i - 1) // self.r + 1

    def scan_window(self) -> int:
        """Total bits block_dec may read per call."""
        return math.ceil(float((self.beta + self.alpha * self.gamma)
                               * self.tau) * (1 + SCAN_SLACK))

    def locality_bound(self, k_prime: int) -> int:
        lg = math.ceil(math.log2(max(2, k_prime)))
        return QUERY_CONSTANT_C1 * (lg ** 3 + self.mu) * (
            self.r + math.ceil(math.log2(max(2, self.k))))


def compute_insdel_params(lam, k, r, rho_sz=None, beta_sz=None,
                          rho_star=Fraction(1, 4),
                          target_p=2 / 3) -> InsDelParams:
    rho_star = Fraction(rho_star)
    if not 0 < rho_star < Fraction(1, 3):
        raise ParamMismatch("rho_star must lie in (0, 1/3)")
    if k <= 0 or r <= 0:
        raise ParamMismatch("k and r must be positive")
    d = -(-k // r)
    idx_bits = max(1, math.ceil(math.log2(k))) if k > 1 else 1
    tau = 3 * r + idx_bits
    if rho_sz is None or beta_sz is None:
        inner = InnerInsDelCode(tau)
        if rho_sz is None:
            rho_sz = inner.rho_sz
        if beta_sz is None:
            beta_sz = inner.beta_sz
    rho_sz = Fraction(rho_sz)
    beta_sz = Fraction(beta_sz)
    if not 0 < rho_sz < 1 or not 0 < beta_sz <= 1:
        raise ParamMismatch("rho_sz and beta_sz must be constants in (0,1)")
    core_len = tau / beta_sz
    if core_len.denominator != 1:
        raise ParamMismatch("tau / beta_sz must be integral")
    core_len = int(core_len)
    gamma = GAMMA
    alpha_raw = 2 * gamma * rho_sz / (gamma + 6)  # == (2/73) * rho_sz
    buffer_len = max(1, math.ceil(alpha_raw * tau))
    # realized buffer fraction: keeps beta = 2*alpha + 1/beta_sz exact
    # and equal to block_len / tau after integer rounding
    alpha = Fraction(buffer_len, tau)
    beta = 2 * alpha + 1 / beta_sz
    block_len = 2 * buffer_len + core_len
    assert beta == Fraction(block_len, tau)
    w_ratio = beta / (2 * (1 - gamma) * (beta - alpha * gamma))
    if w_ratio >= 1:
        raise ParamMismatch("no positive corruption budget at these constants")
    # strict-inequality margin of 1/2: rho must sit strictly below the
    # closed-form bound for the sampling success rate to clear 1/2
    rho = (gamma * alpha / (2 * beta)) * (1 - w_ratio) * Fraction(1, 2)
    delta = 1 - 2 * beta * rho / (gamma * alpha)
    q = (1 - gamma) * ((beta - alpha * gamma) / beta) * delta
    if q <= Fraction(1, 2):
        raise InfeasibleTarget("pk-sample success bound does not clear 1/2")
    if not 0 < target_p < 1 - float(rho_star):
        raise InfeasibleTarget("target_p must lie in (0, 1 - rho_star)")
    rate = float((q - Fraction(1, 2)) ** 2 / (2 * q))
    budget = (1 - float(rho_star)) - target_p
    mu = max(1, math.ceil(math.log(1.0 / budget) / rate))
    while 1 - float(rho_star) - math.exp(-mu * rate) < target_p:
        mu += 1
    while mu > 1 and 1 - float(rho_star) - math.exp(-(mu - 1) * rate) >= target_p:
        mu -= 1
    return InsDelParams(
        lam=lam, k=k, r=r, pk_len=r, mu=mu, gamma=gamma, rho_sz=rho_sz,
        beta_sz=beta_sz, alpha_raw=alpha_raw, alpha=alpha, beta=beta,
        rho_star=rho_star, rho=rho, delta=delta, q=q, d=d,
        idx_bits=idx_bits, tau=tau, buffer_len=buffer_len,
        core_len=core_len, block_len=block_len, K=d * block_len,
    )


def _inner_for(params: InsDelParams) -> InnerInsDelCode:
    inner = InnerInsDelCode(params.tau)
    if inner.codeword_len != params.core_len:
        raise ParamMismatch("params beta_sz disagrees with the inner code")
    if inner.n_out > 256:
        raise ParamMismatch("inner code exceeds one-byte frame indexing")
    return inner


def enc_ins(x: BitString, params: InsDelParams, scheme, rng=None):
    if len(x) != params.k:
        raise ParamMismatch(f"|x|={len(x)} != k={params.k}")
    if scheme.sig_len() != params.r or scheme.pk_len() != params.pk_len:
        raise ParamMismatch("signature scheme lengths disagree with params")
    inner = _inner_for(params)
    rng = rng or random.Random()
    keys = scheme.gen(rng)
    padded = x + BitString.zeros(params.d * params.r - params.k)
    buf = BitString.zeros(params.buffer_len)
    pieces = []
    payloads = []
    issued = []
    for j in range(1, params.d + 1):
        xj = padded.slice((j - 1) * params.r + 1, j * params.r)
        msg = xj + index_field(j, params.idx_bits)
        sigma = scheme.sign(keys.sk, msg)
        payload = SignedBlockPayload(xj, sigma, keys.pk, j)
        payloads.append(payload)
        issued.append((msg.to01(), sigma.to01()))
        core = inner.sz_enc(payload.serialize(params.idx_bits))
        pieces.append(buf + core + buf)
    codeword = pieces[0]
    for b in pieces[1:]:
        codeword = codeword + b
    debug = {
        "keys": keys,
        "pk": keys.pk,
        "payloads": payloads,
        "boundaries": [(j - 1) * params.block_len + 1
                       for j in range(1, params.d + 1)],
        "issued": issued,
    }
    return codeword, debug


def _window_frames(word: BitString, window: BitString, a: int, b: int,
                   inner: InnerInsDelCode, cache):
    """Frames visible inside the 1-indexed window [a, b].

    With a cache, the whole word is scanned once and the result is
    filtered down to exactly the frames a scan of the window alone
    would find: the sync run must show at least SYNC_MIN_RUN ones
    inside the window and the 32-bit body must lie inside it too.
    Without a cache the window is scanned directly; both paths agree.
    """
    if cache is None:
        base = a - 1
        raw = [(rs + base, re + base, idx, data)
               for rs, re, idx, data in inner.scan_frames(window.array)]
    else:
        key = ("frames", word.digest())
        hit = cache.get(key)
        if hit is None:
            scanned = inner.scan_frames(word.array)
            hit = (np.array([f[0] for f in scanned], dtype=np.int64),
                   np.array([f[1] for f in scanned], dtype=np.int64),
                   scanned)
            cache[key] = hit
        f0, f1, scanned = hit
        mask = ((f1 + FRAME_BODY <= b)
                & (f1 - np.maximum(f0, a - 1) >= SYNC_MIN_RUN))
        raw = [scanned[t] for t in np.nonzero(mask)[0]]
    frames = []
    for _, body_start, idx, data in raw:
        if idx < inner.n_out:
            start = body_start - MARKER_LEN - FRAME_LEN * idx
            frames.append((start, body_start, idx, data))
    frames.sort()
    return frames


def block_dec(oracle: ReceivedWordOracle, i: int, params: InsDelParams,
              seed: int = 0, cache=None):
    """Decode the block enclosing position i of the received word.

    Reads a bounded window around i, resynchronizes on frame markers,
    clusters frames into block cores by their implied core start, and
    errors-and-erasures decodes the core nearest to i.  Returns the
    parsed SignedBlockPayload or None (the ⊥ output).
    """
    k_prime = len(oracle.word)
    if not 1 <= i <= k_prime:
        raise OutOfRange(f"position {i} outside [1, {k_prime}]")
    inner = _inner_for(params)
    half = params.scan_window() // 2
    a = max(1, i - half)
    b = min(k_prime, i + half - 1)
    window = oracle.read(a, b)
    cache_key = None
    if cache is not None:
        cache_key = ("bd", oracle.word.digest(), i)
        if cache_key in cache:
            return cache[cache_key]
    frames = _window_frames(oracle.word, window, a, b, inner, cache)
    # cluster frames whose implied core starts agree to within a gap
    # far smaller than a block length
    clusters = []
    gap = 5 * FRAME_LEN
    for f in frames:
        if clusters and f[0] - clusters[-1][-1][0] <= gap:
            clusters[-1].append(f)
        else:
            clusters.append([f])
    target = i - 1  # 0-based query position
    best = None
    best_dist = None
    for cl in clusters:
        start = int(np.median([f[0] for f in cl]))
        end = start + inner.codeword_len
        if start <= target < end:
            dist = 0
        else:
            dist = start - target if target < start else target - end + 1
        if best_dist is None or dist < best_dist:
            best, best_dist = cl, dist
    result = None
    if best is not None and best_dist <= params.buffer_len + CORE_ATTACH_SLACK:
        placed: dict = {}
        for _, _, idx, data in best:
            if idx in placed and placed[idx] != data:
                placed[idx] = None
            else:
                placed.setdefault(idx, data)
        if cache is not None:
            rs_key = ("rs", tuple(sorted(placed.items(),
                                         key=lambda kv: kv[0])))
            if rs_key not in cache:
                cache[rs_key] = inner.decode_symbols(placed)
            bits = cache[rs_key]
        else:
            bits = inner.decode_symbols(placed)
        if bits is not None:
            result = SignedBlockPayload.parse(bits, params.r, params.pk_len,
                                              params.idx_bits)
    if cache is not None:
        cache[cache_key] = result
    return result


def nbs(oracle: ReceivedWordOracle, j: int, params: InsDelParams,
        seed: int = 0, cache=None):
    """Noisy binary search for the payload of block j.

    Runs Theta(log K') independent randomized binary searches over
    positions, probing a random point in the middle third each step and
    steering by the block index parsed from the probe; returns the
    plurality candidate if its parsed index matches j, else None.
    """
    k_prime = len(oracle.word)
    if not 1 <= j <= params.d:
        raise OutOfRange(f"block {j} outside [1, {params.d}]")
    rng = random.Random(seed)
    repeats = max(1, math.ceil(math.log2(max(2, k_prime))))
    candidates = []
    for _ in range(repeats):
        lo, hi = 1, k_prime
        found = None
        for _ in range(NBS_ITER_CAP):
            length = hi - lo + 1
            if length > 3:
                p_lo = lo + length // 3
                p_hi = hi - length // 3
            else:
                p_lo, p_hi = lo, hi
            payload = None
            for _ in range(1 + NBS_RETRY_CAP):
                p = rng.randrange(p_lo, p_hi + 1)
                payload = block_dec(oracle, p, params, cache=cache)
                if payload is not None:
                    break
            if payload is None:
                break  # persistent ⊥ region; abandon this search
            jp = payload.index
            if jp == j:
                found = payload
                break
            if not 1 <= jp <= params.d:
                break
            if jp < j:
                lo = min(p + 1, hi)
            else:
                hi = max(p - 1, lo)
        candidates.append(found)
    winner = majority([c.serialize(params.idx_bits) if c is not None else None
                       for c in candidates])
    if winner is None:
        return None
    payload = SignedBlockPayload.parse(winner, params.r, params.pk_len,
                                       params.idx_bits)
    return payload if payload.index == j else None


def dec_ins(oracle: ReceivedWordOracle, i: int, params: InsDelParams,
            scheme, seed: int = 0, cache=None) -> DecodeOutcome:
    if not 1 <= i <= params.k:
        raise IndexOutOfRange(f"index {i} outside [1, {params.k}]")
    k_prime = len(oracle.word)
    rng = random.Random(seed)
    start = oracle.query_count
    pks = []
    for _ in range(params.mu):
        pos = rng.randrange(1, k_prime + 1)
        payload = block_dec(oracle, pos, params, cache=cache)
        pks.append(payload.pk if payload is not None else None)
    pk_star = majority(pks)
    j = params.block_of(i)
    payload = nbs(oracle, j, params, seed=rng.getrandbits(62), cache=cache)
    if pk_star is None or payload is None:
        return DecodeOutcome(None, oracle.query_count - start, pk_star,
                             "missing pk or block")
    msg = payload.x_block + index_field(j, params.idx_bits)
    if scheme.verify(pk_star, msg, payload.sigma) != 1:
        return DecodeOutcome(None, oracle.query_count - start, pk_star,
                             "verification")
    i_star = i - (j - 1) * params.r
    return DecodeOutcome(payload.x_block[i_star],
                         oracle.query_count - start, pk_star)


def _positional_payload(oracle, j, params, inner, cache=None):
    a = (j - 1) * params.block_len + params.buffer_len + 1
    b = a + params.core_len - 1
    if b > len(oracle.word):
        return None
    y = oracle.read(a, b)
    if cache is not None:
        key = ("pos", oracle.word.digest(), j)
        if key in cache:
            return cache[key]
    bits = inner.sz_dec(y)
    payload = None
    if bits is not None:
        payload = SignedBlockPayload.parse(bits, params.r, params.pk_len,
                                           params.idx_bits)
    if cache is not None:
        cache[key] = payload
    return payload


def dec_ins_positional(oracle: ReceivedWordOracle, i: int,
                       params: InsDelParams, scheme,
                       seed: int = 0, cache=None) -> DecodeOutcome:
    """Naive decoder variant reading block j at its uncorrupted offsets;
    shipped only to demonstrate why the noisy binary search is needed."""
    if not 1 <= i <= params.k:
        raise IndexOutOfRange(f"index {i} outside [1, {params.k}]")
    inner = _inner_for(params)
    rng = random.Random(seed)
    start = oracle.query_count
    pks = []
    for _ in range(params.mu):
        pos = rng.randrange(1, len(oracle.word) + 1)
        jp = min(params.d, (pos - 1) // params.block_len + 1)
        payload = _positional_payload(oracle, jp, params, inner, cache)
        pks.append(payload.pk if payload is not None else None)
    pk_star = majority(pks)
    j = params.block_of(i)
    payload = _positional_payload(oracle, j, params, inner, cache)
    if pk_star is None or payload is None:
        return DecodeOutcome(None, oracle.query_count - start, pk_star,
                             "missing pk or block")
    msg = payload.x_block + index_field(j, params.idx_bits)
    if scheme.verify(pk_star, msg, payload.sigma) != 1:
        return DecodeOutcome(None, oracle.query_count - start, pk_star,
                             "verification")
    i_star = i - (j - 1) * params.r
    return DecodeOutcome(payload.x_block[i_star],
                         oracle.query_count - start, pk_star)


# -- analysis oracles ------------------------------------------------

@dataclass
class BlockDecomposition:
    intervals: list  # d half-open (start, end) pairs, 0-based, partition [0, K')
    raw_eds: list
    per_block_ed: list  # normalized per block: raw / (2 max(len, block_len))
    total_raw: int


@dataclass
class GammaGoodReport:
    good_indices: list
    bad_fraction: Fraction
    interval_lengths: dict  # good block -> |phi^{-1}(j)|


def optimal_block_decomposition(C: BitString, C_tilde: BitString,
                                d: int) -> BlockDecomposition:
    if len(C) % d != 0:
        raise ParamMismatch("|C| must be a multiple of the block count")
    block_len = len(C) // d
    blocks = C.array.reshape(d, block_len)
    w = C_tilde.array
    layers = decompose_layers(blocks, w)
    k_prime = len(w)
    bounds = [0] * (d + 1)
    bounds[d] = k_prime
    p = k_prime
    for j in range(d, 0, -1):
        seg = seg_ed_to_end(blocks[j - 1], w, p)
        target = layers[j, p]
        q_best = None
        for q in range(p + 1):
            if layers[j - 1, q] + seg[q] == target:
                q_best = q
                break
        assert q_best is not None
        bounds[j - 1] = q_best
        p = q_best
    assert bounds[0] == 0
    intervals = [(bounds[j], bounds[j + 1]) for j in range(d)]
    raw_eds = []
    per_block = []
    total = 0
    for j, (s, e) in enumerate(intervals):
        seg = seg_ed_to_end(blocks[j], w, e)
        raw = int(seg[s])
        raw_eds.append(raw)
        denom = 2 * max(e - s, block_len)
        per_block.append(Fraction(raw, denom) if denom else Fraction(0))
        total += raw
    assert total == int(layers[d, k_prime])
    return BlockDecomposition(intervals=intervals, raw_eds=raw_eds,
                              per_block_ed=per_block, total_raw=total)


def classify_gamma_good(decomp: BlockDecomposition,
                        gamma: Fraction = GAMMA) -> GammaGoodReport:
    good = [j + 1 for j, ed in enumerate(decomp.per_block_ed) if ed <= gamma]
    d = len(decomp.per_block_ed)
    lengths = {j: decomp.intervals[j - 1][1] - decomp.intervals[j - 1][0]
               for j in good}
    return GammaGoodReport(good_indices=good,
                           bad_fraction=Fraction(d - len(good), d),
                           interval_lengths=lengths)
