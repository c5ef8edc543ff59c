"""Relaxed locally decodable code for the Hamming channel.

Encoder: split the message into d blocks of r bits, sign each block
together with its index, and protect payload = x_j | sigma_j | pk | j
with the inner code.  Decoder: recover the public key by majority over
mu randomly sampled blocks, decode the block containing the requested
index, and release the bit only if the signature verifies under the
majority key and the *computed* block index (never the parsed one).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .bits import BitString, ReceivedWordOracle
from .errors import (EmptyList, IndexOutOfRange, InfeasibleTarget,
                     LengthMismatch, ParamMismatch)
from .inner_hamming import InnerHammingCode


def index_bits_for(d: int) -> int:
    return max(1, math.ceil(math.log2(d))) if d > 1 else 1


def index_field(j: int, width: int) -> BitString:
    """Block index j (1-based) stored as j-1 in a fixed-width big-endian
    field, so every j in [1, 2^width] fits."""
    return BitString.from_int(j - 1, width)


@dataclass
class HammingParams:
    lam: int
    k: int
    r: int
    pk_len: int
    c: Fraction
    mu: int
    d: int
    idx_bits: int
    payload_len: int
    bl: int
    K: int
    beta_in: Fraction
    rho_in: Fraction
    rho: Fraction
    p: float
    delta: Fraction
    locality_bound: int

    def block_of(self, i: int) -> int:
        return (i - 1) // self.r + 1


def min_mu_for(c: Fraction, target_p: float) -> int:
    """Smallest mu with 1 - exp(-mu (1/2-c)^2 / (2(1-c))) >= target_p."""
    rate = float((Fraction(1, 2) - c) ** 2 / (2 * (1 - c)))
    mu = max(1, math.ceil(math.log(1.0 / (1.0 - target_p)) / rate))
    while 1.0 - math.exp(-mu * rate) < target_p:
        mu += 1
    while mu > 1 and 1.0 - math.exp(-(mu - 1) * rate) >= target_p:
        mu -= 1
    return mu


def compute_hamming_params(lam, k, r, pk_len, c, target_p,
                           rho_in=None) -> HammingParams:
    c = Fraction(c)
    if not 0 < c < Fraction(1, 2):
        raise ParamMismatch("c must lie in (0, 1/2)")
    if not 0 < target_p < 1:
        raise InfeasibleTarget("target_p must lie in (0, 1)")
    if k <= 0 or r <= 0:
        raise ParamMismatch("k and r must be positive")
    d = -(-k // r)
    idx_bits = index_bits_for(d)
    payload_len = 2 * r + pk_len + idx_bits
    inner = InnerHammingCode(payload_len)
    if rho_in is None:
        rho_in = inner.rho_in
    rho_in = Fraction(rho_in)
    bl = inner.codeword_len
    mu = min_mu_for(c, target_p)
    rate = float((Fraction(1, 2) - c) ** 2 / (2 * (1 - c)))
    return HammingParams(
        lam=lam, k=k, r=r, pk_len=pk_len, c=c, mu=mu, d=d,
        idx_bits=idx_bits, payload_len=payload_len, bl=bl, K=d * bl,
        beta_in=inner.beta_in, rho_in=rho_in, rho=c * rho_in,
        p=1.0 - math.exp(-mu * rate), delta=Fraction(1, 2),
        locality_bound=(mu + 1) * bl,
    )


@dataclass
class SignedBlockPayload:
    x_block: BitString
    sigma: BitString
    pk: BitString
    index: int  # 1-based block index

    def serialize(self, idx_bits: int) -> BitString:
        return (self.x_block + self.sigma + self.pk
                + index_field(self.index, idx_bits))

    @classmethod
    def parse(cls, bits: BitString, r: int, pk_len: int, idx_bits: int):
        if len(bits) != 2 * r + pk_len + idx_bits:
            raise LengthMismatch("payload length mismatch")
        x = bits.slice(1, r)
        sigma = bits.slice(r + 1, 2 * r)
        pk = bits.slice(2 * r + 1, 2 * r + pk_len)
        j = bits.slice(2 * r + pk_len + 1, len(bits)).to_int() + 1
        return cls(x_block=x, sigma=sigma, pk=pk, index=j)


@dataclass
class DecodeOutcome:
    value: int | None  # 0, 1, or None for the ⊥ symbol
    queries_used: int
    pk_star: BitString | None
    detail: str = "none"


def majority(values, with_detail: bool = False):
    """Most frequent non-⊥ value (⊥ encoded as None); ties broken by the
    lexicographically smallest modal value; ⊥ wins only when strictly
    most frequent."""
    if not values:
        raise EmptyList("majority over an empty list")
    counts: dict = {}
    bot = 0
    for v in values:
        if v is None:
            bot += 1
        else:
            key = v.to01()
            counts[key] = counts.get(key, 0) + 1
    if not counts:
        result, tie = None, False
    else:
        best = max(counts.values())
        if bot > best:
            result, tie = None, False
        else:
            modal = sorted(key for key, n in counts.items() if n == best)
            result = BitString.from_str(modal[0])
            tie = len(modal) > 1
    return (result, tie) if with_detail else result


def enc_h(x: BitString, params: HammingParams, scheme, rng=None):
    """Returns (codeword, debug).  debug holds the keypair, per-block
    payloads and boundaries for tests and attacks; sk stays out of every
    default serialization path."""
    if len(x) != params.k or params.k <= 0:
        raise ParamMismatch(f"|x|={len(x)} != k={params.k}")
    if scheme.sig_len() != params.r or scheme.pk_len() != params.pk_len:
        raise ParamMismatch("signature scheme lengths disagree with params")
    inner = InnerHammingCode(params.payload_len)
    rng = rng or random.Random()
    keys = scheme.gen(rng)
    padded = x + BitString.zeros(params.d * params.r - params.k)
    blocks = []
    payloads = []
    issued = []
    for j in range(1, params.d + 1):
        xj = padded.slice((j - 1) * params.r + 1, j * params.r)
        msg = xj + index_field(j, params.idx_bits)
        sigma = scheme.sign(keys.sk, msg)
        payload = SignedBlockPayload(xj, sigma, keys.pk, j)
        payloads.append(payload)
        issued.append((msg.to01(), sigma.to01()))
        blocks.append(inner.enc_in(payload.serialize(params.idx_bits)))
    codeword = blocks[0]
    for b in blocks[1:]:
        codeword = codeword + b
    debug = {
        "keys": keys,
        "pk": keys.pk,
        "payloads": payloads,
        "boundaries": [(j - 1) * params.bl + 1 for j in range(1, params.d + 1)],
        "issued": issued,
    }
    return codeword, debug


def _decode_block(oracle, j, params, inner, cache):
    y = oracle.read((j - 1) * params.bl + 1, j * params.bl)
    if cache is not None:
        key = (j, y.array.tobytes())
        hit = cache.get(key)
        if hit is not None:
            return hit
    payload = SignedBlockPayload.parse(
        inner.dec_in(y), params.r, params.pk_len, params.idx_bits)
    if cache is not None:
        cache[key] = payload
    return payload


def dec_h(oracle: ReceivedWordOracle, i: int, params: HammingParams,
          scheme, seed: int = 0, cache=None) -> DecodeOutcome:
    if len(oracle.word) != params.K:
        raise ParamMismatch(f"|word|={len(oracle.word)} != K={params.K}")
    if not 1 <= i <= params.k:
        raise IndexOutOfRange(f"index {i} outside [1, {params.k}]")
    inner = InnerHammingCode(params.payload_len)
    rng = random.Random(seed)
    start = oracle.query_count
    sampled = [rng.randrange(1, params.d + 1) for _ in range(params.mu)]
    pks = [_decode_block(oracle, js, params, inner, cache).pk for js in sampled]
    pk_star = majority(pks)
    j = params.block_of(i)
    payload = _decode_block(oracle, j, params, inner, cache)
    msg = payload.x_block + index_field(j, params.idx_bits)
    if scheme.verify(pk_star, msg, payload.sigma) != 1:
        return DecodeOutcome(None, oracle.query_count - start, pk_star,
                             "verification")
    i_star = i - (j - 1) * params.r
    return DecodeOutcome(payload.x_block[i_star],
                         oracle.query_count - start, pk_star)


def dec_h_strawman(oracle: ReceivedWordOracle, i: int, params: HammingParams,
                   scheme, seed: int = 0, cache=None) -> DecodeOutcome:
    """The broken decoder variant: trusts the public key parsed out of
    the block itself instead of a majority sample.  Shipped only to
    reproduce the key-substitution counterexample."""
    if len(oracle.word) != params.K:
        raise ParamMismatch(f"|word|={len(oracle.word)} != K={params.K}")
    if not 1 <= i <= params.k:
        raise IndexOutOfRange(f"index {i} outside [1, {params.k}]")
    inner = InnerHammingCode(params.payload_len)
    start = oracle.query_count
    j = params.block_of(i)
    payload = _decode_block(oracle, j, params, inner, cache)
    msg = payload.x_block + index_field(j, params.idx_bits)
    if scheme.verify(payload.pk, msg, payload.sigma) != 1:
        return DecodeOutcome(None, oracle.query_count - start, payload.pk,
                             "verification")
    i_star = i - (j - 1) * params.r
    return DecodeOutcome(payload.x_block[i_star],
                         oracle.query_count - start, payload.pk)
