"""Budget-enforced corruption channels and the named attacks.

Every channel returns (corrupted_word, AttackRecord) and asserts its
declared budget post hoc with an exact distance computation (the DP
edit distance for InsDel attacks), raising BudgetExceeded on violation.
Attacks may receive encoder debug info (block boundaries, payloads) to
model a computationally bounded adversary with full codeword knowledge,
but never the signing key.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import (BitString, DistanceReport, edit_distance,
                   hamming_distance)
from .errors import BudgetExceeded, ParamMismatch
from .hamming import HammingParams, SignedBlockPayload, index_field
from .inner_hamming import InnerHammingCode
from .insdel import InsDelParams


@dataclass
class AttackRecord:
    name: str
    metric: str  # "HAM" or "ED"
    budget: Fraction
    distance: DistanceReport
    info: dict


def _check(name, metric, budget, distance: DistanceReport) -> None:
    if distance.normalized > budget:
        raise BudgetExceeded(
            f"{name}: {metric} distance {distance.normalized} > budget {budget}")


def random_hamming_channel(C: BitString, rho, seed: int = 0):
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise ParamMismatch("rho must lie in [0, 1]")
    rng = random.Random(seed)
    flips = math.floor(rho * len(C))
    pos = rng.sample(range(len(C)), flips)
    arr = C.array.copy()
    arr[pos] ^= 1
    out = BitString(arr)
    dist = hamming_distance(C, out)
    _check("random_hamming_channel", "HAM", rho, dist)
    return out, AttackRecord("random_hamming_channel", "HAM", rho, dist,
                             {"flips": sorted(pos)})


def worst_block_hamming(C: BitString, rho, block_len: int, seed: int = 0,
                        rho_in=None):
    """Spend the Hamming budget adversarially: push whole blocks just
    past the inner radius, then dump the remainder into one more block
    while keeping it inside the radius."""
    rho = Fraction(rho)
    if rho_in is None:
        raise ParamMismatch("worst_block_hamming needs the inner radius rho_in")
    rho_in = Fraction(rho_in)
    d = len(C) // block_len
    budget_raw = math.floor(rho * len(C))
    per_block = math.floor(rho_in * block_len) + 1
    n_destroy = budget_raw // per_block
    if n_destroy >= d / 2:
        raise BudgetExceeded("budget would destroy half the blocks")
    rng = random.Random(seed)
    order = rng.sample(range(d), d)
    destroyed = sorted(order[:n_destroy])
    arr = C.array.copy()
    spent = 0
    n_bytes = block_len // 8
    for j in destroyed:
        # one flip per byte of the inner codeword: per_block distinct
        # byte errors exceed the RS radius, and byte 0 (a data byte)
        # ensures the raw-data fallback is garbled too
        byte_idx = [0] + rng.sample(range(1, n_bytes), per_block - 1)
        for bidx in byte_idx:
            arr[j * block_len + 8 * bidx + rng.randrange(8)] ^= 1
        spent += per_block
    leftover = min(budget_raw - spent, math.floor(rho_in * block_len))
    if leftover > 0 and n_destroy < d:
        j = order[n_destroy]
        pos = rng.sample(range(j * block_len, (j + 1) * block_len), leftover)
        arr[pos] ^= 1
    out = BitString(arr)
    dist = hamming_distance(C, out)
    _check("worst_block_hamming", "HAM", rho, dist)
    return out, AttackRecord("worst_block_hamming", "HAM", rho, dist,
                             {"destroyed_blocks": [j + 1 for j in destroyed]})


def strawman_key_substitution(C: BitString, debug: dict,
                              params: HammingParams, scheme,
                              seed: int = 0, enforce_code_budget: bool = False):
    """Re-sign the complement of block 1 under a fresh adversarial key.

    The attack's own budget is one block, bl/K; with
    enforce_code_budget the call refuses parameterizations where one
    block does not fit the code's budget rho."""
    budget = Fraction(params.bl, params.K)
    if enforce_code_budget and budget > params.rho:
        raise BudgetExceeded(f"one block ({budget}) exceeds rho={params.rho}")
    rng = random.Random(seed)
    adv_keys = scheme.gen(rng)
    x1 = debug["payloads"][0].x_block
    x_prime = x1 ^ BitString.ones(len(x1))
    msg = x_prime + index_field(1, params.idx_bits)
    sigma = scheme.sign(adv_keys.sk, msg)
    payload = SignedBlockPayload(x_prime, sigma, adv_keys.pk, 1)
    inner = InnerHammingCode(params.payload_len)
    block = inner.enc_in(payload.serialize(params.idx_bits))
    arr = C.array.copy()
    arr[: params.bl] = block.array
    out = BitString(arr)
    dist = hamming_distance(C, out)
    _check("strawman_key_substitution", "HAM", budget, dist)
    return out, AttackRecord("strawman_key_substitution", "HAM", budget, dist,
                             {"adv_pk": adv_keys.pk.to01(),
                              "x_prime": x_prime.to01()})


def swap_blocks_hamming(C: BitString, j1: int, j2: int,
                        params: HammingParams, seed: int = 0):
    """Exchange the inner codewords of two blocks; defeated by the
    decoder's computed-index verification rule."""
    if j1 == j2 or not (1 <= j1 <= params.d and 1 <= j2 <= params.d):
        raise ParamMismatch("swap needs two distinct blocks in [1, d]")
    budget = Fraction(2 * params.bl, params.K)
    arr = C.array.copy()
    s1, s2 = (j1 - 1) * params.bl, (j2 - 1) * params.bl
    b1 = arr[s1:s1 + params.bl].copy()
    arr[s1:s1 + params.bl] = arr[s2:s2 + params.bl]
    arr[s2:s2 + params.bl] = b1
    out = BitString(arr)
    dist = hamming_distance(C, out)
    _check("swap_blocks_hamming", "HAM", budget, dist)
    return out, AttackRecord("swap_blocks_hamming", "HAM", budget, dist,
                             {"j1": j1, "j2": j2})


def rotation_insdel(C: BitString, block_len: int, seed: int = 0,
                    code_rho=None):
    """Wrap the two halves of the last block around the codeword:
    C~ = C1(d) | C(1) | ... | C(d-1) | C0(d)."""
    if len(C) % block_len != 0:
        raise ParamMismatch("|C| must be a multiple of block_len")
    arr = C.array
    last = arr[-block_len:]
    half = block_len // 2
    out = BitString(np.concatenate([last[half:], arr[:-block_len],
                                    last[:half]]))
    budget = Fraction(2 * block_len, 2 * len(C))
    dist = edit_distance(C, out)
    _check("rotation_insdel", "ED", budget, dist)
    if code_rho is not None and budget <= Fraction(code_rho):
        _check("rotation_insdel", "ED", Fraction(code_rho), dist)
    return out, AttackRecord("rotation_insdel", "ED", budget, dist,
                             {"block_len": block_len})


def random_insdel_channel(C: BitString, rho, seed: int = 0):
    rho = Fraction(rho)
    if rho < 0:
        raise ParamMismatch("rho must be non-negative")
    rng = random.Random(seed)
    raw_budget = math.floor(rho * 2 * len(C))
    bits = list(C.array)
    script = []
    for _ in range(raw_budget):
        if bits and rng.random() < 0.5:
            p = rng.randrange(len(bits))
            del bits[p]
            script.append(("del", p))
        else:
            p = rng.randrange(len(bits) + 1)
            bits.insert(p, rng.randrange(2))
            script.append(("ins", p))
    out = BitString(np.array(bits, dtype=np.uint8)) if bits else BitString([])
    dist = edit_distance(C, out)
    _check("random_insdel_channel", "ED", rho, dist)
    return out, AttackRecord("random_insdel_channel", "ED", rho, dist,
                             {"script_len": raw_budget})


HAMMING_ATTACKS = {
    "random": random_hamming_channel,
    "worst-block": worst_block_hamming,
    "strawman": strawman_key_substitution,
    "swap": swap_blocks_hamming,
}

INSDEL_ATTACKS = {
    "random": random_insdel_channel,
    "rotation": rotation_insdel,
}
