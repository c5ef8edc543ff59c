"""Statistical estimators for the local-decoding guarantees.

Two predicates are estimated over a fixed (possibly corrupted) received
word:

* Fool: some index i where Pr[Dec(i) in {x_i, ⊥}] < p, i.e. the decoder
  can be made to output a *wrong bit* too often.
* Limit: the set Good = {i : Pr[Dec(i) = x_i] > 2/3} has fewer than
  delta*k elements.

Verdicts are conservative: a probability claim only counts when the
corresponding 99% Wilson score bound clears the threshold.  The
estimators work purely from the received word, the original message and
the public verification interface; they never construct or read a
signing key.
"""

from __future__ import annotations

import csv
import json
import math
import random
from dataclasses import asdict, dataclass, field

from .bits import BitString, ReceivedWordOracle
from .errors import ConfigInvalid
from .hamming import HammingParams, dec_h
from .insdel import InsDelParams, dec_ins

Z99 = 2.5758293035489004  # two-sided 99% normal quantile


def wilson_interval(successes: int, trials: int, z: float = Z99):
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ConfigInvalid("wilson interval needs trials > 0")
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(
        phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def _decoder_for(params):
    if isinstance(params, HammingParams):
        return dec_h
    if isinstance(params, InsDelParams):
        return dec_ins
    raise ConfigInvalid(f"unknown params type {type(params).__name__}")


def default_probe_indices(params, seed: int = 0, extra: int = 32):
    """One representative index per block plus ``extra`` random ones."""
    rng = random.Random(seed)
    probes = [(j - 1) * params.r + 1 for j in range(1, params.d + 1)
              if (j - 1) * params.r + 1 <= params.k]
    probes += [rng.randrange(1, params.k + 1) for _ in range(extra)]
    return sorted(set(probes))


@dataclass
class IndexStats:
    index: int
    trials: int
    correct: int
    bottom: int
    wrong: int
    safe_rate: float  # (correct + bottom) / trials
    safe_upper: float  # Wilson upper bound on Pr[Dec in {x_i, ⊥}]
    correct_rate: float
    correct_lower: float  # Wilson lower bound on Pr[Dec = x_i]


@dataclass
class FoolReport:
    p_threshold: float
    trials_per_index: int
    fooled: bool
    witness_index: int | None
    per_index: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


@dataclass
class LimitReport:
    delta: float
    k: int
    trials_per_block: int
    good_count: int
    limited: bool  # |Good| < delta * k
    good_blocks: list = field(default_factory=list)
    per_block: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def _index_stats(word, x, params, scheme, i, trials, seed, cache):
    dec = _decoder_for(params)
    correct = bottom = wrong = 0
    oracle = ReceivedWordOracle(word)
    for t in range(trials):
        out = dec(oracle, i, params, scheme, seed=seed * 1_000_003 + t,
                  cache=cache)
        if out.value is None:
            bottom += 1
        elif out.value == x[i]:
            correct += 1
        else:
            wrong += 1
    safe = correct + bottom
    _, safe_hi = wilson_interval(safe, trials)
    corr_lo, _ = wilson_interval(correct, trials)
    return IndexStats(index=i, trials=trials, correct=correct,
                      bottom=bottom, wrong=wrong,
                      safe_rate=safe / trials, safe_upper=safe_hi,
                      correct_rate=correct / trials,
                      correct_lower=corr_lo)


def estimate_fool(word: BitString, x: BitString, params, scheme,
                  trials: int = 200, seed: int = 0,
                  probe_indices=None) -> FoolReport:
    """Estimate the Fool predicate at threshold p = params.p.

    Fooled means some probed index has even the *upper* Wilson bound of
    Pr[Dec(i) in {x_i, ⊥}] below p."""
    p = getattr(params, "p", 2 / 3)
    if probe_indices is None:
        probe_indices = default_probe_indices(params, seed)
    cache: dict = {}
    per_index = []
    witness = None
    for i in probe_indices:
        st = _index_stats(word, x, params, scheme, i, trials, seed, cache)
        per_index.append(st)
        if witness is None and st.safe_upper < p:
            witness = i
    return FoolReport(p_threshold=float(p), trials_per_index=trials,
                      fooled=witness is not None, witness_index=witness,
                      per_index=per_index)


def estimate_limit(word: BitString, x: BitString, params, scheme,
                   trials: int = 200, seed: int = 0) -> LimitReport:
    """Estimate the Limit predicate: |Good| < delta * k.

    Sampling is stratified per block: the decoder's output distribution
    is identical for every index inside one block (the per-trial
    randomness never depends on the target index, only on its block, and
    a verified payload yields all of that block's bits at once), so one
    representative index per block determines Good membership for all r
    indices of the block.  A block counts as Good only when the Wilson
    *lower* bound of Pr[Dec = x_i] clears 2/3."""
    per_block = []
    good_blocks = []
    good_count = 0
    cache: dict = {}
    for j in range(1, params.d + 1):
        i = (j - 1) * params.r + 1
        if i > params.k:
            break
        st = _index_stats(word, x, params, scheme, i, trials,
                          seed * 7919 + j, cache)
        per_block.append(st)
        if st.correct_lower > 2 / 3:
            good_blocks.append(j)
            good_count += min(params.r, params.k - (j - 1) * params.r)
    delta = float(params.delta)
    return LimitReport(delta=delta, k=params.k, trials_per_block=trials,
                       good_count=good_count,
                       limited=good_count < delta * params.k,
                       good_blocks=good_blocks, per_block=per_block)


@dataclass
class LocalityReport:
    runs: int
    bound: int
    max_queries: int
    mean_queries: float
    within_bound: bool


def audit_locality(word: BitString, params, scheme, runs: int = 100,
                   seed: int = 0) -> LocalityReport:
    """Measure worst-case oracle queries per decode over random indices."""
    dec = _decoder_for(params)
    if isinstance(params, HammingParams):
        bound = params.locality_bound
    else:
        bound = params.locality_bound(len(word))
    rng = random.Random(seed)
    cache: dict = {}
    worst = 0
    total = 0
    for t in range(runs):
        i = rng.randrange(1, params.k + 1)
        oracle = ReceivedWordOracle(word)
        dec(oracle, i, params, scheme, seed=rng.getrandbits(62), cache=cache)
        worst = max(worst, oracle.query_count)
        total += oracle.query_count
    return LocalityReport(runs=runs, bound=bound, max_queries=worst,
                          mean_queries=total / runs,
                          within_bound=worst <= bound)


def param_worksheet(params) -> dict:
    """Flat, JSON-friendly dump of every derived parameter."""
    out = {}
    for key, val in asdict(params).items():
        if hasattr(val, "numerator") and not isinstance(val, int):
            out[key] = {"exact": f"{val.numerator}/{val.denominator}",
                        "float": float(val)}
        else:
            out[key] = val
    if isinstance(params, HammingParams):
        out["locality_bound"] = params.locality_bound
    return out


@dataclass
class ExperimentConfig:
    code: str  # "hamming" or "insdel"
    k: int = 1024
    r: int = 128
    lam: int = 128
    attack: str | None = None
    rho: str | None = None  # fraction string, e.g. "1/86"
    trials: int = 200
    seed: int = 0

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as f:
            raw = json.load(f)
        unknown = set(raw) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigInvalid(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**raw)
        if cfg.code not in ("hamming", "insdel"):
            raise ConfigInvalid(f"code must be hamming or insdel, got {cfg.code}")
        return cfg


def report_to_json(report, path) -> None:
    with open(path, "w") as f:
        json.dump(report.to_dict(), f, indent=2, default=str)


def report_to_csv(report, path) -> None:
    rows = getattr(report, "per_index", None) or getattr(report, "per_block")
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(asdict(rows[0])))
        writer.writeheader()
        for row in rows:
            writer.writerow(asdict(row))
