"""Pluggable signature scheme (Gen, Sign, Ver) plus the forgery game.

The reference implementation is a hash-and-sign construction over a
lambda-bit modulus: pk is the modulus (pk_len = lambda bits), sk is the
matching private exponent, and a signature is the lambda-bit value
H(m)^d mod n, so sig_len = lambda bits as well.  Verification checks
sigma^e mod n == H(m) mod n with the fixed public exponent e = 65537.
This is a desk-scale scheme: the parameter sizes are far too small for
real-world security, but none of the shipped black-box adversaries can
forge, which is all the relaxed-decoding experiments require.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

import sympy

from .bits import BitString
from .errors import MalformedInput, UnsupportedLambda

_PUBLIC_EXPONENT = 65537
_MIN_LAMBDA = 48


@dataclass
class SignatureKeyPair:
    pk: BitString
    sk: object  # opaque; never serialized by default
    lam: int

    def sk_export(self) -> dict:
        """Explicit test-only escape hatch; nothing in the library calls
        this on a default path."""
        n, d = self.sk
        return {"n": n, "d": d}


@dataclass
class ForgeryAttempt:
    message: BitString
    signature: BitString
    queried: set

    def wins(self, scheme, pk) -> bool:
        try:
            ok = scheme.verify(pk, self.message, self.signature) == 1
        except MalformedInput:
            return False
        return ok and self.message.to01() not in self.queried


class HashModulusScheme:
    """Deterministic hash-and-sign scheme with sig_len = pk_len = lambda."""

    def __init__(self, lam: int, log_accepts: bool = False):
        if lam < _MIN_LAMBDA:
            raise UnsupportedLambda(f"lambda must be >= {_MIN_LAMBDA}")
        self.lam = lam
        self.accept_log = [] if log_accepts else None

    def sig_len(self, lam=None) -> int:
        return self.lam if lam is None else lam

    def pk_len(self, lam=None) -> int:
        return self.lam if lam is None else lam

    def gen(self, rng=None) -> SignatureKeyPair:
        rng = rng or random.Random()
        half = self.lam // 2
        while True:
            # primes drawn from the caller's rng stream, so key generation
            # is seed-reproducible
            p = sympy.nextprime((1 << (half - 1)) + rng.getrandbits(half - 1))
            q = sympy.nextprime((1 << (self.lam - half - 1)) + rng.getrandbits(self.lam - half - 1))
            n = p * q
            if p == q or n.bit_length() != self.lam:
                continue
            phi = (p - 1) * (q - 1)
            if sympy.gcd(_PUBLIC_EXPONENT, phi) != 1:
                continue
            d = pow(_PUBLIC_EXPONENT, -1, phi)
            pk = BitString.from_int(n, self.lam)
            return SignatureKeyPair(pk=pk, sk=(n, d), lam=self.lam)

    def _digest(self, m: BitString, n: int) -> int:
        h = hashlib.sha256(b"crldc-sig" + len(m).to_bytes(8, "little")
                           + m.to_bytes_msb()).digest()
        return int.from_bytes(h, "big") % n

    def sign(self, sk, m: BitString) -> BitString:
        n, d = sk
        sigma = pow(self._digest(m, n), d, n)
        return BitString.from_int(sigma, self.lam)

    def verify(self, pk: BitString, m: BitString, sigma: BitString) -> int:
        if len(pk) != self.pk_len():
            raise MalformedInput(f"pk length {len(pk)} != {self.pk_len()}")
        if len(sigma) != self.sig_len():
            raise MalformedInput(f"sigma length {len(sigma)} != {self.sig_len()}")
        n = pk.to_int()
        if n < 3:
            return 0
        s = sigma.to_int()
        if s >= n:
            return 0
        ok = pow(s, _PUBLIC_EXPONENT, n) == self._digest(m, n)
        if ok and self.accept_log is not None:
            self.accept_log.append((pk.to01(), m.to01(), sigma.to01()))
        return 1 if ok else 0


def run_forgery_game(scheme, adversary, lam: int, trials: int,
                     seed: int = 0) -> "Fraction":
    """Fraction of trials where the adversary outputs a valid signature
    on a message it never submitted to the signing oracle."""
    from fractions import Fraction

    wins = 0
    for t in range(trials):
        rng = random.Random(seed * 1_000_003 + t)
        keys = scheme.gen(rng)
        queried = set()

        def sign_oracle(m: BitString) -> BitString:
            queried.add(m.to01())
            return scheme.sign(keys.sk, m)

        if getattr(adversary, "wants_sk", False):
            out = adversary(scheme, keys.pk, sign_oracle, rng, keys.sk)
        else:
            out = adversary(scheme, keys.pk, sign_oracle, rng)
        if out is None:
            continue
        m, sigma = out
        if ForgeryAttempt(m, sigma, queried).wins(scheme, keys.pk):
            wins += 1
    return Fraction(wins, trials)


# -- shipped black-box adversaries -----------------------------------

def adversary_random_guess(scheme, pk, sign_oracle, rng):
    m = BitString.random(64, rng)
    sigma = BitString.random(scheme.sig_len(), rng)
    return m, sigma


def adversary_replay(scheme, pk, sign_oracle, rng):
    m = BitString.random(64, rng)
    sigma = sign_oracle(m)
    return m, sigma  # disqualified by the m-not-queried rule


def adversary_bit_flip(scheme, pk, sign_oracle, rng):
    m = BitString.random(64, rng)
    sigma = sign_oracle(m)
    m2 = m ^ BitString.from_int(1 << rng.randrange(64), 64)
    return m2, sigma


def adversary_cross_key(scheme, pk, sign_oracle, rng):
    # signs under its own fresh key and hopes pk accepts it
    own = scheme.gen(rng)
    m = BitString.random(64, rng)
    return m, scheme.sign(own.sk, m)


SHIPPED_ADVERSARIES = {
    "random": adversary_random_guess,
    "replay": adversary_replay,
    "bit-flip": adversary_bit_flip,
    "cross-key": adversary_cross_key,
}


def adversary_honest_signer(scheme, pk, sign_oracle, rng, sk):
    """Harness sanity check: given sk out of band, win rate is 1."""
    m = BitString.random(64, rng)
    return m, scheme.sign(sk, m)


adversary_honest_signer.wants_sk = True
