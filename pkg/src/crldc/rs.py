"""Reed-Solomon errors-and-erasures codec over GF(256).

Standard systematic RS with the usual decoding chain: syndromes,
Berlekamp-Massey (seeded with the erasure locator), Chien search and
Forney correction.  Corrects 2e + f <= nsym where e is the number of
errors and f the number of erasures.  Follows the classic public-domain
wikiversity/reedsolo formulation.
"""

from __future__ import annotations

_PRIM = 0x11D

GF_EXP = [0] * 512
GF_LOG = [0] * 256
_x = 1
for _i in range(255):
    GF_EXP[_i] = _x
    GF_LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= _PRIM
for _i in range(255, 512):
    GF_EXP[_i] = GF_EXP[_i - 255]


class RSDecodeFailure(Exception):
    pass


def gf_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return GF_EXP[GF_LOG[a] + GF_LOG[b]]


def gf_div(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError()
    if a == 0:
        return 0
    return GF_EXP[(GF_LOG[a] - GF_LOG[b]) % 255]


def gf_pow(a: int, p: int) -> int:
    return GF_EXP[(GF_LOG[a] * p) % 255]


def gf_inverse(a: int) -> int:
    return GF_EXP[255 - GF_LOG[a]]


def _poly_scale(p, s):
    return [gf_mul(c, s) for c in p]


def _poly_add(p, q):
    r = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        r[i + len(r) - len(p)] = c
    for i, c in enumerate(q):
        r[i + len(r) - len(q)] ^= c
    return r


def _poly_mul(p, q):
    r = [0] * (len(p) + len(q) - 1)
    for j, qc in enumerate(q):
        if qc == 0:
            continue
        for i, pc in enumerate(p):
            if pc:
                r[i + j] ^= gf_mul(pc, qc)
    return r


def _poly_eval(p, x):
    y = p[0]
    for c in p[1:]:
        y = gf_mul(y, x) ^ c
    return y


def _generator_poly(nsym: int):
    g = [1]
    for i in range(nsym):
        g = _poly_mul(g, [1, gf_pow(2, i)])
    return g


def rs_encode(data: bytes | bytearray | list, nsym: int) -> bytearray:
    """Systematic encoding: returns data + nsym parity bytes."""
    if len(data) + nsym > 255:
        raise ValueError("message too long for GF(256)")
    gen = _generator_poly(nsym)
    buf = bytearray(data) + bytearray(nsym)
    for i in range(len(data)):
        coef = buf[i]
        if coef:
            for j in range(1, len(gen)):
                buf[i + j] ^= gf_mul(gen[j], coef)
    return bytearray(data) + buf[len(data):]


def _calc_syndromes(msg, nsym):
    return [0] + [_poly_eval(msg, gf_pow(2, i)) for i in range(nsym)]


def _find_errata_locator(e_pos):
    loc = [1]
    for p in e_pos:
        loc = _poly_mul(loc, _poly_add([1], [gf_pow(2, p), 0]))
    return loc


def _find_error_evaluator(synd, err_loc, nsym):
    _, rem = divmod_poly(_poly_mul(synd, err_loc), [1] + [0] * (nsym + 1))
    return rem


def divmod_poly(dividend, divisor):
    out = list(dividend)
    for i in range(len(dividend) - len(divisor) + 1):
        coef = out[i]
        if coef:
            for j in range(1, len(divisor)):
                if divisor[j]:
                    out[i + j] ^= gf_mul(divisor[j], coef)
    sep = -(len(divisor) - 1)
    return out[:sep], out[sep:]


def _correct_errata(msg, synd, err_pos):
    coef_pos = [len(msg) - 1 - p for p in err_pos]
    err_loc = _find_errata_locator(coef_pos)
    err_eval = _find_error_evaluator(synd[::-1], err_loc, len(err_loc) - 1)[::-1]
    x = [gf_pow(2, -(255 - c)) for c in coef_pos]
    e = [0] * len(msg)
    for i, xi in enumerate(x):
        xi_inv = gf_inverse(xi)
        prime = 1
        for j, xj in enumerate(x):
            if j != i:
                prime = gf_mul(prime, 1 ^ gf_mul(xi_inv, xj))
        if prime == 0:
            raise RSDecodeFailure("could not find error magnitude")
        y = gf_mul(gf_pow(xi, 1), _poly_eval(err_eval[::-1], xi_inv))
        e[err_pos[i]] = gf_div(y, prime)
    return [m ^ ei for m, ei in zip(msg, e)]


def _find_error_locator(synd, nsym, erase_loc=None, erase_count=0):
    if erase_loc:
        err_loc = list(erase_loc)
        old_loc = list(erase_loc)
    else:
        err_loc = [1]
        old_loc = [1]
    synd_shift = len(synd) - nsym
    for i in range(nsym - erase_count):
        kk = i + synd_shift + erase_count
        delta = synd[kk]
        for j in range(1, len(err_loc)):
            delta ^= gf_mul(err_loc[-(j + 1)], synd[kk - j])
        old_loc.append(0)
        if delta != 0:
            if len(old_loc) > len(err_loc):
                new_loc = _poly_scale(old_loc, delta)
                old_loc = _poly_scale(err_loc, gf_inverse(delta))
                err_loc = new_loc
            err_loc = _poly_add(err_loc, _poly_scale(old_loc, delta))
    while err_loc and err_loc[0] == 0:
        err_loc.pop(0)
    errs = len(err_loc) - 1
    if (errs - erase_count) * 2 + erase_count > nsym:
        raise RSDecodeFailure("too many errors to locate")
    return err_loc


def _find_errors(err_loc, nmess):
    errs = len(err_loc) - 1
    pos = []
    for i in range(nmess):
        if _poly_eval(err_loc, gf_pow(2, i)) == 0:
            pos.append(nmess - 1 - i)
    if len(pos) != errs:
        raise RSDecodeFailure("locator degree does not match root count")
    return pos


def rs_decode(msg, nsym: int, erase_pos=None):
    """Decode a full RS word (data + parity) with optional erasures.

    msg entries at erased positions may hold any value.  Returns the
    corrected data bytes.  Raises RSDecodeFailure when beyond capacity.
    """
    if len(msg) > 255:
        raise ValueError("message too long for GF(256)")
    out = list(msg)
    if erase_pos is None:
        erase_pos = []
    else:
        erase_pos = sorted(set(erase_pos))
        for p in erase_pos:
            out[p] = 0
    if len(erase_pos) > nsym:
        raise RSDecodeFailure("too many erasures")
    synd = _calc_syndromes(out, nsym)
    if max(synd) == 0:
        return bytearray(out[:-nsym])
    erase_loc = None
    if erase_pos:
        coef_pos = [len(out) - 1 - p for p in erase_pos]
        erase_loc = _find_errata_locator(coef_pos)
    err_loc = _find_error_locator(synd[1:], nsym, erase_loc, len(erase_pos))
    err_pos = _find_errors(err_loc[::-1], len(out))
    out = _correct_errata(out, synd, err_pos)
    if max(_calc_syndromes(out, nsym)) != 0:
        raise RSDecodeFailure("residual syndromes after correction")
    return bytearray(out[:-nsym])
