"""Command-line front end.

Codewords live in small binary files (bit-length header + packed bits)
with a JSON sidecar carrying the public parameters, the message and the
public key.  The signing key is discarded after encoding and never
written unless the test-only --export-sk flag asks for a separate file.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .adversaries import (random_hamming_channel, random_insdel_channel,
                          rotation_insdel, strawman_key_substitution,
                          swap_blocks_hamming, worst_block_hamming)
from .bits import BitString, ReceivedWordOracle, read_codeword, write_codeword
from .errors import ConfigInvalid, CrldcError
from .hamming import (SignedBlockPayload, compute_hamming_params, dec_h,
                      dec_h_strawman, enc_h)
from .harness import (audit_locality, estimate_fool, estimate_limit,
                      param_worksheet, report_to_json)
from .insdel import (classify_gamma_good, compute_insdel_params, dec_ins,
                     enc_ins, optimal_block_decomposition)
from .sigscheme import HashModulusScheme


def _params_for(code, k, r, lam):
    if code == "hamming":
        return compute_hamming_params(lam, k, r, pk_len=lam,
                                      c=Fraction(1, 4), target_p=2 / 3)
    if code == "insdel":
        return compute_insdel_params(lam, k, r)
    raise ConfigInvalid(f"unknown code {code!r}")


def _sidecar_path(word_path):
    return word_path + ".json"


def _load(word_path):
    word = read_codeword(word_path)
    with open(_sidecar_path(word_path)) as f:
        meta = json.load(f)
    if "sk" in meta:
        raise ConfigInvalid("sidecar metadata must never contain a signing key")
    params = _params_for(meta["code"], meta["k"], meta["r"], meta["lam"])
    scheme = HashModulusScheme(meta["lam"])
    return word, meta, params, scheme


def cmd_encode(args):
    params = _params_for(args.code, args.k, args.r, args.lam)
    scheme = HashModulusScheme(args.lam)
    rng = random.Random(args.seed)
    if args.message_file:
        with open(args.message_file) as f:
            x = BitString.from_str(f.read().strip())
        if len(x) != args.k:
            raise ConfigInvalid(f"message length {len(x)} != k {args.k}")
    else:
        x = BitString.random(args.k, rng)
    enc = enc_h if args.code == "hamming" else enc_ins
    codeword, debug = enc(x, params, scheme, rng)
    write_codeword(args.out, codeword)
    meta = {
        "code": args.code, "k": args.k, "r": args.r, "lam": args.lam,
        "seed": args.seed, "pk": debug["pk"].to01(), "message": x.to01(),
        "attacks": [],
    }
    with open(_sidecar_path(args.out), "w") as f:
        json.dump(meta, f, indent=2)
    if args.export_sk:
        # test-only escape hatch; kept out of the sidecar on purpose
        with open(args.export_sk, "w") as f:
            json.dump({"sk": debug["keys"].sk_export()}, f)
    print(f"wrote {len(codeword)}-bit {args.code} codeword to {args.out}")
    return 0


def cmd_corrupt(args):
    word, meta, params, scheme = _load(args.word)
    rho = Fraction(args.rho) if args.rho else params.rho
    if args.attack == "random":
        if meta["code"] == "hamming":
            out, rec = random_hamming_channel(word, rho, args.seed)
        else:
            out, rec = random_insdel_channel(word, rho, args.seed)
    elif args.attack == "worst-block":
        out, rec = worst_block_hamming(word, rho, params.bl, args.seed,
                                       rho_in=params.rho_in)
    elif args.attack == "strawman":
        x = BitString.from_str(meta["message"])
        debug = {"payloads": [SignedBlockPayload(
            x.slice(1, params.r), BitString.zeros(params.r),
            BitString.from_str(meta["pk"]), 1)]}
        out, rec = strawman_key_substitution(word, debug, params, scheme,
                                             args.seed)
    elif args.attack == "swap":
        out, rec = swap_blocks_hamming(word, 1, 2, params, args.seed)
    elif args.attack == "rotation":
        out, rec = rotation_insdel(word, params.block_len, args.seed)
    else:
        raise ConfigInvalid(f"unknown attack {args.attack!r}")
    write_codeword(args.out, out)
    meta["attacks"] = meta.get("attacks", []) + [{
        "name": rec.name, "metric": rec.metric, "budget": str(rec.budget),
        "raw_distance": rec.distance.raw,
        "normalized_distance": str(rec.distance.normalized),
        "seed": args.seed,
    }]
    with open(_sidecar_path(args.out), "w") as f:
        json.dump(meta, f, indent=2)
    print(f"{rec.name}: raw {rec.metric} distance {rec.distance.raw} "
          f"(budget {rec.budget}); wrote {args.out}")
    return 0


def cmd_decode(args):
    word, meta, params, scheme = _load(args.word)
    dec = dec_h if meta["code"] == "hamming" else dec_ins
    if args.strawman:
        if meta["code"] != "hamming":
            raise ConfigInvalid("the strawman decoder is Hamming-only")
        dec = dec_h_strawman
    oracle = ReceivedWordOracle(word)
    out = dec(oracle, args.index, params, scheme, seed=args.seed)
    value = "⊥" if out.value is None else str(out.value)
    print(f"Dec({args.index}) = {value}  [{out.queries_used} queries"
          + (f", {out.detail}]" if out.value is None else "]"))
    return 0


def cmd_fool(args):
    word, meta, params, scheme = _load(args.word)
    x = BitString.from_str(meta["message"])
    rep = estimate_fool(word, x, params, scheme, trials=args.trials,
                        seed=args.seed)
    if args.out:
        report_to_json(rep, args.out)
    worst = min(rep.per_index, key=lambda s: s.safe_upper)
    print(f"fool: threshold p={rep.p_threshold:.4f}, probed "
          f"{len(rep.per_index)} indices x {rep.trials_per_index} trials; "
          f"min safe-rate upper bound {worst.safe_upper:.4f} at index "
          f"{worst.index}; fooled={rep.fooled}")
    return 1 if rep.fooled else 0


def cmd_limit(args):
    word, meta, params, scheme = _load(args.word)
    x = BitString.from_str(meta["message"])
    rep = estimate_limit(word, x, params, scheme, trials=args.trials,
                         seed=args.seed)
    if args.out:
        report_to_json(rep, args.out)
    print(f"limit: |Good| >= {rep.good_count} of k={rep.k} "
          f"(delta*k = {rep.delta * rep.k:.0f}); limited={rep.limited}")
    return 1 if rep.limited else 0


def cmd_audit_locality(args):
    word, meta, params, scheme = _load(args.word)
    rep = audit_locality(word, params, scheme, runs=args.runs,
                         seed=args.seed)
    print(f"locality: max {rep.max_queries} / bound {rep.bound} over "
          f"{rep.runs} runs (mean {rep.mean_queries:.0f}); "
          f"within_bound={rep.within_bound}")
    return 0 if rep.within_bound else 1


def cmd_worksheet(args):
    params = _params_for(args.code, args.k, args.r, args.lam)
    print(json.dumps(param_worksheet(params), indent=2, default=str))
    return 0


def cmd_blockmap(args):
    clean = read_codeword(args.clean)
    word, meta, params, scheme = _load(args.word)
    decomp = optimal_block_decomposition(clean, word, params.d)
    gamma = getattr(params, "gamma", None)
    out = {
        "intervals": decomp.intervals,
        "raw_eds": decomp.raw_eds,
        "per_block_ed": [str(e) for e in decomp.per_block_ed],
        "total_raw": decomp.total_raw,
    }
    if gamma is not None:
        rep = classify_gamma_good(decomp, gamma)
        out["good_blocks"] = rep.good_indices
        out["bad_fraction"] = str(rep.bad_fraction)
    print(json.dumps(out, indent=2))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="crldc",
        description="relaxed locally decodable codes: encode, corrupt, "
                    "decode, and estimate the decoding guarantees")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("encode", help="encode a message")
    p.add_argument("--code", choices=["hamming", "insdel"], required=True)
    p.add_argument("--k", type=int, default=1024)
    p.add_argument("--r", type=int, default=128)
    p.add_argument("--lam", type=int, default=128)
    p.add_argument("--message-file", help="file of 0/1 characters")
    p.add_argument("--out", required=True)
    p.add_argument("--export-sk", metavar="PATH",
                   help="test-only: write the signing key to a separate file")
    common(p)
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("corrupt", help="apply a budget-checked attack")
    p.add_argument("word")
    p.add_argument("--attack", required=True,
                   choices=["random", "worst-block", "strawman", "swap",
                            "rotation"])
    p.add_argument("--rho", help="fraction, e.g. 1/86 (default: code budget)")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(fn=cmd_corrupt)

    p = sub.add_parser("decode", help="locally decode one message bit")
    p.add_argument("word")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--strawman", action="store_true",
                   help="use the broken parsed-key decoder variant")
    common(p)
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("fool", help="estimate the wrong-bit predicate")
    p.add_argument("word")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--out", help="write the full JSON report here")
    common(p)
    p.set_defaults(fn=cmd_fool)

    p = sub.add_parser("limit", help="estimate the Good-set size")
    p.add_argument("word")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--out", help="write the full JSON report here")
    common(p)
    p.set_defaults(fn=cmd_limit)

    p = sub.add_parser("audit-locality", help="measure per-decode queries")
    p.add_argument("word")
    p.add_argument("--runs", type=int, default=100)
    common(p)
    p.set_defaults(fn=cmd_audit_locality)

    p = sub.add_parser("worksheet", help="print all derived parameters")
    p.add_argument("--code", choices=["hamming", "insdel"], required=True)
    p.add_argument("--k", type=int, default=1024)
    p.add_argument("--r", type=int, default=128)
    p.add_argument("--lam", type=int, default=128)
    p.set_defaults(fn=cmd_worksheet)

    p = sub.add_parser("blockmap",
                       help="exact block decomposition of a corrupted word")
    p.add_argument("word")
    p.add_argument("--clean", required=True,
                   help="the uncorrupted codeword file")
    p.set_defaults(fn=cmd_blockmap)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CrldcError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
