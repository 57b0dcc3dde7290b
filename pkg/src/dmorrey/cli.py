"""Command-line front end.

stdout carries exactly one JSON document; diagnostics go to stderr.

Exit codes: 0 success, 1 verification failure (report still emitted),
2 malformed sequence file, 3 invalid exponents, 4 infeasible parameters.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import counterexamples as cx
from . import suites
from .continuous import continuous_norm_grid, embed_step, weak_continuous_norm_grid
from .core import ExponentError, validate_exponents
from .corpus import GENERATOR, random_corpus
from .inclusion import RegimeError
from .norms import dense_oracle_norm, discrete_norm, sup_norm, weak_norm
from .seqfile import SequenceFormatError, load_sequence, store_sequence

EXIT_OK, EXIT_FAIL, EXIT_FORMAT, EXIT_EXPONENTS, EXIT_INFEASIBLE = 0, 1, 2, 3, 4

CORPUS_HELP = (f"random corpora use generator {GENERATOR}: support size uniform on "
               "1..50, distinct indices in [-200, 200], values uniform on (0, 10], "
               "numpy PCG64 seeded by --seed")


def _emit(doc: dict, out: str | None = None) -> None:
    text = json.dumps(doc, sort_keys=True, allow_nan=False)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    print(text)


def _flatten(doc, prefix=""):
    """Yield (dotted key, scalar) pairs; list positions become key components."""
    items = doc.items() if isinstance(doc, dict) else enumerate(doc)
    for k, v in items:
        key = f"{prefix}{k}"
        if isinstance(v, (dict, list)) and v:
            yield from _flatten(v, key + ".")
        else:
            yield key, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v


def _write_csv(doc: dict, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["key", "value"])
        out.writerows(sorted(_flatten(doc)))


def _seed(text: str) -> int:
    n = int(text)
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return n


def _qjson(q: float):
    return "inf" if math.isinf(q) else q


def _q(text: str) -> float:
    return math.inf if text.strip().lower() in ("inf", "infinity", "oo") else float(text)


def cmd_norm(args) -> int:
    x = load_sequence(args.seq)
    e = validate_exponents(args.p, args.q)
    if args.oracle:
        res = dense_oracle_norm(x, e, args.margin)
    else:
        res = discrete_norm(x, e)
    doc = {**res.as_dict(), "p": e.p, "q": _qjson(e.q), "points": len(x), "sup": sup_norm(x)}
    if args.weak:
        w = weak_norm(x, e)
        doc["weak_value"] = w.value
        doc["weak_witness_threshold"] = w.witness_threshold
        doc["weak_witness_window"] = w.witness_window.as_dict() if w.witness_window else None
    _emit(doc)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.kind == "block":
        x = cx.gen_block(args.K)
        meta = {"K": args.K}
    elif args.kind == "power":
        x = cx.gen_power_sequence(args.q2, args.K)
        meta = {"K": args.K, "q2": args.q2}
    elif args.kind == "random":
        x = random_corpus(1, args.seed)[0]
        meta = {"seed": args.seed, "generator": GENERATOR}
    else:
        if args.v is not None:
            v, w = args.v, args.w
            k0 = args.k0 if args.k0 is not None else cx.compute_k0(v, w)
            params = cx.CounterexampleParams(math.nan, math.nan, math.nan, v, w, k0,
                                             args.n_max)
            meta = {"v": v, "w": w, "k0": k0, "n_max": args.n_max}
        else:
            params = cx.make_params(args.p1, args.p2, args.q, args.mode, args.n_max)
            meta = params.as_dict()
        x = cx.gen_lacunary(params)
    comment = f"{args.kind} " + json.dumps(meta, sort_keys=True)
    store_sequence(x, args.out, comment=comment)
    _emit({"kind": args.kind, "points": len(x), "out": args.out, **meta})
    return EXIT_OK


def cmd_solve_params(args) -> int:
    v, w = cx.solve_vw(args.p1, args.p2, args.q, args.mode)
    _emit({"v": v, "w": w, "k0": cx.compute_k0(v, w), "mode": args.mode})
    return EXIT_OK


def cmd_embed(args) -> int:
    x = load_sequence(args.seq)
    if args.p < 1:
        raise ExponentError(f"p < 1 (p={args.p})")
    _emit(embed_step(x, args.p).as_dict())
    return EXIT_OK


def cmd_cnorm(args) -> int:
    x = load_sequence(args.seq)
    e = validate_exponents(args.p, args.q)
    f = embed_step(x, e.p)
    est = continuous_norm_grid(f, e, args.M, odd_integer=args.odd_integer)
    doc = {"strong": est.as_dict(), "p": e.p, "q": _qjson(e.q)}
    if args.weak:
        doc["weak"] = weak_continuous_norm_grid(f, e, args.M,
                                                odd_integer=args.odd_integer).as_dict()
    _emit(doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    th = args.theorem
    if th in suites.CORPUS_SUITES or th in ("t8", "es1-identity"):
        corpus = suites.make_corpus(args.corpus, args.trials, args.seed)
    if th in suites.CORPUS_SUITES:
        e1 = validate_exponents(args.p1, args.q1)
        e2 = validate_exponents(args.p2, args.q2)
        ok, report = suites.constant_one_suite(th, corpus, e1, e2, args.seed)
    elif th == "t8":
        ok, report = suites.t8_suite(corpus, args.p1, args.p2, args.q, args.seed)
    elif th in ("t1-dichotomy", "t2-dichotomy"):
        ok, report = suites.t1_dichotomy(args.p1, args.p2, args.q, tuple(args.levels),
                                         weak=th == "t2-dichotomy")
        report["theorem"] = th
    elif th == "t1c-dichotomy":
        ok, report = suites.t1c_dichotomy(args.p1, args.q1, args.p2, args.q2)
        report["theorem"] = th
    else:
        exps = validate_exponents(args.p1, args.q1) if args.fixed_exponents else None
        ok, report = suites.es_identity(corpus, args.seed, exps)
    report["ok"] = ok
    _emit(report, args.out)
    if args.csv:
        _write_csv(report, args.csv)
    if not ok:
        print(f"verify {th}: FAILED", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# per-theorem defaults for the exponent flags
VERIFY_DEFAULTS = {
    "first-kind": dict(p1=2.0, q1=3.0, p2=1.0, q2=3.0),
    "second-kind": dict(p1=1.0, q1=2.0, p2=2.0, q2=4.0),
    "q-monotone": dict(p1=2.0, q1=2.0, p2=2.0, q2=3.0),
    "weak-second-kind": dict(p1=1.0, q1=2.0, p2=2.0, q2=4.0),
    "weak-q-monotone": dict(p1=2.0, q1=2.0, p2=2.0, q2=3.0),
    "t8": dict(p1=1.0, p2=2.0, q=3.0),
    "t1-dichotomy": dict(p1=2.0, p2=1.0, q=3.0),
    "t2-dichotomy": dict(p1=2.0, p2=1.0, q=3.0),
    "t1c-dichotomy": dict(p1=1.0, q1=2.0, p2=2.0, q2=6.0),
    "es1-identity": dict(p1=1.5, q1=3.0),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dmorrey", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="discrete Morrey norm of a sequence file")
    p.add_argument("--seq", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=_q, required=True, help="number or 'inf'")
    p.add_argument("--weak", action="store_true", help="also report the weak quasi-norm")
    p.add_argument("--oracle", action="store_true", help="use the dense brute-force scan")
    p.add_argument("--margin", type=int, default=2)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("generate", help="write a witness sequence file")
    p.add_argument("--kind", choices=("lacunary", "power", "block", "random"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--K", type=int, default=4)
    p.add_argument("--q2", type=float, default=2.0)
    p.add_argument("--p1", type=float, default=2.0)
    p.add_argument("--p2", type=float, default=1.0)
    p.add_argument("--q", type=float, default=3.0)
    p.add_argument("--mode", choices=(cx.THM1, cx.THM8), default=cx.THM1)
    p.add_argument("--v", type=int)
    p.add_argument("--w", type=int, default=2)
    p.add_argument("--k0", type=int)
    p.add_argument("--n-max", dest="n_max", type=int, default=2)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve-params", help="smallest (v, w) and k0 for the lacunary witness")
    p.add_argument("--p1", type=float, required=True)
    p.add_argument("--p2", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--mode", choices=(cx.THM1, cx.THM8), default=cx.THM1)
    p.set_defaults(func=cmd_solve_params)

    p = sub.add_parser("embed", help="step-function embedding as JSON")
    p.add_argument("--seq", required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("cnorm", help="grid estimate of the continuous Morrey norm")
    p.add_argument("--seq", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=_q, required=True)
    p.add_argument("--M", type=int, default=8)
    p.add_argument("--weak", action="store_true")
    p.add_argument("--odd-integer", action="store_true",
                   help="only intervals [m-N, m+N+1]")
    p.set_defaults(func=cmd_cnorm)

    p = sub.add_parser("verify", help="run a theorem-verification suite",
                       epilog=CORPUS_HELP)
    p.add_argument("--theorem", choices=suites.THEOREMS, required=True)
    p.add_argument("--corpus", choices=("random", "integer"), default="random")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--p1", type=float)
    p.add_argument("--q1", type=float)
    p.add_argument("--p2", type=float)
    p.add_argument("--q2", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--levels", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--fixed-exponents", action="store_true",
                   help="es1-identity: use --p1/--q1 for every trial instead of random pairs")
    p.add_argument("--out", help="also write the report here")
    p.add_argument("--csv", help="also write the report as key,value CSV rows")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        for k, v in VERIFY_DEFAULTS[args.theorem].items():
            if getattr(args, k) is None:
                setattr(args, k, v)
    try:
        return args.func(args)
    except SequenceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (ExponentError, RegimeError) as exc:
        print(f"error: invalid exponents: {exc}", file=sys.stderr)
        return EXIT_EXPONENTS
    except cx.InfeasibleParameters as exc:
        print(f"error: infeasible parameters: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
