"""Command line entry point: ``blockseq <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 resampling did not converge or repair got stuck.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from . import bounds
from .design import Params
from .errors import BlockseqError, NonConvergenceError, RepairStuckError
from .generators import bose_sts, random_partial, skolem_sts
from .io import read_design, read_sequencing, write_design, write_report, write_sequencing
from .oracle import exhaustive_max_ell
from .sequencer import sequence
from .verifier import is_ell_good, max_good_ell

EXIT_OK, EXIT_UNVERIFIED, EXIT_USAGE, EXIT_STUCK = 0, 1, 2, 3
SEED_ENV = "BLOCKSEQ_SEED"
BENCH_COLUMNS = ["n", "ell_requested", "s", "resamples", "repair_moves", "verified", "wall_ms"]


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _int_list(text: str) -> list:
    """'1..5' or '1,2,5'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def sts(n: int):
    if n % 6 == 3:
        return bose_sts(n)
    if n % 6 == 1:
        return skolem_sts(n)
    raise BlockseqError(f"no Steiner triple system of order {n} (need n = 1 or 3 mod 6)")


def cmd_gen(args) -> int:
    if args.construction == "bose":
        system = bose_sts(args.n)
    elif args.construction == "skolem":
        system = skolem_sts(args.n)
    else:
        missing = [f for f in ("k", "t", "lam", "blocks") if getattr(args, f) is None]
        if missing:
            raise BlockseqError("random construction needs --k --t --lambda --blocks")
        seed = args.seed if args.seed is not None else default_seed()
        system = random_partial(Params(args.n, args.k, args.t, args.lam), args.blocks, seed)
    write_design(system, args.output)
    print(f"wrote {system.num_blocks} blocks to {args.output}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    k, t, lam = args.k, args.t, args.lam
    alpha = bounds.alpha_main(t, lam)
    print(f"alpha = {bounds.round_down_sig(alpha)} ({alpha:.10f})")
    if k >= t + 2:
        print(f"alpha_large_k = {bounds.alpha_large_k(k, t, lam):.10f}")
    if args.n is not None:
        summary = bounds.summarize(args.n, k, t, lam)
        print(f"sigma = {summary.sigma:.2f}")
        print(f"s = {summary.s}")
        print(f"ell_max = {summary.ell_max}")
        print(f"condition = {_fmt_bool(summary.condition_ok)}")
        print(f"p = {summary.p:.6g}")
        print(f"d_bound = {summary.d_bound:.6g}")
        print(f"e*p*(d+1) = {summary.lll_product:.6f}")
    return EXIT_OK


def cmd_sequence(args) -> int:
    system = read_design(args.design)
    seed = args.seed if args.seed is not None else default_seed()
    seq, report = sequence(
        system,
        args.ell,
        seed=seed,
        mode=args.mode,
        s_override=args.s_override,
        max_resamples=args.max_resamples,
    )
    write_sequencing(seq, args.output)
    if args.report:
        write_report(report, args.report)
    print(
        f"ell={report.ell} s={report.s} resamples={report.resample_count} "
        f"repair_moves={report.repair_moves} verified={_fmt_bool(report.verified)}"
    )
    return EXIT_OK if report.verified else EXIT_UNVERIFIED


def cmd_verify(args) -> int:
    system = read_design(args.design)
    seq = read_sequencing(args.seq)
    kind = "cyclic" if args.cyclic else "linear"
    if args.ell is None:
        print(f"max ell = {max_good_ell(system, seq, cyclic=args.cyclic)} ({kind})")
        return EXIT_OK
    good = is_ell_good(system, seq, args.ell, cyclic=args.cyclic)
    print(f"{kind} {args.ell}-good: {_fmt_bool(good)}")
    return EXIT_OK if good else EXIT_UNVERIFIED


def cmd_oracle(args) -> int:
    system = read_design(args.design)
    best, witness = exhaustive_max_ell(system, cyclic=args.cyclic)
    print(f"max ell = {best} ({'cyclic' if args.cyclic else 'linear'})")
    print("witness = " + " ".join(str(int(v)) for v in witness.order))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.family != "sts":
        raise BlockseqError(f"unknown family {args.family!r}")
    seeds = _int_list(args.seeds) if args.seeds else [default_seed()]
    rows = []
    for n in _int_list(args.n):
        system = sts(n)
        ell = bounds.ell_max(n, 2, 1)
        for seed in seeds:
            t0 = time.perf_counter()
            _, report = sequence(system, max(ell, 1), seed=seed)
            wall = (time.perf_counter() - t0) * 1000.0
            rows.append([n, ell, report.s, report.resample_count, report.repair_moves,
                         _fmt_bool(report.verified), f"{wall:.1f}"])
            print(",".join(map(str, rows[-1])), file=sys.stderr)
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        writer.writerows(rows)
    return EXIT_OK if all(r[5] == "true" for r in rows) else EXIT_UNVERIFIED


def _add_mode_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--cyclic", dest="cyclic", action="store_true", default=True)
    g.add_argument("--linear", dest="cyclic", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blockseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a design file")
    p.add_argument("--construction", choices=["bose", "skolem", "random"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--blocks", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bounds", help="print alpha, sigma, ell_max and related bounds")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sequence", help="build a cyclically ell-good sequencing")
    p.add_argument("--design", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=["direct", "truncate"], default="direct")
    p.add_argument("--s-override", type=int)
    p.add_argument("--max-resamples", type=int)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", help="check a sequencing against a design")
    p.add_argument("--design", required=True)
    p.add_argument("--seq", required=True)
    p.add_argument("--ell", type=int)
    _add_mode_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive best ell for n <= 12")
    p.add_argument("--design", required=True)
    _add_mode_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="seeded benchmark over Steiner triple systems, CSV out")
    p.add_argument("--family", default="sts")
    p.add_argument("--n", default="1105,2005,4003,9999")
    p.add_argument("--seeds")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (NonConvergenceError, RepairStuckError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STUCK
    except (OSError, ValueError, BlockseqError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


dispatch = main

if __name__ == "__main__":
    sys.exit(main())
