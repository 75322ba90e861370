"""
Command line interface.

    signedstats stats -3,1,-6,2,-4,-5
    signedstats dist --n 3 --group S --t-stat des_A --q-stat maj_A
    signedstats series --n 2 --trunc 5
    signedstats verify --identity all --n-min 1 --n-max 6 --trunc 20

Exit codes: 0 on success (all identities pass), 1 when a verification fails,
2 on usage or validation errors. ``--format structured`` prints one JSON
document; its ``results`` part depends only on the inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from . import identities as ids
from .identities import DistributionSpec, Verdict, default_workers, distribution, verify_many
from .polyring import BiPoly, DEFAULT_ORDER, carlitz_lhs, evaluate
from .signed_perm import DEFAULT_RANK_CAP, RankCapError, flag_decompose, format_window, parse_window
from .statistics import STAT_NAMES, full_stats, ndes_multiset

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _stat_name(value: str) -> str:
    if value.lower() == "none":
        return None
    if value not in STAT_NAMES:
        raise argparse.ArgumentTypeError(
            f"unknown statistic {value!r}; choose from {', '.join(STAT_NAMES)}")
    return value


def _thread_count(value: str) -> int:
    if value == "max":
        return os.cpu_count() or 1
    try:
        count = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'max', got {value!r}")
    if count < 1:
        raise argparse.ArgumentTypeError("thread count must be at least 1")
    return count


def _global_flags(with_defaults: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags without defaults, so values given
    # before the subcommand are not overwritten
    def d(value):
        return value if with_defaults else argparse.SUPPRESS
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default=d("human"))
    common.add_argument("--threads", type=_thread_count, default=d(None),
                        help="worker count or 'max' (default: machine parallelism)")
    common.add_argument("--rank-cap", type=int, default=d(DEFAULT_RANK_CAP))
    common.add_argument("--no-timing", action="store_true", default=d(False),
                        help="omit timings so the output is byte-stable")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(with_defaults=False)
    parser = _Parser(prog="signedstats", parents=[_global_flags(with_defaults=True)],
                     description="Statistics and Euler-Mahonian identities on signed permutations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", parents=[common], help="all statistics of one element")
    p.add_argument("window", help="comma-separated window, e.g. -3,1,-6,2,-4,-5")

    p = sub.add_parser("dist", parents=[common], help="joint distribution polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", type=str.upper, choices=("S", "B"), default="B")
    p.add_argument("--t-stat", type=_stat_name, default=None)
    p.add_argument("--q-stat", type=_stat_name, default=None)

    p = sub.add_parser("series", parents=[common], help="coefficients of sum [r+1]_q^n t^r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trunc", type=int, default=DEFAULT_ORDER)

    p = sub.add_parser("verify", parents=[common], help="check identities exactly")
    p.add_argument("--identity", default="all")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="shorthand for --n-min N --n-max N")
    p.add_argument("--trunc", type=int, default=DEFAULT_ORDER)
    return parser


def _poly_report(p: BiPoly) -> dict:
    return {"text": str(p), "terms": [list(t) for t in p.sorted_terms()]}


def run_stats(args) -> tuple[dict, str, int]:
    args.window = args.window.strip()
    perm = parse_window(args.window)
    rec = full_stats(perm)
    ndes = ndes_multiset(perm)
    flags = flag_decompose(perm)
    results = {
        "window": format_window(perm),
        "stats": rec.as_dict(),
        "ndes_multiset": [list(pair) for pair in ndes.as_pairs()],
        "flag_exponents": list(flags.ks),
        "flag_exponent_sum": flags.total(),
    }
    nd = ",".join(str(v) if m == 1 else f"{v}:{m}" for v, m in ndes.as_pairs())
    lines = [f"window {results['window']}"]
    lines += [f"  {k:<7}{v}" for k, v in rec.as_dict().items()]
    lines.append(f"  NDes   {{{nd}}}")
    lines.append(f"  flag exponents (k_0..k_{perm.n - 1}) {','.join(map(str, flags.ks))}"
                 f"  (sum {flags.total()})")
    return results, "\n".join(lines), EXIT_OK


def run_dist(args) -> tuple[dict, str, int]:
    spec = DistributionSpec(args.group, args.n, args.t_stat, args.q_stat)
    poly = distribution(spec, args.threads, args.rank_cap)
    mass = evaluate(poly, 1, 1)
    results = {"polynomial": _poly_report(poly), "mass": mass}
    human = f"{poly}\nmass at q=t=1: {mass}"
    return results, human, EXIT_OK


def run_series(args) -> tuple[dict, str, int]:
    if args.trunc < 0:
        raise UsageError("--trunc must be >= 0")
    series = carlitz_lhs(args.n, args.trunc)
    coeffs = [_poly_report(c) for c in series.coeffs]
    results = {"order": args.trunc, "coefficients": coeffs}
    human = "\n".join(f"t^{r}: {c}" for r, c in enumerate(series.coeffs))
    return results, human, EXIT_OK


def _verdict_report(v: Verdict) -> dict:
    return {
        "identity": v.identity_id,
        "n": v.n,
        "order": v.order,
        "pass": v.passed,
        "first_discrepancy": None if v.first_discrepancy is None else
        dict(zip(("t_degree", "q_degree", "lhs", "rhs"), v.first_discrepancy.as_list())),
        "witness": v.witness,
    }


def run_verify(args) -> tuple[dict, str, int]:
    if args.n is not None:
        args.n_min = args.n_max = args.n
    n_max = args.n_max if args.n_max is not None else args.n_min
    if args.n_min < 1 or n_max < args.n_min:
        raise UsageError(f"bad rank range {args.n_min}..{n_max}")
    if args.trunc < 0:
        raise UsageError("--trunc must be >= 0")
    if args.identity == "all":
        chosen, skip = ids.IDENTITY_IDS, True
    else:
        chosen = tuple(s.strip() for s in args.identity.split(","))
        for name in chosen:
            ids.describe(name)  # raises on unknown ids
        skip = False
    verdicts = verify_many(chosen, range(args.n_min, n_max + 1), args.trunc,
                           args.threads, args.rank_cap, skip_out_of_range=skip)
    ok = all(v.passed for v in verdicts)
    results = {"all_pass": ok, "verdicts": [_verdict_report(v) for v in verdicts]}
    lines = []
    for v in verdicts:
        tag = "PASS" if v.passed else "FAIL"
        extra = f" R={v.order}" if v.order is not None else ""
        line = f"{tag} {v.identity_id:<14} n={v.n}{extra}"
        if not args.no_timing:
            line += f"  ({v.elapsed:.3f}s)"
        if v.first_discrepancy is not None:
            d = v.first_discrepancy
            line += (f"  first discrepancy at t^{d.t_degree} q^{d.q_degree}: "
                     f"lhs {d.lhs}, rhs {d.rhs}")
        if v.witness:
            line += f"  witness {v.witness}"
        lines.append(line)
    lines.append(f"{sum(v.passed for v in verdicts)}/{len(verdicts)} passed")
    timing = {f"{v.identity_id}/{v.n}": round(v.elapsed, 6) for v in verdicts}
    results["_timing"] = timing
    return results, "\n".join(lines), EXIT_OK if ok else EXIT_FAIL


_COMMANDS = {"stats": run_stats, "dist": run_dist, "series": run_series, "verify": run_verify}


def _inputs(args) -> dict:
    skip = {"command", "format", "no_timing", "threads"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


_WINDOW = re.compile(r"^-\d+(,\s*-?\d+)*$")


def _protect_windows(argv: list[str]) -> list[str]:
    # a leading space keeps argparse from reading "-3,1,..." as an option
    return [" " + a if _WINDOW.match(a) else a for a in argv]


def main(argv=None) -> int:
    parser = build_parser()
    argv = _protect_windows(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"signedstats: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.threads is not None and args.threads < 1:
        print("signedstats: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.threads is None:
        args.threads = default_workers()
    start = time.perf_counter()
    try:
        results, human, code = _COMMANDS[args.command](args)
    except (UsageError, ValueError, RankCapError) as exc:
        print(f"signedstats: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    per_item = results.pop("_timing", None)
    if args.format == "structured":
        doc = {"command": args.command, "inputs": _inputs(args), "results": results}
        if not args.no_timing:
            doc["timing"] = {"total_seconds": round(elapsed, 6)}
            if per_item:
                doc["timing"]["items"] = per_item
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(human)
        if not args.no_timing and args.command != "verify":
            print(f"({elapsed:.3f}s)")
    return code


if __name__ == "__main__":
    sys.exit(main())
