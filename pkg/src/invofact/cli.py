"""Command-line interface.

Exit status: 0 on success, 1 when a check fails, 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from itertools import islice
from typing import Any

from invofact import __version__
from invofact.counting import (
    chm_log_asymptotic,
    count_factorizations,
    hermite_factor,
    inner_factor,
    involution_count,
    log_count,
    product_of_cycle_lengths,
)
from invofact.factorize import enumerate_factorizations
from invofact.oracle import EXHAUSTIVE_LIMIT, exhaustive_check
from invofact.permutation import (
    Permutation,
    cycle_type,
    format_cycles,
    parse_cycle_type,
    parse_cycles,
    parse_images,
)
from invofact.stats import STATISTICS, clt_experiment, sandwich_check, tail_experiment

SEED_ENV = "INVOFACT_SEED"
ENUMERATE_WARN_DEGREE = 12


class UsageError(Exception):
    pass


def _envelope(command: str, params: dict, result: Any) -> dict:
    return {"command": command, "params": params, "result": result, "version": __version__}


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _csv(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _emit(args: argparse.Namespace, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None


def _threads(args: argparse.Namespace) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


def _read_permutation(args: argparse.Namespace) -> Permutation:
    given = [x for x in (args.images, args.cycles) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --images or --cycles")
    try:
        if args.images is not None:
            return parse_images(args.images)
        return parse_cycles(args.cycles, n=args.n, one_based=args.one_based)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- commands ---------------------------------------------------------------------


def cmd_count(args: argparse.Namespace) -> int:
    if args.cycle_type is not None:
        if args.images is not None or args.cycles is not None:
            raise UsageError("--cycle-type cannot be combined with a permutation")
        try:
            t = parse_cycle_type(args.cycle_type)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        params = {"cycle_type": args.cycle_type}
    else:
        sigma = _read_permutation(args)
        t = cycle_type(sigma)
        params = {"images": list(sigma.images)}
    big_n = count_factorizations(t)
    big_b = product_of_cycle_lengths(t)
    factors = [
        {"k": k, "c": c, "factor": str(inner_factor(k, c)), "hermite": str(hermite_factor(c, k))}
        for k, c in t.items()
    ]
    result = {
        "n": t.n,
        "cycle_type": str(t),
        "N": str(big_n),
        "B": str(big_b),
        "log_N": log_count(t),
        "factors": factors,
    }
    if args.format == "json":
        _emit(args, _dump_json(_envelope("count", params, result)))
    elif args.format == "csv":
        rows = [["k", "c", "factor", "hermite"]]
        rows += [[f["k"], f["c"], f["factor"], f["hermite"]] for f in factors]
        rows += [["N", "", big_n, ""], ["B", "", big_b, ""]]
        _emit(args, _csv(rows))
    else:
        lines = [f"cycle type {t or '(empty)'} on {t.n} points", f"N = {big_n}", f"B = {big_b}"]
        lines += [f"  k={f['k']} c={f['c']}: {f['factor']}" for f in factors]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    sigma = _read_permutation(args)
    total = count_factorizations(cycle_type(sigma))
    if sigma.n > ENUMERATE_WARN_DEGREE and total > 10**6:
        print(f"warning: {total} factorizations to enumerate", file=sys.stderr)
    pairs = enumerate_factorizations(sigma)
    if args.limit is not None:
        pairs = islice(pairs, args.limit)

    def fmt(p: Permutation) -> str:
        return format_cycles(p, one_based=args.one_based)

    if args.format == "json":
        listed = [{"tau2": fmt(p.tau2), "tau1": fmt(p.tau1)} for p in pairs]
        result = {"factorizations": listed, "shown": len(listed), "total": str(total)}
        params = {"images": list(sigma.images), "limit": args.limit, "one_based": args.one_based}
        _emit(args, _dump_json(_envelope("enumerate", params, result)))
        return 0
    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["tau2", "tau1"])
            for p in pairs:
                writer.writerow([fmt(p.tau2), fmt(p.tau1)])
        else:
            shown = 0
            for p in pairs:
                out.write(f"{fmt(p.tau2)}\t{fmt(p.tau1)}\n")
                shown += 1
            out.write(f"# total {total}" + (f" (showing {shown})" if shown != total else "") + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_oracle_check(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    if args.n > args.limit:
        raise UsageError(f"--n {args.n} exceeds the exhaustive limit {args.limit}")
    report = exhaustive_check(args.n, limit=args.limit)
    d = report.to_dict()
    if args.format == "json":
        _emit(args, _dump_json(_envelope("oracle-check", {"n": args.n}, d)))
    elif args.format == "csv":
        keys = ["n", "checked", "max_value", "max_attainers", "min_value", "min_attainers",
                "total_sum", "ok"]
        rows = [["key", "value"]] + [[k, d[k]] for k in keys]
        rows.append(["mismatches", len(report.mismatches)])
        _emit(args, _csv(rows))
    else:
        lines = [
            f"n={report.n}: checked {report.checked} permutations, "
            f"{len(report.mismatches)} mismatches",
            f"total {report.total_sum}",
            f"max {report.max_value} ({report.max_attainers} attainers)",
            f"min {report.min_value} ({report.min_attainers} attainers)",
        ]
        lines += [f"FAILED: {msg}" for msg in report.failed_claims]
        _emit(args, "\n".join(lines) + "\n")
    if not report.ok:
        first = report.mismatches[0] if report.mismatches else report.failed_claims[0]
        print(f"oracle check failed: {json.dumps(first)}", file=sys.stderr)
        return 1
    return 0


def cmd_clt(args: argparse.Namespace) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.samples < 100:
        raise UsageError("--samples must be at least 100")
    seed = _seed(args)
    report = clt_experiment(args.n, args.samples, seed, args.statistic, threads=_threads(args))
    summary = (
        f"n={report.n} samples={report.samples} seed={seed} statistic={report.statistic} "
        f"mean={report.mean:.6f} stdev={report.stdev:.6f} ks={report.ks_distance:.6f}\n"
    )
    params = {"n": args.n, "samples": args.samples, "seed": seed, "statistic": args.statistic}
    if args.format == "json":
        text = _dump_json(_envelope("clt", params, report.to_dict()))
    elif args.format == "csv":
        text = _csv([["bin_left", "count"]] + [[lo, c] for lo, c in report.histogram])
    else:
        text = summary
    _emit(args, text)
    if args.out:
        sys.stdout.write(summary)
    return 0


def cmd_tail(args: argparse.Namespace) -> int:
    if not 1 <= args.xi <= args.n:
        raise UsageError("need 1 <= --xi <= --n")
    seed = _seed(args)
    report = tail_experiment(args.n, args.xi, args.samples, seed, threads=_threads(args))
    params = {"n": args.n, "xi": args.xi, "samples": args.samples, "seed": seed}
    d = report.to_dict()
    if args.format == "json":
        text = _dump_json(_envelope("tail", params, d))
    elif args.format == "csv":
        text = _csv([["key", "value"]] + [[k, v] for k, v in d.items()])
    else:
        text = (
            f"n={report.n} xi={report.xi} samples={report.samples} seed={seed}\n"
            f"P(c_k >= 2 for some k >= xi) ~ {report.freq_large_k_repeat:.6f} "
            f"(bound {report.bound_large_k:.6f}, SE {report.standard_error:.6f})\n"
            f"P(c_k >= xi for some k <= xi) ~ {report.freq_small_k_crowd:.6f}\n"
        )
    _emit(args, text)
    return 0


def cmd_sandwich(args: argparse.Namespace) -> int:
    xi = args.xi if args.xi is not None else math.sqrt(math.log(args.n))
    if xi < 1:
        raise UsageError(f"xi = {xi} must be at least 1")
    seed = _seed(args)
    report = sandwich_check(args.n, xi, args.samples, seed, c=args.c, threads=_threads(args),
                            strict=False)
    params = {"n": args.n, "xi": xi, "samples": args.samples, "seed": seed, "c": args.c}
    d = report.to_dict()
    if args.format == "json":
        text = _dump_json(_envelope("sandwich", params, d))
    elif args.format == "csv":
        text = _csv([["key", "value"]] + [[k, v] for k, v in d.items() if k != "counterexamples"])
    else:
        text = (
            f"n={report.n} xi={xi:.6f} c={args.c} samples={report.samples} seed={seed}\n"
            f"hypotheses hold on {report.hypothesis_fraction:.4f} of samples\n"
            f"max log(N/B) {report.max_log_excess:.6f} vs margin {report.log_upper_margin:.6f}\n"
            f"violations: lower {report.lower_bound_violations}, "
            f"upper {report.upper_bound_violations}\n"
        )
    _emit(args, text)
    if report.counterexamples:
        print(f"bound violated: {json.dumps(report.counterexamples[0])}", file=sys.stderr)
        return 1
    return 0


def cmd_involutions(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    t_n = involution_count(args.n)
    if args.n >= 1:
        chm = chm_log_asymptotic(args.n)
        log_ratio = math.log(t_n) - chm
    else:
        chm = log_ratio = None
    result = {"n": args.n, "count": str(t_n), "log_count": math.log(t_n),
              "chm_log": chm, "log_ratio": log_ratio}
    if args.format == "json":
        _emit(args, _dump_json(_envelope("involutions", {"n": args.n}, result)))
    elif args.format == "csv":
        _emit(args, _csv([["key", "value"]] + [[k, "" if v is None else v] for k, v in result.items()]))
    else:
        lines = [f"|T_{args.n}| = {t_n}"]
        if log_ratio is not None:
            lines.append(f"log |T_n| - log CHM = {log_ratio:.6g}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


# -- parser ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")


def _add_permutation(p: argparse.ArgumentParser) -> None:
    p.add_argument("--images", help="JSON array of 0-based images, e.g. [1,2,0]")
    p.add_argument("--cycles", help='cycle notation, e.g. "(0,1,2)(3,4)"')
    p.add_argument("--one-based", action="store_true", help="cycle labels start at 1")
    p.add_argument("--n", type=int, help="degree (default: largest point in --cycles)")


def _add_mc(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help=f"RNG seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--threads", type=int, default=0,
                   help="worker processes (default: all cores); results do not depend on it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invofact",
        description="Factorizations of permutations into two involutions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact number of factorizations")
    _add_permutation(p)
    p.add_argument("--cycle-type", help="cycle type as k:c,k:c,...")
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list every factorization")
    _add_permutation(p)
    p.add_argument("--limit", type=int, help="stop after this many factorizations")
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("oracle-check", help="brute-force check of every permutation of degree n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=EXHAUSTIVE_LIMIT, help="largest degree allowed")
    _add_common(p)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("clt", help="normalized log N (or log B) over sampled permutations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--statistic", choices=STATISTICS, default="logN")
    _add_mc(p)
    _add_common(p)
    p.set_defaults(func=cmd_clt)

    p = sub.add_parser("tail", help="frequencies of the tail events for a threshold xi")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--samples", type=int, default=10000)
    _add_mc(p)
    _add_common(p)
    p.set_defaults(func=cmd_tail)

    p = sub.add_parser("sandwich", help="check B <= N <= B (c xi^xi)^xi on samples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--xi", type=float, help="threshold (default: sqrt(ln n))")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=10000)
    _add_mc(p)
    _add_common(p)
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("involutions", help="involution count and its asymptotic estimate")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_involutions)
    return parser


def main(argv: list[str] | None = None) -> int:
    # exact counts are printed in full
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
