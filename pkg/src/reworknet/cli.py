"""Command-line interface.

Three subcommands: ``solve`` evaluates one (b, d) instance, ``sweep``
produces appendix-style result tables over a range of b, and ``check``
cross-validates the engine against the brute-force oracle.

Exit codes: 0 success, 1 internal error, 2 usage or validation error,
3 engine/oracle mismatch.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .benchmarks import BUILTIN_NAMES, builtin_network
from .engine import RunReport, SolveOptions, solve, summarize, sweep
from .network import Network, NetworkError, load_network
from .oracle import RandomNetworkParams, oracle_solve, random_small_network

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

_R_DIGITS = ".17g"


class _UsageError(Exception):
    pass


def _fmt_r(value: float) -> str:
    return format(value, _R_DIGITS)


def _parse_b_range(text: str) -> list[int]:
    if ".." in text:
        lo_s, _, hi_s = text.partition("..")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise _UsageError(f"invalid b range {text!r}; expected A..B")
        if lo < 1 or hi < lo:
            raise _UsageError(f"invalid b range {text!r}; need 1 <= A <= B")
        return list(range(lo, hi + 1))
    try:
        b = int(text)
    except ValueError:
        raise _UsageError(f"invalid b value {text!r}")
    if b < 1:
        raise _UsageError("b must be >= 1")
    return [b]


def _load_net(args) -> Network:
    if getattr(args, "random", False):
        return random_small_network(RandomNetworkParams(seed=args.seed))
    if args.builtin is not None:
        try:
            return builtin_network(args.builtin)
        except ValueError as exc:
            raise _UsageError(str(exc))
    if args.network is not None:
        try:
            with open(args.network, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            return load_network(doc)
        except OSError as exc:
            raise _UsageError(f"cannot read {args.network}: {exc}")
        except json.JSONDecodeError as exc:
            raise _UsageError(f"{args.network} is not valid JSON: {exc}")
        except NetworkError as exc:
            raise _UsageError(f"{args.network}: {exc}")
    raise _UsageError("one of --builtin or --network is required")


def _solve_options(args, record: bool = False) -> SolveOptions:
    return SolveOptions(prune=args.prune, workers=args.workers,
                        record_solutions=record)


def _report_dict(name: str, rep: RunReport) -> dict:
    d = {
        "name": name,
        "b": rep.b,
        "d": rep.d,
        "line_counts": list(rep.line_counts),
        "total_tuples": rep.total_tuples,
        "feasible_count": rep.feasible_count,
        "reliability": rep.reliability,
        "elapsed_seconds": rep.elapsed_seconds,
        "flags": list(rep.flags),
    }
    if rep.solutions is not None:
        d["solutions"] = [
            {"global_index": s.global_index, "z": list(s.z), "x": list(s.x),
             "prob": s.prob}
            for s in rep.solutions
        ]
    return d


def _csv_header(phi: int) -> str:
    ms = ",".join(f"m_{i}" for i in range(1, phi + 1))
    return f"name,b,d,{ms},T,S,s,R,flags"


def _csv_row(name: str, rep: RunReport) -> str:
    ms = ",".join(str(m) for m in rep.line_counts)
    flags = "+".join(rep.flags)
    return (f"{name},{rep.b},{rep.d},{ms},{rep.elapsed_seconds:.6f},"
            f"{rep.total_tuples},{rep.feasible_count},{_fmt_r(rep.reliability)},{flags}")


def _print_solution_rows(rep: RunReport, out) -> None:
    print("i\tZ\tX\tPr", file=out)
    for sol in rep.solutions or ():
        z = "(" + ",".join(str(v) for v in sol.z) + ")"
        x = "(" + ",".join(str(v) for v in sol.x) + ")"
        print(f"{sol.global_index}\t{z}\t{x}\t{_fmt_r(sol.prob)}", file=out)


def _cmd_solve(args, out) -> int:
    net = _load_net(args)
    bs = _parse_b_range(args.b)
    if len(bs) != 1:
        raise _UsageError("solve takes a single --b value")
    try:
        rep = solve(net, bs[0], args.d, _solve_options(args, record=args.solutions))
    except ValueError as exc:
        raise _UsageError(str(exc))
    if args.format == "json":
        json.dump(_report_dict(net.name, rep), out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        print(_csv_header(len(rep.line_counts)), file=out)
        print(_csv_row(net.name, rep), file=out)
        if args.solutions:
            _print_solution_rows(rep, out)
    else:
        print(f"network: {net.name}", file=out)
        print(f"b={rep.b} d={rep.d}", file=out)
        print(f"m: {','.join(str(m) for m in rep.line_counts)}", file=out)
        print(f"S: {rep.total_tuples}", file=out)
        print(f"s: {rep.feasible_count}", file=out)
        print(f"R: {_fmt_r(rep.reliability)}", file=out)
        print(f"T: {rep.elapsed_seconds:.6f}s", file=out)
        if rep.flags:
            print(f"flags: {'+'.join(rep.flags)}", file=out)
        if args.solutions:
            _print_solution_rows(rep, out)
    return EXIT_OK


def _cmd_sweep(args, out) -> int:
    net = _load_net(args)
    bs = _parse_b_range(args.b)
    opts = _solve_options(args)
    try:
        reports = sweep(net, bs, opts)
    except ValueError as exc:
        raise _UsageError(str(exc))
    if args.format == "json":
        json.dump([_report_dict(net.name, r) for r in reports], out, indent=2)
        out.write("\n")
    else:
        print(_csv_header(len(net.lines)), file=out)
        for rep in reports:
            print(_csv_row(net.name, rep), file=out)
    if args.summarize:
        summary = summarize(reports, s_star=args.s_star)
        parts = [f"rows={summary.rows}",
                 f"T_avg={summary.time_avg:.6f}",
                 f"S_avg={_fmt_r(summary.tuples_avg)}",
                 f"s_avg={_fmt_r(summary.feasible_avg)}",
                 f"R_avg={_fmt_r(summary.reliability_avg)}"]
        if summary.tuples_ratio is not None:
            parts.append(f"S_avg/S*={_fmt_r(summary.tuples_ratio)}")
        print("# summary: " + " ".join(parts), file=out)
    return EXIT_OK


def _cmd_check(args, out) -> int:
    net = _load_net(args)
    bs = _parse_b_range(args.b)
    if len(bs) != 1:
        raise _UsageError("check takes a single --b value")
    b, d = bs[0], args.d
    try:
        ours = solve(net, b, d, SolveOptions(prune=args.prune, workers=args.workers,
                                             record_solutions=True))
        ref = oracle_solve(net, b, d)
    except ValueError as exc:
        raise _UsageError(str(exc))
    s_ok = ours.feasible_count == ref.feasible_count
    if ref.reliability == ours.reliability:
        r_rel = 0.0
    elif ref.reliability == 0.0:
        r_rel = float("inf")
    else:
        r_rel = abs(ours.reliability - ref.reliability) / abs(ref.reliability)
    r_ok = r_rel <= 1e-12
    if s_ok and r_ok:
        print(f"{net.name} b={b} d={d}: s={ours.feasible_count} agree, "
              f"|dR|/R <= 1e-12", file=out)
        return EXIT_OK
    print(f"{net.name} b={b} d={d}: MISMATCH", file=out)
    print(f"engine: s={ours.feasible_count} R={_fmt_r(ours.reliability)}", file=out)
    print(f"oracle: s={ref.feasible_count} R={_fmt_r(ref.reliability)}", file=out)
    if not s_ok and ours.solutions:
        print(f"first engine solution: X={ours.solutions[0].x}", file=out)
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reworknet",
        description="Exact reliability of one-batch preempt deterioration-effect "
                    "multi-rework networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_random=False):
        p.add_argument("--builtin", choices=BUILTIN_NAMES,
                       help="use a built-in benchmark network")
        p.add_argument("--network", metavar="PATH",
                       help="load a network document (JSON)")
        if with_random:
            p.add_argument("--random", action="store_true",
                           help="use a seeded random small network")
            p.add_argument("--seed", type=int, default=0,
                           help="seed for --random (default 0)")
        p.add_argument("--b", required=True,
                       help="input count: N, or A..B for sweeps")
        p.add_argument("--prune", action="store_true",
                       help="skip index blocks that provably hold no feasible tuple")
        p.add_argument("--workers", type=int,
                       default=int(os.environ.get("REWORK_REL_WORKERS", "1")),
                       help="parallel workers (default $REWORK_REL_WORKERS or 1)")

    p_solve = sub.add_parser("solve", help="evaluate a single (b, d) instance")
    add_common(p_solve)
    p_solve.add_argument("--d", type=int, required=True, help="demanded output count")
    p_solve.add_argument("--solutions", action="store_true",
                         help="also list every feasible solution (i, Z, X, Pr)")
    p_solve.add_argument("--format", choices=("table", "csv", "json"),
                         default="table")
    p_solve.set_defaults(func=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="evaluate all (b, d) with d = 1..b")
    add_common(p_sweep)
    p_sweep.add_argument("--format", choices=("table", "csv", "json"), default="csv")
    p_sweep.add_argument("--summarize", action="store_true",
                         help="append a footer with row averages")
    p_sweep.add_argument("--s-star", type=float, default=None,
                         help="reference count for the S_avg/S* summary ratio")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_check = sub.add_parser("check",
                             help="compare engine and brute-force oracle results")
    add_common(p_check, with_random=True)
    p_check.add_argument("--d", type=int, required=True)
    p_check.set_defaults(func=_cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, sys.stdout)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
