"""Command-line interface.

Exit codes: 0 success, 1 an inequality violation was found, 2 usage or
parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import time

from . import exhaustive
from .core import BoolSpecError, from_points
from .fileformats import ParseError, dump_points, dump_table, load_function, loads_function
from .generators import GeneratorSpec, generate
from .report import (
    CSV_FIELDS,
    ReportEnvelope,
    SearchSummary,
    analysis_row,
    analyze,
    emit,
    function_digest,
    input_digest,
)
from .search import SearchConfig, run

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

KIND_ALIASES = {
    "coordinate-subspace": "coordinate_subspace",
    "affine-subspace": "affine_subspace",
    "hamming-ball": "hamming_ball",
    "random": "random_density",
    "sidon": "sidon_greedy",
}
SWEEP_FAMILIES = ("ball", "random", "sidon", "subspace")


class UsageError(Exception):
    pass


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return v


def _vector(text: str) -> int:
    """Vector given as hex (0x...), or as a binary string with coordinate 1 leftmost."""
    if text.lower().startswith("0x"):
        return int(text, 16)
    if text and not set(text) - {"0", "1"}:
        return int(text[::-1], 2)
    raise argparse.ArgumentTypeError(f"bad vector {text!r}")


def _n_range(text: str) -> tuple[int, int]:
    a, sep, b = text.partition("..")
    try:
        lo, hi = int(a), int(b) if sep else int(a)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a..b")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-n", type=int, help="override the largest accepted dimension")
    common.add_argument("--seed", type=_u64, default=0, help="64-bit seed (default 0)")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock timing in JSON output (breaks byte-identity)")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json")
    out.add_argument("--csv", dest="output", action="store_const", const="csv")

    parser = argparse.ArgumentParser(
        prog="boolspec",
        description="Exact Fourier analysis of Boolean functions on F_2^n: supports, "
                    "additive energy, influence and support inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="analyze one function")
    p.add_argument("--input", required=True, help="point-set or truth-table file ('-' for stdin)")
    p.add_argument("--format", choices=("points", "table"), help="input format (default: sniff)")
    p.add_argument("--paranoid", action="store_true",
                   help="cross-check energy and influence by every algorithm")

    p = sub.add_parser("generate", parents=[common], help="write a point-set file to stdout")
    p.add_argument("--kind", required=True, choices=sorted(KIND_ALIASES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="codimension (coordinate-subspace)")
    p.add_argument("--basis", type=_vector, nargs="*", default=[], help="basis vectors")
    p.add_argument("--shift", type=_vector, default=0)
    p.add_argument("--center", type=_vector, default=0)
    p.add_argument("--radius", type=int)
    p.add_argument("--p", type=float, help="inclusion probability (random)")
    p.add_argument("--m", type=int, help="target size (sidon)")
    p.add_argument("--format", choices=("points", "table"), default="points")

    p = sub.add_parser("exhaust", parents=[common], help="check every function on n <= 4")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int, help="check this many seeded random functions instead")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("search", parents=[common], help="local search for tight instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--anneal", action=argparse.BooleanOptionalAction, default=True,
                   help="simulated annealing (default); --no-anneal for strict hill climbing")
    p.add_argument("--temperature", type=float, default=1.0)
    p.add_argument("--cooling", type=float, default=0.995)
    p.add_argument("--init-p", type=float, default=0.5,
                   help="density of the random initial set (default 0.5)")
    p.add_argument("--trace-out", help="write the trace CSV here")
    p.add_argument("--best-out", help="write the best set (point-set format) here")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sweep", parents=[common], help="CSV table across families and n")
    p.add_argument("--family", required=True,
                   help=f"comma-separated subset of {', '.join(SWEEP_FAMILIES)}")
    p.add_argument("--n-range", type=_n_range, required=True, metavar="A..B")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, help="sidon size (default ceil(2^(n/2)))")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--paranoid", action="store_true")
    return parser


def _envelope(args, command: str, digest: str, payload, started: float) -> str:
    timing = (time.perf_counter() - started) * 1000 if args.timing else None
    return emit(ReportEnvelope(command, digest, payload, timing))


def _write_csv(rows, fields, stream):
    w = csv.DictWriter(stream, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})


def cmd_analyze(args, out, err, started) -> int:
    try:
        if args.input == "-":
            f = loads_function(sys.stdin.read(), args.format)
        else:
            f = load_function(args.input, args.format)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}")
    rep = analyze(f, paranoid=args.paranoid)
    for w in rep.warnings:
        print(f"warning: {w}", file=err)
    if args.output == "csv":
        _write_csv([analysis_row(rep)], CSV_FIELDS, out)
    else:
        out.write(_envelope(args, "analyze", function_digest(f), rep, started))
    th = rep.theorem
    if th is not None and (not th.classical.holds or (not th.degenerate and not th.comparison.holds)):
        return EXIT_VIOLATION
    if rep.corollary is not None and rep.corollary.chain_holds is False:
        return EXIT_VIOLATION
    return EXIT_OK


def _generator_spec(args) -> GeneratorSpec:
    kind = KIND_ALIASES[args.kind]
    return GeneratorSpec(kind=kind, n=args.n, k=args.k, basis=tuple(args.basis),
                         shift=args.shift, center=args.center, radius=args.radius,
                         p=args.p, m=args.m, seed=args.seed)


def cmd_generate(args, out, err, started) -> int:
    pts, complete = generate(_generator_spec(args))
    if not complete:
        print(f"warning: target size {args.m} unreachable; emitted {len(pts)} points", file=err)
    out.write(dump_table(from_points(pts.n, pts)) if args.format == "table" else dump_points(pts))
    return EXIT_OK


def cmd_exhaust(args, out, err, started) -> int:
    if args.sample is None and args.n > exhaustive.MAX_EXHAUSTIVE_N:
        raise UsageError(f"--n {args.n} exceeds {exhaustive.MAX_EXHAUSTIVE_N} for full "
                         f"enumeration; use --sample N")
    if args.sample is not None:
        summary = exhaustive.sampled(args.n, args.sample, args.seed)
        digest = input_digest(f"exhaust n={args.n} sample={args.sample} seed={args.seed}".encode())
    else:
        summary = exhaustive.enumerate_all(args.n, workers=args.workers)
        digest = input_digest(f"exhaust n={args.n}".encode())
    out.write(_envelope(args, "exhaust", digest, summary, started))
    if summary.violations or summary.classical_violations:
        print(f"error: {summary.violations} theorem and {summary.classical_violations} "
              f"classical violations", file=err)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_search(args, out, err, started) -> int:
    init = GeneratorSpec("random_density", args.n, p=args.init_p, seed=args.seed)
    config = SearchConfig(n=args.n, initial=init, max_iterations=args.iters,
                          restarts=args.restarts, annealing=args.anneal,
                          initial_temperature=args.temperature, cooling=args.cooling,
                          seed=args.seed)
    trace = run(config, workers=args.workers)
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8", newline="") as fh:
            fh.write(trace.to_csv())
    if args.best_out and trace.best is not None:
        with open(args.best_out, "w", encoding="utf-8") as fh:
            fh.write(dump_points(trace.best))
    if args.output == "csv":
        out.write(trace.to_csv())
        return EXIT_OK
    summary = SearchSummary.from_trace(trace, args.n, args.restarts, args.iters)
    digest = input_digest(repr(config).encode())
    out.write(_envelope(args, "search", digest, summary, started))
    return EXIT_OK


def sweep_rows(families, lo: int, hi: int, *, k=1, m=None, radius=1, p=0.5, seed=0,
               paranoid=False):
    rows = []
    for family in sorted(families):
        for n in range(lo, hi + 1):
            if family == "subspace":
                spec = GeneratorSpec("coordinate_subspace", n, k=k)
            elif family == "sidon":
                spec = GeneratorSpec("sidon_greedy", n, m=m or math.ceil(2 ** (n / 2)), seed=seed)
            elif family == "ball":
                spec = GeneratorSpec("hamming_ball", n, radius=radius)
            else:
                spec = GeneratorSpec("random_density", n, p=p, seed=seed)
            pts, complete = generate(spec)
            rep = analyze(from_points(n, pts), paranoid=paranoid)
            row = {"family": family, "params": spec.describe(), "target_reached": int(complete)}
            row.update(analysis_row(rep))
            rows.append(row)
    return rows


def cmd_sweep(args, out, err, started) -> int:
    families = [f.strip() for f in args.family.split(",") if f.strip()]
    unknown = set(families) - set(SWEEP_FAMILIES)
    if unknown or not families:
        raise UsageError(f"unknown family {sorted(unknown)}; choose from {SWEEP_FAMILIES}")
    lo, hi = args.n_range
    if lo > hi:
        raise UsageError(f"empty range {lo}..{hi}")
    rows = sweep_rows(families, lo, hi, k=args.k, m=args.m, radius=args.radius, p=args.p,
                      seed=args.seed, paranoid=args.paranoid)
    _write_csv(rows, ("family", "params", "target_reached") + CSV_FIELDS, out)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "generate": cmd_generate, "exhaust": cmd_exhaust,
            "search": cmd_search, "sweep": cmd_sweep}


def main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved = os.environ.get("BOOLSPEC_MAX_N")
    if args.max_n is not None:
        os.environ["BOOLSPEC_MAX_N"] = str(args.max_n)
    started = time.perf_counter()
    try:
        return COMMANDS[args.command](args, out, err, started)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
    except (BoolSpecError, UsageError) as exc:
        print(f"error: {exc}", file=err)
    finally:
        # the override is scoped to this invocation
        if saved is None:
            os.environ.pop("BOOLSPEC_MAX_N", None)
        else:
            os.environ["BOOLSPEC_MAX_N"] = saved
    return EXIT_USAGE


def run_captured(argv) -> tuple[int, str, str]:
    """Run the CLI in-process, returning (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
