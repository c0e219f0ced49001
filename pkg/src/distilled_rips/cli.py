"""Command-line entry point: ``distilled-rips {compute,stats,bench,crnc}``.

Exit codes: 0 success, 1 usage or parse error, 2 oracle mismatch,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import datasets
from .core import FORMATS, DistanceMatrix, InputError, load_points, read_points
from .distill import build_dvr, dvr_stats
from .oracle import DEFAULT_CAP, OracleCapExceeded, full_vr_barcode
from .persistence import build_filtration, extract_barcode, ph0, reduce
from .rnc import ResourceCapExceeded, crnc, export_csv, export_skeleton, rnc

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_CAP = 0, 1, 2, 3

log = logging.getLogger("distilled_rips")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.replace(" ", "").split(",") if s]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="distilled-rips", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    # -v is accepted after the subcommand too; SUPPRESS keeps the top-level value otherwise
    verbose = argparse.ArgumentParser(add_help=False)
    verbose.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    def add_input(sp):
        sp.add_argument("--input", required=True, type=Path)
        sp.add_argument("--format", choices=FORMATS, default="points-csv")
        sp.add_argument("--workers", type=_positive, default=None,
                        help="worker threads (default: all cores)")
        sp.add_argument("--low-memory", action="store_true", help="do not store the matching")
        sp.add_argument("--output", type=Path, default=None, help="output file (default: stdout)")

    c = sub.add_parser("compute", parents=[verbose], help="degree-1 barcode through the distilled complex")
    add_input(c)
    c.add_argument("--degree", type=int, default=1)
    c.add_argument("--oracle", action="store_true",
                   help=f"cross-check against the full complex (n <= {DEFAULT_CAP})")
    c.add_argument("--json", action="store_true")
    c.add_argument("--with-ph0", action="store_true", help="include degree-0 intervals")
    c.add_argument("--no-clearing", action="store_true")

    s = sub.add_parser("stats", parents=[verbose], help="size statistics of the distilled complex as JSON")
    add_input(s)
    s.add_argument("--degree", type=int, default=1)
    s.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")

    b = sub.add_parser("bench", parents=[verbose], help="distilled complex size over a series of sampled clouds")
    b.add_argument("--sizes", type=_sizes, default=[50, 100, 200, 300, 400, 500, 600, 700])
    b.add_argument("--shape", choices=datasets.SHAPES, default="cube")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--workers", type=_positive, default=None)
    b.add_argument("--low-memory", action="store_true")
    b.add_argument("--output", type=Path, default=None)
    b.add_argument("--no-timing", action="store_true", help="omit the wall_ms column")

    r = sub.add_parser("crnc", parents=[verbose], help="export the clipped relative neighborhood complex")
    add_input(r)
    r.add_argument("--q", type=int, choices=(1, 2), default=1)
    r.add_argument("--rnc", action="store_true", help="export the unclipped complex instead")
    r.add_argument("--csv", action="store_true", help="write q,v0,v1[,v2] rows instead of OBJ")
    return p


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def _check_degree(degree: int) -> None:
    if degree != 1:
        raise UsageError(
            f"degree {degree} is not supported; only degree-1 barcodes are computed "
            "(higher degrees are expected to be far too slow with this construction)")


def cmd_compute(args) -> int:
    _check_degree(args.degree)
    D = load_points(args.input, args.format)
    ref = full_vr_barcode(D) if args.oracle else None
    cx = build_dvr(D, 1, workers=args.workers, low_memory=args.low_memory)
    pairs = reduce(build_filtration(cx.simplices), clearing=not args.no_clearing)
    bars = extract_barcode(pairs, 1)
    if args.with_ph0:
        bars = bars | ph0(D)
    _emit(bars.to_json() + "\n" if args.json else bars.to_csv(), args.output)
    if ref is not None:
        if ref.degree(1) != bars.degree(1):
            log.error("oracle mismatch: distilled %s vs full %s", bars.degree(1), ref.degree(1))
            return EXIT_MISMATCH
        log.info("oracle: degree-1 barcodes agree (%d intervals)", len(ref))
    return EXIT_OK


def cmd_stats(args) -> int:
    _check_degree(args.degree)
    D = load_points(args.input, args.format)
    cx = build_dvr(D, 1, workers=args.workers, low_memory=args.low_memory)
    _emit(dvr_stats(cx).to_json(timing=not args.no_timing) + "\n", args.output)
    return EXIT_OK


def linear_fit(x, y) -> tuple[float, float, float]:
    """Least-squares slope, intercept and R^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    A = np.column_stack([x, np.ones_like(x)])
    (slope, icpt), *_ = np.linalg.lstsq(A, y, rcond=None)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float(((y - A @ [slope, icpt]) ** 2).sum()) / ss_tot if ss_tot > 0 else float("nan")
    return float(slope), float(icpt), r2


def bench_rows(sizes, shape: str, seed: int, workers=None, low_memory=False) -> list[dict]:
    rows = []
    for n in sizes:
        D = DistanceMatrix.from_points(datasets.make_cloud(shape, n, seed=seed))
        t0 = time.perf_counter()
        cx = build_dvr(D, 1, workers=workers, low_memory=low_memory)
        st = dvr_stats(cx)
        rows.append({"n": D.n, "n_top": st.n_top, "b_x": st.b_x,
                     "wall_ms": (time.perf_counter() - t0) * 1e3})
    return rows


def cmd_bench(args) -> int:
    rows = bench_rows(args.sizes, args.shape, args.seed, args.workers, args.low_memory)
    cols = ["n", "n_top", "b_x"] + ([] if args.no_timing else ["wall_ms"])
    lines = [",".join(cols)]
    for r in rows:
        lines.append(",".join(f"{r[c]:.1f}" if c == "wall_ms" else str(r[c]) for c in cols))
    _emit("\n".join(lines) + "\n", args.output)
    if len(rows) >= 2:
        slope, icpt, r2 = linear_fit([r["n"] for r in rows], [r["n_top"] for r in rows])
        print(f"linear fit n_top ~ n: slope={slope:.4f} intercept={icpt:.2f} R^2={r2:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_crnc(args) -> int:
    D = load_points(args.input, args.format)
    points = read_points(args.input) if args.format == "points-csv" else None
    elements = rnc(D, args.q, workers=args.workers) if args.rnc else crnc(D, args.q, workers=args.workers)
    out = args.output
    if args.csv:
        if out is None:
            sys.stdout.writelines(",".join(map(str, (args.q, *e))) + "\n" for e in elements)
        else:
            export_csv(elements, out)
        return EXIT_OK
    if out is None:
        raise UsageError("OBJ export needs --output")
    export_skeleton(elements, out, points=points, D=D, q=args.q)
    log.info("wrote %d %d-simplices to %s", len(elements), args.q, out)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "stats": cmd_stats, "bench": cmd_bench, "crnc": cmd_crnc}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InputError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"distilled-rips: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleCapExceeded, ResourceCapExceeded) as exc:
        print(f"distilled-rips: error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
