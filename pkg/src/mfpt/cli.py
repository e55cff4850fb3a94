"""Command line harness: accuracy sweeps, timing, generation, validation.

Subcommands
-----------
run
    Accuracy sweep over problems x procedures x precisions. One output
    row per (procedure, problem, precision) carrying the residual
    statistics and, when both precisions run, the cross-precision
    comparison (duplicated on both rows of a pair). A failing cell
    yields a row with status "failed" and NaN metrics; it never aborts
    the sweep.
bench
    Timing sweep: per cell one untimed warmup repetition, then --reps
    timed repetitions on the monotonic clock, reported as the mean.
    Cells run serially.
gen
    Write a random sparse irreducible chain to a file (seeded;
    identical arguments give byte-identical files).
validate
    Load a matrix file, check stochasticity and irreducibility; exit 0
    only if both hold.

Output goes to stdout or --out; a relative --out resolves against
$MFPT_REPORT_DIR when that is set. NaN is serialized as literal NaN in
CSV/markdown and as null in JSON. The row schema is documented in the
README (schema v1).
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from .exceptions import MatrixFileError
from .linalg import resolve_dtype
from .metrics import accuracy_report, precision_compare
from .problems import builtin_problem, generate_sparse, list_problems, load_matrix, save_matrix
from .registry import PROCEDURES, get_procedure
from .validation import check_transition_matrix, is_irreducible

DEFAULT_PROBLEMS = "tp1,tp2,tp3,tp41,tp42,tp43,tp44"

RUN_COLUMNS = (
    "procedure", "method", "problem", "n_states", "precision", "status", "error",
    "pze", "ore", "minare", "maxare",
    "aned", "aned_terms", "excluded", "rel", "minae", "maxae",
)

BENCH_COLUMNS = (
    "procedure", "method", "problem", "n_states", "precision",
    "reps", "mean_seconds", "status", "error",
)


def _parse_procs(text):
    text = text.strip()
    if not text:
        raise argparse.ArgumentTypeError("empty procedure list")
    if text.lower() == "all":
        return [p.number for p in PROCEDURES]
    numbers = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise argparse.ArgumentTypeError(f"empty item in procedure list {text!r}")
        if "-" in chunk:
            lo, _, hi = chunk.partition("-")
            if not (lo.strip().isdigit() and hi.strip().isdigit()):
                raise argparse.ArgumentTypeError(f"bad procedure range {chunk!r}")
            span = range(int(lo), int(hi) + 1)
            if not span:
                raise argparse.ArgumentTypeError(f"empty procedure range {chunk!r}")
            numbers.extend(span)
        else:
            try:
                numbers.append(int(chunk))
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad procedure id {chunk!r}") from None
    for n in numbers:
        try:
            get_procedure(n)
        except KeyError as exc:
            raise argparse.ArgumentTypeError(exc.args[0]) from None
    seen = set()
    return [n for n in numbers if not (n in seen or seen.add(n))]


def _parse_problems(text):
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise argparse.ArgumentTypeError("empty problem list")
    return names


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _resolve_out(out):
    if out is None:
        return None
    path = Path(out)
    if not path.is_absolute():
        base = os.environ.get("MFPT_REPORT_DIR")
        if base:
            path = Path(base) / path
    return path


def _load_problem(name):
    if name.lower() in list_problems():
        return name.lower(), builtin_problem(name)
    if Path(name).exists():
        return name, load_matrix(name)
    sys.stderr.write(
        f"error: {name!r} is neither a built-in problem nor an existing file; "
        f"built-ins: {', '.join(list_problems())}\n"
    )
    raise SystemExit(2)


def _fmt_float(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "NaN"
    if isinstance(v, float) and math.isinf(v):
        return "Inf" if v > 0 else "-Inf"
    return repr(float(v))


def _cell(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return _fmt_float(value)
    return str(value)


def _render(rows, columns, fmt):
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])
        return out.getvalue()
    if fmt == "json":
        def clean(v):
            if isinstance(v, float) and (math.isnan(v) or math.isinf(v)):
                return None
            if isinstance(v, np.integer):
                return int(v)
            return v
        payload = [{c: clean(row[c]) for c in columns} for row in rows]
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"
    if fmt == "md":
        lines = ["| " + " | ".join(columns) + " |",
                 "| " + " | ".join("---" for _ in columns) + " |"]
        for row in rows:
            lines.append("| " + " | ".join(_cell(row[c]) for c in columns) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _emit(text, out):
    path = _resolve_out(out)
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _precisions(mode):
    return ("double", "single") if mode == "both" else (mode,)


_NAN_METRICS = {
    "pze": math.nan, "ore": math.nan, "minare": math.nan, "maxare": math.nan,
}
_NAN_COMPARE = {
    "aned": math.nan, "aned_terms": 0, "excluded": 0,
    "rel": math.nan, "minae": math.nan, "maxae": math.nan,
}


def _compute_cell(proc, p, precision):
    try:
        result = proc.compute(p, dtype=resolve_dtype(precision))
        return result.mfpt, ""
    except Exception as exc:  # sweep isolation: any cell failure is recorded, never fatal
        return None, f"{type(exc).__name__}: {exc}"


def cmd_run(args):
    problems = [_load_problem(name) for name in args.problems]
    rows = []
    for label, p in problems:
        n = p.shape[0]
        for number in args.procs:
            proc = get_procedure(number)
            computed = {}
            errors = {}
            for precision in _precisions(args.precision):
                computed[precision], errors[precision] = _compute_cell(proc, p, precision)
            compare = dict(_NAN_COMPARE)
            if args.precision == "both" and computed["double"] is not None \
                    and computed["single"] is not None:
                pc = precision_compare(computed["double"], computed["single"])
                compare = {
                    "aned": pc.aned, "aned_terms": pc.terms, "excluded": pc.excluded,
                    "rel": pc.rel, "minae": pc.minae, "maxae": pc.maxae,
                }
            for precision in _precisions(args.precision):
                mfpt = computed[precision]
                base = {
                    "procedure": proc.number, "method": proc.key, "problem": label,
                    "n_states": n, "precision": precision,
                }
                if mfpt is None:
                    base.update(status="failed", error=errors[precision], **_NAN_METRICS)
                else:
                    report = accuracy_report(p, mfpt)
                    base.update(
                        status="ok", error="",
                        pze=report.pze, ore=report.ore,
                        minare=report.minare, maxare=report.maxare,
                    )
                base.update(compare)
                rows.append(base)
    _emit(_render(rows, RUN_COLUMNS, args.format), args.out)
    return 0


def cmd_bench(args):
    problems = [_load_problem(name) for name in args.problems]
    rows = []
    for label, p in problems:
        n = p.shape[0]
        for number in args.procs:
            proc = get_procedure(number)
            for precision in _precisions(args.precision):
                dtype = resolve_dtype(precision)
                row = {
                    "procedure": proc.number, "method": proc.key, "problem": label,
                    "n_states": n, "precision": precision, "reps": args.reps,
                }
                try:
                    proc.compute(p, dtype=dtype)  # warmup, untimed
                    start = time.perf_counter()
                    for _ in range(args.reps):
                        proc.compute(p, dtype=dtype)
                    elapsed = time.perf_counter() - start
                    row.update(mean_seconds=elapsed / args.reps, status="ok", error="")
                except Exception as exc:
                    row.update(
                        mean_seconds=math.nan, status="failed",
                        error=f"{type(exc).__name__}: {exc}",
                    )
                rows.append(row)
    _emit(_render(rows, BENCH_COLUMNS, args.format), args.out)
    return 0


def cmd_gen(args):
    p = generate_sparse(args.m, zero_proportion=args.zero_proportion, seed=args.seed)
    path = _resolve_out(args.out)
    save_matrix(path, p)
    nnz = int(np.count_nonzero(p))
    sys.stdout.write(
        f"wrote {path}: {args.m} states, {nnz} nonzeros, "
        f"zero_proportion={args.zero_proportion}, seed={args.seed}\n"
    )
    return 0


def cmd_validate(args):
    try:
        p = load_matrix(args.path)
    except MatrixFileError as exc:
        sys.stdout.write(f"parse error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stdout.write(f"cannot read {args.path}: {exc}\n")
        return 1
    try:
        p = check_transition_matrix(p)
    except ValueError as exc:
        sys.stdout.write(f"invalid transition matrix: {exc}\n")
        return 1
    if not is_irreducible(p):
        sys.stdout.write(
            f"{args.path}: valid transition matrix ({p.shape[0]} states) but reducible\n"
        )
        return 1
    sys.stdout.write(f"{args.path}: valid irreducible transition matrix, {p.shape[0]} states\n")
    return 0


def _add_common(sub):
    sub.add_argument("--problems", type=_parse_problems, default=_parse_problems(DEFAULT_PROBLEMS),
                     help=f"comma-separated built-in names or file paths (default: {DEFAULT_PROBLEMS})")
    sub.add_argument("--procs", type=_parse_procs, default=_parse_procs("all"),
                     help="procedure ids: 'all', or a list like '1,2,9' or '10-12'")
    sub.add_argument("--precision", choices=("single", "double", "both"), default="both",
                     help="working precision(s) to run (default: both)")
    sub.add_argument("--format", choices=("csv", "json", "md"), default="csv",
                     help="output format (default: csv)")
    sub.add_argument("--seed", type=int, default=0,
                     help="seed for generated inputs (recorded; built-ins ignore it)")
    sub.add_argument("--out", default=None,
                     help="output path (default: stdout); relative paths resolve "
                          "against $MFPT_REPORT_DIR when set")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mfpt",
        description="Mean first passage time procedures: accuracy sweeps, timing, "
                    "problem generation and validation.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="accuracy sweep over problems x procedures x precisions")
    _add_common(run)
    run.set_defaults(fn=cmd_run)

    bench = subs.add_parser("bench", help="timing sweep (1 warmup + --reps timed, serial)")
    _add_common(bench)
    bench.add_argument("--reps", type=_positive_int, default=5,
                       help="timed repetitions per cell, >= 1 (default: 5)")
    bench.set_defaults(fn=cmd_bench)

    gen = subs.add_parser("gen", help="generate a random sparse irreducible chain file")
    gen.add_argument("--m", type=_positive_int, required=True, help="number of states")
    gen.add_argument("--zero-proportion", type=float, default=0.6,
                     help="expected zero fraction off the diagonal (default: 0.6)")
    gen.add_argument("--seed", type=int, default=0, help="PRNG seed (default: 0)")
    gen.add_argument("--out", required=True,
                     help="output file (.mtx or .csv); relative paths resolve "
                          "against $MFPT_REPORT_DIR when set")
    gen.set_defaults(fn=cmd_gen)

    val = subs.add_parser("validate", help="validate a matrix file as an irreducible chain")
    val.add_argument("path", help="matrix file to check")
    val.set_defaults(fn=cmd_validate)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
