"""
Command-line front end.

    seqrac reproduce {table1|table2}
    seqrac run --config PATH
    seqrac classical {2to1|3to1} [--grid N]
    seqrac sweep --config PATH --param NAME --values V1,V2,...

Shared flags: --format {csv|json-lines}, --output PATH, --threshold X.
Exit codes: 0 success, 1 golden mismatch or bound violation, 2 configuration error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import sys
from dataclasses import replace

from . import __version__
from .classical import MIN_GRID_STEPS, MODEL_HEADER, classical_optimum
from .config import OUTPUT_FORMATS, ExperimentConfig, load_config
from .engine import round_half_away
from .errors import ConfigError, RacError
from .experiments import (
    REPRODUCE_COLUMNS,
    RUN_COLUMNS,
    SWEEP_COLUMNS,
    SWEEP_PARAMETERS,
    record_row,
    reproduce_table,
    run_config,
    sweep,
)
from .measurements import bit_strings
from .tolerances import CLASSICAL_BOUND_SLACK

log = logging.getLogger("seqrac")

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG = 0, 1, 2


def _cell(value, precision=None):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and precision is not None:
        return f"{value:.{precision}f}"
    return repr(value) if isinstance(value, float) else str(value)


def write_rows(rows, columns, fmt, out, rounded=(), precision=3, comments=()):
    """Emit ``rows`` as CSV (with optional trailing ``#`` comments) or JSON lines."""
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c], precision if c in rounded else None) for c in columns])
        for line in comments:
            out.write(f"# {line}\n")
    else:
        for row in rows:
            out.write(json.dumps({c: row[c] for c in columns}) + "\n")


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _parse_values(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise ConfigError(f"--values must be a comma-separated list of numbers, got {text!r}") from None
    if not values:
        raise ConfigError("--values is empty")
    return values


def _config_with_flags(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    if args.threshold is not None:
        cfg = replace(cfg, significance_threshold=args.threshold)
    if args.format is not None:
        cfg = replace(cfg, output_format=args.format)
    return cfg


def cmd_reproduce(args) -> int:
    results = reproduce_table(args.table)
    fmt = args.format or "csv"
    rows = [row for res in results for row in res.rows]
    comments = [
        f"block {r.block}: {r.significant_count} significant pairs (golden {r.golden.significant_count})"
        for r in results
    ]
    with _output(args.output) as out:
        write_rows(rows, REPRODUCE_COLUMNS, fmt, out, rounded=("pmin", "golden"), comments=comments)
        if fmt == "json-lines":
            for r in results:
                out.write(json.dumps({
                    "table": r.table, "block": r.block,
                    "significant_count": r.significant_count,
                    "golden_count": r.golden.significant_count,
                }) + "\n")  # fmt: skip
    mismatches = [m for r in results for m in r.mismatches]
    if mismatches:
        log.error("golden mismatch: %s", mismatches[0])
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = _config_with_flags(args)
    records = run_config(cfg)
    with _output(args.output) as out:
        write_rows(
            [record_row(r, cfg.precision) for r in records],
            RUN_COLUMNS,
            cfg.output_format,
            out,
            rounded=("pmin_2to1", "pmin_3to1"),
            precision=cfg.precision,
        )
    return EXIT_OK


def cmd_classical(args) -> int:
    grid = args.grid
    if grid < MIN_GRID_STEPS:
        log.warning("grid %d is below the minimum; clamped to %d", grid, MIN_GRID_STEPS)
        grid = MIN_GRID_STEPS
    res = classical_optimum(args.task, grid)
    st = res.strategy
    n = res.task.n
    report = {
        "task": res.task.value,
        "optimum": res.value,
        "optimum_rounded": round_half_away(res.value, 3),
        "bound": 0.5,
        "within_bound": res.within_bound,
        "grid_steps": res.grid_steps,
        "grid_points": res.grid_points,
        "model": MODEL_HEADER,
        "shared_dist": {f"{a}{b}": float(st.shared_dist[2 * a + b]) for a in (0, 1) for b in (0, 1)},
        "encoder": {"".join(map(str, x)): st.encoder[i].tolist() for i, x in enumerate(bit_strings(n))},
        "decoder": {f"y={y}": st.decoder[y].tolist() for y in range(n)},
    }
    with _output(args.output) as out:
        if args.format == "json-lines":
            out.write(json.dumps(report) + "\n")
        else:
            out.write(f"# {MODEL_HEADER}\n")
            out.write(f"task: {report['task']}\n")
            out.write(f"grid: {res.grid_steps} steps, {res.grid_points} distributions\n")
            out.write(f"optimum: {res.value:.12f} ({report['optimum_rounded']:.3f})\n")
            out.write(f"shared_dist (lam_a lam_b): {report['shared_dist']}\n")
            out.write(f"encoder x -> [msg|lam_a=0, msg|lam_a=1]: {report['encoder']}\n")
            out.write(f"decoder y -> [[m=0: lam_b=0, lam_b=1], [m=1: ...]]: {report['decoder']}\n")
    if not res.within_bound:
        log.error("classical optimum %.12f exceeds 1/2 + %g", res.value, CLASSICAL_BOUND_SLACK)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config_with_flags(args)
    rows = sweep(cfg, args.param, _parse_values(args.values))
    with _output(args.output) as out:
        write_rows(
            rows,
            SWEEP_COLUMNS,
            cfg.output_format,
            out,
            rounded=("pmin_2to1_first", "pmin_3to1_first"),
            precision=cfg.precision,
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None)
    common.add_argument("--output", default=None, help="output file (default: standard output)")
    common.add_argument("--threshold", type=float, default=None, help="significance threshold")

    parser = argparse.ArgumentParser(prog="seqrac", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce", parents=[common], help="regenerate a golden table")
    p.add_argument("table", choices=("table1", "table2"))
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("run", parents=[common], help="run a schedule from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("classical", parents=[common], help="classical baseline by enumeration")
    p.add_argument("task", choices=("2to1", "3to1"))
    p.add_argument("--grid", type=int, default=21)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("sweep", parents=[common], help="sweep one parameter over a config")
    p.add_argument("--config", required=True)
    p.add_argument("--param", required=True, help=f"one of {', '.join(SWEEP_PARAMETERS)}")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except RacError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
