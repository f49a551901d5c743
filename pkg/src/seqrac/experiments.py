"""Table reproduction, schedule runs and parameter sweeps behind the CLI."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from .config import ExperimentConfig
from .engine import PairConfig, PairRecord, count_significant, round_half_away, run_sequence
from .errors import BadInput, GoldenMismatch, UnknownParameter
from .golden import GOLDEN_ATOL, TABLES, GoldenBlock
from .states import BellDiagonalState, TaskKind
from .tolerances import DEFAULT_PRECISION, DEFAULT_SIGNIFICANCE

RUN_COLUMNS = (
    "k", "p", "lambda", "eta",
    "t11_in", "t22_in", "t33_in",
    "pmin_2to1", "pmin_3to1",
    "advantage", "significant",
    "t11_out", "t22_out", "t33_out",
)  # fmt: skip
REPRODUCE_COLUMNS = ("table", "block", "k", "lambda", "eta", "pmin", "golden", "status")
SWEEP_COLUMNS = ("parameter", "value", "pmin_2to1_first", "pmin_3to1_first", "significant_count")
SWEEP_PARAMETERS = ("lambda", "eta", "lambda=eta", "p", "threshold")

TAIL_PAIRS = 3


def _rounded(value: Optional[float], precision: int) -> Optional[float]:
    return None if value is None else round_half_away(value, precision)


def record_row(rec: PairRecord, precision: int = DEFAULT_PRECISION) -> dict:
    return {
        "k": rec.index_k,
        "p": rec.config.task_mix_p,
        "lambda": rec.config.lam,
        "eta": rec.config.eta,
        "t11_in": rec.state_in.t11,
        "t22_in": rec.state_in.t22,
        "t33_in": rec.state_in.t33,
        "pmin_2to1": _rounded(rec.p_min_2to1, precision),
        "pmin_3to1": _rounded(rec.p_min_3to1, precision),
        "advantage": rec.advantage,
        "significant": rec.significant,
        "t11_out": rec.state_out.t11,
        "t22_out": rec.state_out.t22,
        "t33_out": rec.state_out.t33,
    }


def run_config(cfg: ExperimentConfig) -> list[PairRecord]:
    return run_sequence(cfg.initial_state, cfg.schedule, cfg.significance_threshold, cfg.precision)


# -- table reproduction -------------------------------------------------------


@dataclass(frozen=True)
class BlockResult:
    table: str
    block: int
    golden: GoldenBlock
    records: tuple[PairRecord, ...]
    significant_count: int
    rows: tuple[dict, ...]
    mismatches: tuple[str, ...]


def block_schedule(block: GoldenBlock, tail_pairs: int = TAIL_PAIRS) -> list[PairConfig]:
    p = 1.0 if block.task is TaskKind.RAC_2TO1 else 0.0
    listed = [PairConfig(p, lam, eta) for lam, eta, _ in block.rows]
    return listed + [PairConfig(p, *block.tail)] * tail_pairs


def reproduce_block(table: str, index: int, block: GoldenBlock, threshold=DEFAULT_SIGNIFICANCE) -> BlockResult:
    records = run_sequence(BellDiagonalState.singlet(), block_schedule(block), threshold)
    rows, mismatches = [], []
    for rec in records:
        pmin = rec.p_min(block.task)
        shown = round_half_away(pmin, 3)
        k = rec.index_k
        if k <= len(block.rows):
            golden = block.rows[k - 1][2]
            ok = abs(shown - golden) <= GOLDEN_ATOL
            status = "ok" if ok else "mismatch"
            if not ok:
                mismatches.append(f"{table} block {index} pair {k}: computed {shown:.3f}, golden {golden:.3f}")
        else:
            golden = None
            ok = rec.gap(block.task) > 0 and shown < threshold
            status = "tail-ok" if ok else "tail-mismatch"
            if not ok:
                mismatches.append(
                    f"{table} block {index} pair {k}: computed {shown:.3f}, "
                    f"expected 1/2 < P_min < {threshold:.3f}"
                )
        rows.append({
            "table": table, "block": index, "k": k,
            "lambda": rec.config.lam, "eta": rec.config.eta,
            "pmin": shown, "golden": golden, "status": status,
        })  # fmt: skip
    count = count_significant(records, threshold)
    if count != block.significant_count:
        mismatches.append(
            f"{table} block {index}: {count} significant pairs, golden {block.significant_count}"
        )
    return BlockResult(table, index, block, tuple(records), count, tuple(rows), tuple(mismatches))


def reproduce_table(table: str) -> list[BlockResult]:
    try:
        blocks = TABLES[table]
    except KeyError:
        raise BadInput(f"unknown table {table!r}; choose from {sorted(TABLES)}") from None
    return [reproduce_block(table, i, b) for i, b in enumerate(blocks, 1)]


def check_golden(results: Iterable[BlockResult]) -> None:
    for res in results:
        if res.mismatches:
            raise GoldenMismatch(res.mismatches[0])


# -- sweeps -------------------------------------------------------------------


def _apply(cfg: ExperimentConfig, parameter: str, value: float) -> ExperimentConfig:
    if parameter == "threshold":
        return replace(cfg, significance_threshold=value)
    fields = {
        "lambda": ("lam",),
        "eta": ("eta",),
        "lambda=eta": ("lam", "eta"),
        "p": ("task_mix_p",),
    }[parameter]
    return cfg.with_schedule(replace(pc, **{f: value for f in fields}) for pc in cfg.schedule)


def sweep(cfg: ExperimentConfig, parameter: str, values: Sequence[float]) -> list[dict]:
    """One row per swept value: first-pair P_min for both codes and the significant count."""
    if parameter == "sharpness":
        parameter = "lambda=eta"
    if parameter not in SWEEP_PARAMETERS:
        raise UnknownParameter(f"cannot sweep {parameter!r}; choose from {SWEEP_PARAMETERS}")
    rows = []
    for value in values:
        swept = _apply(cfg, parameter, float(value))
        records = run_config(swept)
        first = records[0]
        rows.append({
            "parameter": parameter,
            "value": float(value),
            "pmin_2to1_first": _rounded(first.p_min_2to1, swept.precision),
            "pmin_3to1_first": _rounded(first.p_min_3to1, swept.precision),
            "significant_count": count_significant(records, swept.significance_threshold, swept.precision),
        })  # fmt: skip
    return rows
