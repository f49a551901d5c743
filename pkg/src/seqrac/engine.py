"""
Success probabilities and state evolution for sequential 2→1 / 3→1 codes.

Each pair k shares a Bell-diagonal state, plays the 2→1 code with
probability ``p`` and the 3→1 code otherwise, with sender sharpness ``lam``
and receiver sharpness ``eta``. Inputs are always uniform.

Two independent routes are kept side by side:

* closed forms on the correlation triple (``p_min_closed``, ``evolve_closed``)
* explicit density-matrix evaluation (``success_probability``,
  ``p_min_bruteforce``, ``evolve_oracle``)

so the former can be checked against the latter.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import BadInput, DegenerateState, UnderflowWarning
from .measurements import (
    MeasurementSpec,
    bit_strings,
    check_sharpness,
    decoding_directions,
    effect,
    encoding_directions,
    sqrt_effect,
)
from .states import BellDiagonalState, TaskKind, to_density
from .tolerances import DEFAULT_PRECISION, DEFAULT_SIGNIFICANCE, UNDERFLOW_FLOOR


@dataclass(frozen=True)
class PairConfig:
    """Protocol parameters of one observer pair.

    ``task_mix_p`` is the probability of playing the 2→1 code; the 3→1 code
    is played with probability ``1 - task_mix_p``.
    """

    task_mix_p: float = 1.0
    lam: float = 1.0
    eta: float = 1.0

    def __post_init__(self):
        p = float(self.task_mix_p)
        if not 0 <= p <= 1:
            raise BadInput(f"task_mix_p must lie in [0, 1], got {p!r}")
        object.__setattr__(self, "task_mix_p", p)
        object.__setattr__(self, "lam", check_sharpness(self.lam))
        object.__setattr__(self, "eta", check_sharpness(self.eta))

    def active_tasks(self) -> tuple[TaskKind, ...]:
        tasks = []
        if self.task_mix_p > 0:
            tasks.append(TaskKind.RAC_2TO1)
        if self.task_mix_p < 1:
            tasks.append(TaskKind.RAC_3TO1)
        return tuple(tasks)


@dataclass(frozen=True)
class PairRecord:
    index_k: int
    config: PairConfig
    state_in: BellDiagonalState
    p_min_2to1: Optional[float]
    p_min_3to1: Optional[float]
    # P_min - 1/2, kept separately: it stays resolvable long after P_min rounds to 0.5
    gap_2to1: Optional[float]
    gap_3to1: Optional[float]
    advantage: bool
    significant: bool
    state_out: BellDiagonalState

    def p_min(self, task) -> Optional[float]:
        return self.p_min_2to1 if TaskKind.parse(task) is TaskKind.RAC_2TO1 else self.p_min_3to1

    def gap(self, task) -> Optional[float]:
        return self.gap_2to1 if TaskKind.parse(task) is TaskKind.RAC_2TO1 else self.gap_3to1


def round_half_away(value: float, decimals: int) -> float:
    quantum = Decimal(1).scaleb(-decimals)
    return float(Decimal(value).quantize(quantum, rounding=ROUND_HALF_UP))


def _task_axes(s: BellDiagonalState, task: TaskKind) -> np.ndarray:
    t = s.as_array()
    return t[:2] if task is TaskKind.RAC_2TO1 else t


def _scaled(components: np.ndarray, task: TaskKind) -> tuple[float, np.ndarray]:
    scale = float(np.max(np.abs(components)))
    if scale == 0:
        axes = "t11 = t22 = 0" if task is TaskKind.RAC_2TO1 else "t11 = t22 = t33 = 0"
        raise DegenerateState(f"{axes}; {task.value} encoding directions are undefined")
    return scale, components / scale


def _check_lengths(task: TaskKind, x, y) -> tuple[tuple[int, ...], int]:
    x = tuple(int(b) for b in x)
    if len(x) != task.n or any(b not in (0, 1) for b in x):
        raise BadInput(f"{task.value} needs {task.n} input bits, got {x!r}")
    if not 0 <= int(y) < task.n:
        raise BadInput(f"query index y={y!r} out of range for {task.value}")
    return x, int(y)


def success_probability(s: BellDiagonalState, task, lam: float, eta: float, x, y) -> float:
    """P(a ⊕ b = x_y) by the Born rule on the full density matrix."""
    task = TaskKind.parse(task)
    x, y = _check_lengths(task, x, y)
    u = encoding_directions(s, task)[x]
    v = decoding_directions(task)[y]
    rho = to_density(s)
    total = 0.0
    for z in (0, 1):
        ea = effect(MeasurementSpec(u, lam, z))
        eb = effect(MeasurementSpec(v, eta, abs(x[y] - z)))
        total += float(np.real(np.trace(rho @ linalg.tensor(ea, eb))))
    return total


def p_min_bruteforce(s: BellDiagonalState, task, lam: float, eta: float) -> float:
    """Worst case of ``success_probability`` over every (x, y)."""
    task = TaskKind.parse(task)
    return min(
        success_probability(s, task, lam, eta, x, y)
        for x in bit_strings(task.n)
        for y in range(task.n)
    )


def advantage_gap(s: BellDiagonalState, task, lam: float, eta: float) -> float:
    """P_min - 1/2 in closed form: lam*eta*min(t_ii^2) / sqrt(sum t_ii^2) / 2.

    Computed on rescaled correlations, so the result is accurate even when
    the correlations are far below sqrt of the smallest double.
    """
    task = TaskKind.parse(task)
    lam, eta = check_sharpness(lam), check_sharpness(eta)
    scale, u = _scaled(_task_axes(s, task), task)
    return 0.5 * lam * eta * scale * float(np.min(u * u)) / math.sqrt(float(u @ u))


def p_min_closed(s: BellDiagonalState, task, lam: float, eta: float) -> float:
    return 0.5 + advantage_gap(s, task, lam, eta)


def evolve_closed(s: BellDiagonalState, task, lam: float, eta: float) -> BellDiagonalState:
    """Correlation triple of the input-averaged Lüders post-measurement state."""
    task = TaskKind.parse(task)
    lam, eta = check_sharpness(lam), check_sharpness(eta)
    eta_damp = math.sqrt(1 - eta * eta)
    lam_damp = math.sqrt(1 - lam * lam)
    t = s.as_array()
    _, u = _scaled(_task_axes(s, task), task)
    sq = u * u
    norm = float(sq.sum())

    if task is TaskKind.RAC_2TO1:
        t11 = t[0] * (1 + eta_damp) * (sq[0] + sq[1] * lam_damp) / (2 * norm)
        t22 = t[1] * (1 + eta_damp) * (sq[1] + sq[0] * lam_damp) / (2 * norm)
        t33 = t[2] * eta_damp * lam_damp
        return BellDiagonalState(t11, t22, t33)

    out = []
    for i in range(3):
        others = sum(sq[j] for j in range(3) if j != i)
        out.append(t[i] * (1 + 2 * eta_damp) * (sq[i] + others * lam_damp) / (3 * norm))
    return BellDiagonalState(*out)


def evolve_mixed(s: BellDiagonalState, cfg: PairConfig) -> BellDiagonalState:
    """Convex mix of the two single-task channels with weights (p, 1 - p)."""
    p = cfg.task_mix_p
    out = np.zeros(3)
    if p > 0:
        out += p * evolve_closed(s, TaskKind.RAC_2TO1, cfg.lam, cfg.eta).as_array()
    if p < 1:
        out += (1 - p) * evolve_closed(s, TaskKind.RAC_3TO1, cfg.lam, cfg.eta).as_array()
    return BellDiagonalState(*out)


def _luders_kraus(s: BellDiagonalState, task: TaskKind, lam: float, eta: float):
    enc = encoding_directions(s, task)
    dec = decoding_directions(task)
    for x, u in enc.items():
        alice = [sqrt_effect(MeasurementSpec(u, lam, a)) for a in (0, 1)]
        for y, v in dec.items():
            bob = [sqrt_effect(MeasurementSpec(v, eta, b)) for b in (0, 1)]
            for ka in alice:
                for kb in bob:
                    yield linalg.tensor(ka, kb)


def evolve_oracle(s: BellDiagonalState, task, lam: float, eta: float) -> linalg.Operator4:
    """Average post-measurement density matrix by the explicit Lüders sum.

    Sums (√E_A ⊗ √E_B) rho (√E_A ⊗ √E_B)† over every input string, query,
    and outcome pair, weighted uniformly over the 2^n * n input settings.
    """
    task = TaskKind.parse(task)
    lam, eta = check_sharpness(lam), check_sharpness(eta)
    rho = to_density(s)
    kraus = np.stack(list(_luders_kraus(s, task, lam, eta)))
    acc = np.einsum("kij,jl,kml->im", kraus, rho, kraus.conj())
    return acc / (2**task.n * task.n)


def evolve_mixed_oracle(s: BellDiagonalState, cfg: PairConfig) -> linalg.Operator4:
    p = cfg.task_mix_p
    acc = np.zeros((4, 4), dtype=np.complex128)
    if p > 0:
        acc += p * evolve_oracle(s, TaskKind.RAC_2TO1, cfg.lam, cfg.eta)
    if p < 1:
        acc += (1 - p) * evolve_oracle(s, TaskKind.RAC_3TO1, cfg.lam, cfg.eta)
    return acc


def is_significant(p_min: Optional[float], threshold: float, precision: Optional[int]) -> bool:
    """Compare P_min against the threshold at the reporting precision.

    With ``precision=None`` the full double is compared.
    """
    if p_min is None:
        return False
    value = p_min if precision is None else round_half_away(p_min, precision)
    return value >= threshold


def _record_significant(rec: PairRecord, threshold: float, precision: Optional[int]) -> bool:
    return all(is_significant(rec.p_min(t), threshold, precision) for t in rec.config.active_tasks())


def run_sequence(
    initial: BellDiagonalState,
    schedule: Sequence[PairConfig],
    threshold: float = DEFAULT_SIGNIFICANCE,
    precision: Optional[int] = DEFAULT_PRECISION,
) -> list[PairRecord]:
    """Play every pair of ``schedule`` in turn on one shared state.

    P_min is reported for both codes on each pair's input state. A code whose
    encoding directions are undefined gets ``None`` when the pair never plays
    it, and raises DegenerateState (tagged with the pair index) when it does.
    """
    records = []
    state = initial
    for k, cfg in enumerate(schedule, 1):
        active = cfg.active_tasks()
        values = {}
        for task in TaskKind:
            try:
                gap = advantage_gap(state, task, cfg.lam, cfg.eta)
            except DegenerateState as exc:
                if task in active:
                    raise DegenerateState(str(exc), pair_index=k) from None
                values[task] = (None, None)
            else:
                values[task] = (0.5 + gap, gap)
        try:
            out = evolve_mixed(state, cfg)
        except DegenerateState as exc:
            raise DegenerateState(str(exc), pair_index=k) from None

        tiny = [abs(c) for c in out.as_tuple() if c != 0 and abs(c) < UNDERFLOW_FLOOR]
        if tiny:
            warnings.warn(
                f"pair {k}: correlation magnitude {min(tiny):.3e} is below {UNDERFLOW_FLOOR:g}",
                UnderflowWarning,
                stacklevel=2,
            )

        rec = PairRecord(
            index_k=k,
            config=cfg,
            state_in=state,
            p_min_2to1=values[TaskKind.RAC_2TO1][0],
            p_min_3to1=values[TaskKind.RAC_3TO1][0],
            gap_2to1=values[TaskKind.RAC_2TO1][1],
            gap_3to1=values[TaskKind.RAC_3TO1][1],
            advantage=all(values[t][1] is not None and values[t][1] > 0 for t in active),
            significant=False,
            state_out=out,
        )
        records.append(replace(rec, significant=_record_significant(rec, threshold, precision)))
        state = out
    return records


def count_significant(
    records: Sequence[PairRecord],
    threshold: float = DEFAULT_SIGNIFICANCE,
    precision: Optional[int] = DEFAULT_PRECISION,
) -> int:
    return sum(_record_significant(r, threshold, precision) for r in records)
