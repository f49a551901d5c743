"""
Classical baseline: one communicated bit plus two correlated shared bits.

Model. A source emits (lam_a, lam_b) in {0,1}^2 with joint distribution
``shared_dist`` (order 00, 01, 10, 11). The sender's message is a
deterministic function of (x, lam_a); the receiver's guess is a
deterministic function of (y, message, lam_b). No other randomness, private
or shared, is available. For the 2→1 task the receiver's bit must be
uniform, P(lam_b = 0) = 1/2.

``classical_optimum`` maximizes the worst-case success over every decoder
table, a grid over shared distributions, and the encoder. For a fixed
decoder and distribution the objective splits over x, so each x picks its
encoder pair (message for lam_a = 0, message for lam_a = 1) independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BadInput
from .measurements import bit_strings
from .states import TaskKind
from .tolerances import CLASSICAL_BOUND_SLACK

MIN_GRID_STEPS = 11
MODEL_HEADER = (
    "classical model: deterministic encoder (x, lam_a) -> message bit, "
    "deterministic decoder (y, message, lam_b) -> guess bit, "
    "shared bits (lam_a, lam_b) from one source, no private randomness; "
    "2to1 additionally requires P(lam_b = 0) = 1/2"
)

# encoder pairs (message if lam_a = 0, message if lam_a = 1), lexicographic
ENCODER_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))
_MARGINAL_ATOL = 1e-12


class BadArity(BadInput):
    pass


@dataclass(frozen=True)
class ClassicalStrategy:
    """Tables of a deterministic strategy.

    encoder[xi, lam_a] is the message for input string number ``xi`` (strings
    ordered as ``itertools.product((0, 1), repeat=n)``); decoder[y, m, lam_b]
    is the guess.
    """

    encoder: np.ndarray
    decoder: np.ndarray
    shared_dist: np.ndarray

    def __post_init__(self):
        enc = np.asarray(self.encoder, dtype=np.int8)
        dec = np.asarray(self.decoder, dtype=np.int8)
        dist = np.asarray(self.shared_dist, dtype=float).reshape(-1)
        if dist.shape != (4,) or np.any(dist < 0) or abs(dist.sum() - 1) > 1e-12:
            raise BadInput(f"shared_dist must be a probability 4-vector, got {dist!r}")
        if not (np.isin(enc, (0, 1)).all() and np.isin(dec, (0, 1)).all()):
            raise BadInput("encoder and decoder tables must hold bits")
        object.__setattr__(self, "encoder", enc)
        object.__setattr__(self, "decoder", dec)
        object.__setattr__(self, "shared_dist", dist)

    @property
    def receiver_marginal(self) -> float:
        """P(lam_b = 0)."""
        return float(self.shared_dist[0] + self.shared_dist[2])


def strategy_success(st: ClassicalStrategy, task, x, y) -> float:
    task = TaskKind.parse(task)
    xi = bit_strings(task.n).index(tuple(x))
    q = st.shared_dist.reshape(2, 2)
    return float(
        sum(
            q[la, lb]
            for la in (0, 1)
            for lb in (0, 1)
            if st.decoder[y, st.encoder[xi, la], lb] == x[y]
        )
    )


def strategy_pmin(st: ClassicalStrategy, task) -> float:
    """Worst case over (x, y) of the success probability of ``st``."""
    task = TaskKind.parse(task)
    n = task.n
    if st.encoder.shape != (2**n, 2) or st.decoder.shape != (n, 2, 2):
        raise BadArity(
            f"{task.value} needs encoder shape {(2**n, 2)} and decoder shape {(n, 2, 2)}, "
            f"got {st.encoder.shape} and {st.decoder.shape}"
        )
    if task is TaskKind.RAC_2TO1 and abs(st.receiver_marginal - 0.5) > _MARGINAL_ATOL:
        raise BadInput(f"2to1 needs a uniform receiver bit, got P(lam_b=0) = {st.receiver_marginal}")
    return min(strategy_success(st, task, x, y) for x in bit_strings(n) for y in range(n))


def distribution_grid(task, grid_steps: int, marginal_constraint: bool = True) -> np.ndarray:
    """Shared distributions (rows over 00, 01, 10, 11) on a regular grid.

    With the 2→1 receiver constraint the free parameters are q00 and q01, each
    taking ``grid_steps`` values in [0, 1/2]. Otherwise the full simplex is
    sampled with ``grid_steps - 1`` divisions.
    """
    task = TaskKind.parse(task)
    div = grid_steps - 1
    if task is TaskKind.RAC_2TO1 and marginal_constraint:
        half = np.arange(grid_steps) / (2 * div)
        q00, q01 = (a.ravel() for a in np.meshgrid(half, half, indexing="ij"))
        return np.stack([q00, q01, 0.5 - q00, 0.5 - q01], axis=1)
    pts = [c for c in itertools.product(range(div + 1), repeat=3) if sum(c) <= div]
    counts = np.array([(a, b, c, div - a - b - c) for a, b, c in pts], dtype=float)
    return counts / div


@dataclass(frozen=True)
class ClassicalResult:
    task: TaskKind
    value: float
    strategy: ClassicalStrategy
    grid_steps: int
    grid_points: int
    marginal_constraint: bool

    @property
    def within_bound(self) -> bool:
        return self.value <= 0.5 + CLASSICAL_BOUND_SLACK


def _slice_values(grid: np.ndarray) -> np.ndarray:
    """Success mass for one query index, tabulated over everything it depends on.

    Result[code, e, bit, g]: the receiver's 2x2 table for this y is
    ``code`` (bits d[m, lam_b] packed as d00 d01 d10 d11, MSB first), the
    sender uses encoder pair ``e``, and the queried bit equals ``bit``.
    """
    out = np.zeros((16, 4, 2, grid.shape[0]))
    for code in range(16):
        d = [(code >> (3 - i)) & 1 for i in range(4)]
        for ei, enc in enumerate(ENCODER_PAIRS):
            for bit in (0, 1):
                for la in (0, 1):
                    for lb in (0, 1):
                        if d[2 * enc[la] + lb] == bit:
                            out[code, ei, bit] += grid[:, 2 * la + lb]
    return out


def _decoder_from_codes(codes) -> np.ndarray:
    return np.array([[[(c >> (3 - (2 * m + lb))) & 1 for lb in (0, 1)] for m in (0, 1)] for c in codes])


def greedy_encoder(decoder: np.ndarray, dist: np.ndarray, task) -> np.ndarray:
    """Best encoder for a fixed decoder and distribution; ties go to the smallest pair."""
    task = TaskKind.parse(task)
    enc = np.zeros((2**task.n, 2), dtype=np.int8)
    for xi, x in enumerate(bit_strings(task.n)):
        best, best_pair = -1.0, None
        for pair in ENCODER_PAIRS:
            st = ClassicalStrategy(np.tile(pair, (2**task.n, 1)), decoder, dist)
            score = min(strategy_success(st, task, x, y) for y in range(task.n))
            if score > best + 1e-15:
                best, best_pair = score, pair
        enc[xi] = best_pair
    return enc


def classical_optimum(
    task, grid_steps: int = 21, marginal_constraint: bool = True, chunk_elems: int = 1 << 23
) -> ClassicalResult:
    """Best worst-case classical success over decoders x distribution grid x encoders."""
    task = TaskKind.parse(task)
    if grid_steps < MIN_GRID_STEPS:
        raise BadInput(f"grid_steps must be at least {MIN_GRID_STEPS}, got {grid_steps}")
    n = task.n
    grid = distribution_grid(task, grid_steps, marginal_constraint)
    table = _slice_values(grid)
    xs = bit_strings(n)
    all_codes = np.array(list(itertools.product(range(16), repeat=n)))
    chunk = max(1, chunk_elems // grid.shape[0])

    best_val, best_codes, best_g = -np.inf, None, None
    for start in range(0, len(all_codes), chunk):
        codes = all_codes[start : start + chunk]
        worst = None
        for x in xs:
            per_enc = None
            for ei in range(4):
                val = table[codes[:, 0], ei, x[0]]
                for y in range(1, n):
                    val = np.minimum(val, table[codes[:, y], ei, x[y]])
                per_enc = val if per_enc is None else np.maximum(per_enc, val)
            worst = per_enc if worst is None else np.minimum(worst, per_enc)
        flat = int(np.argmax(worst))
        ci, gi = divmod(flat, grid.shape[0])
        if worst[ci, gi] > best_val:
            best_val, best_codes, best_g = float(worst[ci, gi]), codes[ci], gi

    decoder = _decoder_from_codes(best_codes)
    dist = grid[best_g]
    strategy = ClassicalStrategy(greedy_encoder(decoder, dist, task), decoder, dist)
    return ClassicalResult(
        task=task,
        value=best_val,
        strategy=strategy,
        grid_steps=grid_steps,
        grid_points=grid.shape[0],
        marginal_constraint=marginal_constraint,
    )
