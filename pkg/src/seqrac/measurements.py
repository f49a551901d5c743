"""
Encoding/decoding directions and unsharp dichotomic effects.

An effect with Bloch direction v, sharpness lam and outcome o is

    E = 1/2 [I + lam (-1)^o v·σ]

Everything here is built from closed-form expressions; no eigensolver is
involved, so the operators are reproducible to rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadInput, DegenerateState
from .linalg import I2, Operator2, bloch_operator
from .states import BellDiagonalState, TaskKind
from .tolerances import UNIT_NORM_ATOL


def unit_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise BadInput(f"Bloch direction must be a finite 3-vector, got {v!r}")
    if abs(np.linalg.norm(v) - 1) > UNIT_NORM_ATOL:
        raise BadInput(f"Bloch direction {v!r} is not unit norm")
    return v


def check_sharpness(value: float) -> float:
    value = float(value)
    if not 0 < value <= 1:
        raise BadInput(f"sharpness must lie in (0, 1], got {value!r}")
    return value


def _normalized(components) -> np.ndarray:
    # scale by the largest magnitude first so tiny correlations (1e-200) survive squaring
    v = np.asarray(components, dtype=float)
    scale = np.max(np.abs(v))
    if scale == 0:
        raise DegenerateState(f"correlations {tuple(v)} are all zero; encoding direction undefined")
    v = v / scale
    return v / math.sqrt(float(v @ v))


def bit_strings(n: int):
    return list(itertools.product((0, 1), repeat=n))


def encoding_directions_2to1(s: BellDiagonalState) -> dict[tuple[int, int], np.ndarray]:
    """Sender directions for the 2→1 code, keyed by (x0, x1); all in the x-y plane."""
    try:
        base = _normalized([s.t11, s.t22])
    except DegenerateState:
        raise DegenerateState("t11 = t22 = 0; 2→1 encoding directions are undefined") from None
    return {
        (x0, x1): np.array([(-1) ** x0 * base[0], (-1) ** x1 * base[1], 0.0])
        for x0, x1 in bit_strings(2)
    }


def encoding_directions_3to1(s: BellDiagonalState) -> dict[tuple[int, int, int], np.ndarray]:
    try:
        base = _normalized(s.as_tuple())
    except DegenerateState:
        raise DegenerateState("t11 = t22 = t33 = 0; 3→1 encoding directions are undefined") from None
    return {x: base * np.array([(-1) ** b for b in x]) for x in bit_strings(3)}


def decoding_directions_2to1() -> dict[int, np.ndarray]:
    return {0: np.array([1.0, 0.0, 0.0]), 1: np.array([0.0, 1.0, 0.0])}


def decoding_directions_3to1() -> dict[int, np.ndarray]:
    return {y: np.eye(3)[y] for y in range(3)}


def encoding_directions(s: BellDiagonalState, task: TaskKind) -> dict:
    if TaskKind.parse(task) is TaskKind.RAC_2TO1:
        return encoding_directions_2to1(s)
    return encoding_directions_3to1(s)


def decoding_directions(task: TaskKind) -> dict[int, np.ndarray]:
    if TaskKind.parse(task) is TaskKind.RAC_2TO1:
        return decoding_directions_2to1()
    return decoding_directions_3to1()


@dataclass(frozen=True)
class MeasurementSpec:
    direction: tuple[float, float, float]
    sharpness: float
    outcome: int

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(unit_vector(self.direction)))
        object.__setattr__(self, "sharpness", check_sharpness(self.sharpness))
        if self.outcome not in (0, 1):
            raise BadInput(f"outcome must be 0 or 1, got {self.outcome!r}")

    @property
    def sign(self) -> int:
        return -1 if self.outcome else 1


def effect(m: MeasurementSpec) -> Operator2:
    return 0.5 * (I2 + m.sharpness * m.sign * bloch_operator(m.direction))


def sqrt_effect(m: MeasurementSpec) -> Operator2:
    """Positive square root of ``effect(m)``, written on its two spectral projectors."""
    vs = m.sign * bloch_operator(m.direction)
    plus = math.sqrt(1 + m.sharpness) / (2 * math.sqrt(2))
    minus = math.sqrt(1 - m.sharpness) / (2 * math.sqrt(2))
    return plus * (I2 + vs) + minus * (I2 - vs)
