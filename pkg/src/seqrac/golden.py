"""Golden minimum-success tables, stored as data for regression checks.

Every block starts from the singlet. ``rows`` lists (lambda, eta, P_min) for
each tabulated pair, rounded to three decimals. After the listed
rows every later pair uses ``tail`` sharpness and is reported only as lying
strictly between 1/2 and the significance threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .states import TaskKind


@dataclass(frozen=True)
class GoldenBlock:
    task: TaskKind
    rows: tuple[tuple[float, float, float], ...]
    tail: tuple[float, float]
    significant_count: int


def _block(task, rows, tail, count):
    return GoldenBlock(task, tuple(rows), tail, count)


_P = (1.0, 1.0)
_W2 = (0.340, 0.340)
_W3 = (0.370, 0.370)

TABLE1 = (
    _block(TaskKind.RAC_2TO1, [(*_P, 0.854), (*_P, 0.588), (*_P, 0.522)], _P, 3),
    _block(TaskKind.RAC_2TO1, [(*_W2, 0.541), (*_P, 0.833), (*_P, 0.583), (*_P, 0.521)], _P, 4),
    _block(
        TaskKind.RAC_2TO1,
        [(*_W2, 0.541), (*_W2, 0.538), (*_P, 0.813), (*_P, 0.578), (*_P, 0.520)],
        _P,
        5,
    ),
    _block(
        TaskKind.RAC_2TO1,
        [
            (*_W2, v)
            for v in (0.541, 0.538, 0.536, 0.534, 0.532, 0.530, 0.528,
                      0.527, 0.525, 0.524, 0.522, 0.521, 0.520)
        ],
        _W2,
        13,
    ),
)

TABLE2 = (
    _block(TaskKind.RAC_3TO1, [(*_P, 0.789), (*_P, 0.532)], _P, 2),
    _block(TaskKind.RAC_3TO1, [(*_W3, 0.540), (*_P, 0.762), (*_P, 0.529)], _P, 3),
    _block(TaskKind.RAC_3TO1, [(*_W3, 0.540), (*_W3, 0.536), (*_P, 0.738), (*_P, 0.526)], _P, 4),
    _block(
        TaskKind.RAC_3TO1,
        [(*_W3, v) for v in (0.540, 0.536, 0.532, 0.530, 0.527, 0.524, 0.522, 0.520)],
        _W3,
        8,
    ),
)

TABLES = {"table1": TABLE1, "table2": TABLE2}

# golden values are rounded to 3 decimals; allow one unit in the last place
GOLDEN_ATOL = 0.001 + 1e-9
