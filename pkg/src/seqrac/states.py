"""
Bell-diagonal two-qubit states.

A Bell-diagonal state is fixed by its correlation triple (t11, t22, t33):

    rho = 1/4 (I4 + t11 X⊗X + t22 Y⊗Y + t33 Z⊗Z)

The triple is stored on the raw axes and is never reordered implicitly,
because the encoding and decoding directions of both protocols are tied to
fixed axes. ``BellDiagonalState.permuted`` exists for callers that want to
study a different axis assignment explicitly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BadInput, NonHermitian, NotBellDiagonal, Unphysical
from .linalg import I2, I4, PAULIS
from .tolerances import BELL_RESIDUAL, PHYSICAL_ATOL, TRACE_ATOL


class TaskKind(enum.Enum):
    RAC_2TO1 = "2to1"
    RAC_3TO1 = "3to1"

    @property
    def n(self) -> int:
        """Number of input bits held by the sender."""
        return 2 if self is TaskKind.RAC_2TO1 else 3

    @classmethod
    def parse(cls, value) -> "TaskKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("->", "to").replace("_", "")
        for member in cls:
            if key in (member.value, member.name.lower().replace("_", ""), str(member.n)):
                return member
        raise BadInput(f"unknown task {value!r}; expected '2to1' or '3to1'")


def bell_weights(t11: float, t22: float, t33: float) -> tuple[float, float, float, float]:
    """Eigenvalues of the state in the Bell basis (psi-, phi-, phi+, psi+ order)."""
    return (
        0.25 * (1 - t11 - t22 - t33),
        0.25 * (1 - t11 + t22 + t33),
        0.25 * (1 + t11 - t22 + t33),
        0.25 * (1 + t11 + t22 - t33),
    )


def is_physical(t11: float, t22: float, t33: float) -> bool:
    return all(w >= -PHYSICAL_ATOL for w in bell_weights(t11, t22, t33))


@dataclass(frozen=True)
class BellDiagonalState:
    t11: float
    t22: float
    t33: float

    def __post_init__(self):
        for name in ("t11", "t22", "t33"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise Unphysical(f"{name} is not finite: {value!r}")
            object.__setattr__(self, name, float(value))
        if not is_physical(self.t11, self.t22, self.t33):
            raise Unphysical(
                f"correlations {self.as_tuple()} give negative Bell-basis weights "
                f"{bell_weights(*self.as_tuple())}"
            )

    @classmethod
    def singlet(cls) -> "BellDiagonalState":
        return cls(-1.0, -1.0, -1.0)

    @classmethod
    def werner_like(cls, t: float) -> "BellDiagonalState":
        """Isotropic state with equal correlations ``(t, t, t)``."""
        return cls(t, t, t)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.t11, self.t22, self.t33)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    def permuted(self, order) -> "BellDiagonalState":
        """Reassign axes, e.g. ``order=(2, 0, 1)`` gives (t33, t11, t22)."""
        if sorted(order) != [0, 1, 2]:
            raise BadInput(f"order must be a permutation of (0, 1, 2), got {order!r}")
        t = self.as_tuple()
        return BellDiagonalState(*(t[i] for i in order))

    def sorted_by_magnitude(self) -> "BellDiagonalState":
        """Axes reordered so that t11^2 >= t22^2 >= t33^2."""
        order = sorted(range(3), key=lambda i: -abs(self.as_tuple()[i]))
        return self.permuted(order)


def to_density(s: BellDiagonalState) -> linalg.Operator4:
    rho = I4.copy()
    for t, sigma in zip(s.as_tuple(), PAULIS):
        rho = rho + t * linalg.tensor(sigma, sigma)
    return 0.25 * rho


def correlation(rho: linalg.Operator4, a: linalg.Operator2, b: linalg.Operator2) -> float:
    """Tr[rho (a ⊗ b)], real part."""
    return float(np.real(np.trace(rho @ linalg.tensor(a, b))))


def from_density(rho) -> BellDiagonalState:
    """Recover the correlation triple of a Bell-diagonal density matrix.

    The twelve remaining Pauli correlations (cross terms and both local Bloch
    vectors) must vanish to within the residual tolerance, otherwise the
    state is not Bell-diagonal and NotBellDiagonal is raised.
    """
    rho = linalg.as_operator(rho, 4)
    defect = linalg.hermiticity_defect(rho)
    if defect > TRACE_ATOL:
        raise NonHermitian(f"density matrix is not Hermitian (defect {defect:.3e})")
    tr = linalg.trace(rho)
    if abs(tr - 1) > TRACE_ATOL:
        raise BadInput(f"density matrix trace is {tr}, expected 1")

    residuals = {}
    for i, si in enumerate(PAULIS, 1):
        residuals[f"{i}I"] = correlation(rho, si, I2)
        residuals[f"I{i}"] = correlation(rho, I2, si)
        for j, sj in enumerate(PAULIS, 1):
            if i != j:
                residuals[f"{i}{j}"] = correlation(rho, si, sj)
    worst = max(residuals, key=lambda k: abs(residuals[k]))
    if abs(residuals[worst]) >= BELL_RESIDUAL:
        raise NotBellDiagonal(
            f"correlation component {worst} = {residuals[worst]:.3e} is not negligible"
        )
    return BellDiagonalState(*(correlation(rho, s, s) for s in PAULIS))


def is_separable(s: BellDiagonalState) -> bool:
    """Peres-Horodecki test on the partial transpose (exact for two qubits)."""
    eigs = linalg.hermitian_eigenvalues(linalg.partial_transpose(to_density(s)))
    return bool(eigs[0] >= -PHYSICAL_ATOL)


def is_separable_closed(s: BellDiagonalState) -> bool:
    return abs(s.t11) + abs(s.t22) + abs(s.t33) <= 1 + PHYSICAL_ATOL


def random_states(rng: np.random.Generator, size: int) -> list[BellDiagonalState]:
    """Bell-diagonal states with Bell-basis weights drawn uniformly from the simplex."""
    w = rng.dirichlet(np.ones(4), size=size)
    t11 = -w[:, 0] - w[:, 1] + w[:, 2] + w[:, 3]
    t22 = -w[:, 0] + w[:, 1] - w[:, 2] + w[:, 3]
    t33 = -w[:, 0] + w[:, 1] + w[:, 2] - w[:, 3]
    return [BellDiagonalState(*t) for t in zip(t11, t22, t33)]
