"""
Fixed-shape complex linear algebra for one- and two-qubit operators.

Operators are plain ``numpy`` arrays of dtype ``complex128`` with shape
(2, 2) or (4, 4). Two-qubit operators use the computational basis order
|00>, |01>, |10>, |11> with the first tensor factor acting on Alice's qubit.
"""

from __future__ import annotations

import numpy as np

from .errors import BadInput, NonHermitian
from .tolerances import HERMITIAN_ATOL

Operator2 = np.ndarray
Operator4 = np.ndarray

I2 = np.eye(2, dtype=np.complex128)
I4 = np.eye(4, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (I2, I4, *PAULIS):
    _m.setflags(write=False)


def as_operator(m, dim: int) -> np.ndarray:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.shape != (dim, dim):
        raise BadInput(f"expected a {dim}x{dim} operator, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise BadInput("operator has non-finite entries")
    return arr


def tensor(a: Operator2, b: Operator2) -> Operator4:
    """Kronecker product ``a ⊗ b`` (``a`` acts on the first qubit)."""
    return np.kron(as_operator(a, 2), as_operator(b, 2))


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def trace(m: np.ndarray) -> complex:
    return complex(np.trace(m))


def bloch_operator(v) -> Operator2:
    """``v · σ`` for a real 3-vector ``v``."""
    v = np.asarray(v, dtype=float)
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m))))


def hermitian_eigenvalues(m: Operator4) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian 4x4 operator.

    Raises NonHermitian if any entry of ``m - m†`` exceeds the Hermiticity
    tolerance.
    """
    m = as_operator(m, 4)
    defect = hermiticity_defect(m)
    if defect > HERMITIAN_ATOL:
        raise NonHermitian(f"operator is not Hermitian (max |m - m†| = {defect:.3e})")
    # symmetrize so eigvalsh sees an exactly Hermitian input
    return np.linalg.eigvalsh(0.5 * (m + dagger(m)))


def partial_transpose(m: Operator4) -> Operator4:
    """Partial transpose over the second qubit."""
    m = as_operator(m, 4)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
