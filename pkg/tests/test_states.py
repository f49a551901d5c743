import numpy as np
import pytest
from hypothesis import given

from seqrac.errors import NotBellDiagonal, Unphysical
from seqrac.linalg import I2, I4, SIGMA_X, SIGMA_Y, tensor
from seqrac.states import (
    BellDiagonalState,
    TaskKind,
    from_density,
    is_physical,
    is_separable,
    is_separable_closed,
    random_states,
    to_density,
)
from seqrac.tolerances import ALGEBRA_ATOL

from conftest import bell_states


def _pt_eigenvalues_by_hand(rho):
    """Partial transpose on Bob's qubit by explicit index swap, then eigenvalues."""
    pt = np.empty_like(rho)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    pt[2 * a + b, 2 * c + d] = rho[2 * a + d, 2 * c + b]
    return np.linalg.eigvalsh(pt)


def test_singlet_density():
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    assert np.allclose(to_density(BellDiagonalState.singlet()), np.outer(psi, psi), atol=1e-15)


def test_maximally_mixed_density():
    assert np.allclose(to_density(BellDiagonalState(0, 0, 0)), I4 / 4, atol=1e-15)


def test_isotropic_half_density():
    # direct expansion: X⊗X + Y⊗Y = 2(|01><10| + |10><01|), Z⊗Z = diag(1,-1,-1,1)
    rho = to_density(BellDiagonalState(-0.5, -0.5, -0.5))
    expected = np.diag([0.125, 0.375, 0.375, 0.125]).astype(complex)
    expected[1, 2] = expected[2, 1] = -0.25
    assert np.allclose(rho, expected, atol=1e-15)


@given(bell_states())
def test_density_is_a_state(s):
    rho = to_density(s)
    assert np.max(np.abs(rho - rho.conj().T)) == 0
    assert abs(np.trace(rho) - 1) <= ALGEBRA_ATOL
    assert np.linalg.eigvalsh(rho).min() >= -1e-12


@given(bell_states())
def test_round_trip(s):
    back = from_density(to_density(s))
    assert np.allclose(back.as_tuple(), s.as_tuple(), rtol=0, atol=1e-12)


def test_round_trip_examples():
    assert from_density(to_density(BellDiagonalState.singlet())).as_tuple() == pytest.approx((-1, -1, -1), abs=1e-15)
    assert from_density(I4 / 4).as_tuple() == (0.0, 0.0, 0.0)


def test_not_bell_diagonal():
    rho = (I4 + 0.3 * tensor(SIGMA_X, SIGMA_Y)) / 4
    with pytest.raises(NotBellDiagonal):
        from_density(rho)


def test_local_bloch_vector_rejected():
    rho = (I4 + 0.2 * tensor(SIGMA_X, I2)) / 4
    with pytest.raises(NotBellDiagonal):
        from_density(rho)


def test_unphysical_rejected():
    with pytest.raises(Unphysical):
        BellDiagonalState(1, 1, 1)
    with pytest.raises(Unphysical):
        BellDiagonalState(float("nan"), 0, 0)


def test_physicality_matches_psd_check(rng):
    triples = rng.uniform(-1, 1, size=(10_000, 3))
    for t in triples:
        rho = (I4 + sum(c * tensor(s, s) for c, s in zip(t, (SIGMA_X, SIGMA_Y, np.diag([1, -1]))))) / 4
        assert is_physical(*t) == (np.linalg.eigvalsh(rho).min() >= -1e-12)


def test_separability_examples():
    assert not is_separable(BellDiagonalState.singlet())
    assert is_separable(BellDiagonalState(0, 0, 0))
    s = BellDiagonalState(-0.3, -0.3, -0.3)
    assert is_separable(s)
    # partial transpose flips t22, giving Bell weights 1/4 (1 - 0.9) = 0.025 and 0.325 (x3)
    assert _pt_eigenvalues_by_hand(to_density(s)).min() == pytest.approx(0.025, abs=1e-15)


def test_separability_closed_form_agrees(rng):
    for s in random_states(rng, 10_000):
        assert is_separable(s) == is_separable_closed(s)


def test_permutation_helper():
    s = BellDiagonalState(-0.6, -0.3, 0.1)
    assert s.permuted((2, 0, 1)).as_tuple() == (0.1, -0.6, -0.3)
    assert s.sorted_by_magnitude().as_tuple() == (-0.6, -0.3, 0.1)


@pytest.mark.parametrize("text, kind", [("2to1", TaskKind.RAC_2TO1), ("3->1", TaskKind.RAC_3TO1), (3, TaskKind.RAC_3TO1)])
def test_task_parse(text, kind):
    assert TaskKind.parse(text) is kind
