import numpy as np
import pytest
from hypothesis import strategies as st

from seqrac.states import BellDiagonalState

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@st.composite
def bell_states(draw, min_abs=0.0):
    """Physical Bell-diagonal states from Bell-basis weights on the simplex."""
    raw = [draw(st.floats(1e-6, 1.0)) for _ in range(4)]
    w = np.array(raw) / sum(raw)
    t = (
        -w[0] - w[1] + w[2] + w[3],
        -w[0] + w[1] - w[2] + w[3],
        -w[0] + w[1] + w[2] - w[3],
    )
    if min_abs:
        from hypothesis import assume

        assume(min(abs(c) for c in t) >= min_abs)
    return BellDiagonalState(*t)


sharpness = st.floats(1e-3, 1.0)
