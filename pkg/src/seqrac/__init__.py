"""Sequential random access codes on one shared Bell-diagonal state."""

__version__ = "0.1.0"

from .classical import ClassicalStrategy, classical_optimum, strategy_pmin
from .engine import (
    PairConfig,
    PairRecord,
    advantage_gap,
    count_significant,
    evolve_closed,
    evolve_mixed,
    evolve_oracle,
    p_min_bruteforce,
    p_min_closed,
    run_sequence,
    success_probability,
)
from .errors import (
    BadInput,
    ConfigError,
    DegenerateState,
    GoldenMismatch,
    NonHermitian,
    NotBellDiagonal,
    RacError,
    Unphysical,
)
from .states import BellDiagonalState, TaskKind, from_density, is_separable, to_density
