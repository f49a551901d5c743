"""Numerical tolerances shared by the library and the test suite."""

HERMITIAN_ATOL = 1e-12      # max |m - m^dagger| entrywise
EIGEN_RESIDUAL = 1e-10      # eigenvalue reconstruction / sum-to-trace
ALGEBRA_ATOL = 1e-13        # Pauli algebra, traces, sqrt(E)^2 == E
PHYSICAL_ATOL = 1e-12       # Bell-basis weights may dip this far below 0
TRACE_ATOL = 1e-12          # trace-one checks on density matrices
BELL_RESIDUAL = 1e-10       # off-diagonal correlations tolerated by from_density
UNIT_NORM_ATOL = 1e-12      # Bloch directions
ORACLE_ATOL = 1e-10         # Lüders sum vs closed-form recursion
PMIN_ATOL = 1e-12           # closed-form vs brute-force minimum success
CLASSICAL_BOUND_SLACK = 1e-9
UNDERFLOW_FLOOR = 1e-290    # warn when a correlation falls below this

DEFAULT_SIGNIFICANCE = 0.520
DEFAULT_PRECISION = 3
