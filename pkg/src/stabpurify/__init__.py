"""Stabilizer-code purification of multi-party stabilizer states.

Submodules
----------
pauli       signed Pauli products in the binary symplectic representation
gf2         GF(2) linear algebra on packed integers
stabilizer  stabilizer groups, canonical forms, local-Clifford classification
codes       stabilizer codes, syndrome tables, builtin codes C4, C5, C6, C7
multicopy   operator arrays, parity-check plans, sufficiency conditions
protocol    noise models, purification rounds, Monte Carlo and exact statistics
dense       dense state-vector oracle for small registers
cli         ``stabpurify`` command line
"""

from .codes import CodeClass, StabilizerCode, build_syndrome_table, builtin, classify_code, distance, is_css, is_css_h
from .errors import BudgetExceeded, DimensionError, InvalidCodeError, InvalidStateError, ParseError, StabPurifyError
from .multicopy import (
    CheckPlan,
    IncompatibilityReport,
    MultiCopySetup,
    OperatorArray,
    build_check_plan,
    check_condition_1,
    check_condition_2,
    class_compatibility,
    encoded_state,
    format_plan,
    format_report,
    in_multicopy_stabilizer,
    witness_row,
)
from .pauli import PauliProduct, commutes, hadamard_all, multiply, symplectic_inner
from .protocol import NoiseModel, SimulationReport, Verdict, enumerate_exact, run_round, simulate_monte_carlo
from .stabilizer import (
    LocalClifford,
    StabilizerGroup,
    StabilizerState,
    StateClass,
    builtin_state,
    canonicalize,
    classify_state,
    contains,
    graph_state,
    random_stabilizer_state,
)

__version__ = "0.1.0"
