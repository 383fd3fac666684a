import numpy as np
import pytest
from hypothesis import settings, strategies as st

from stabpurify.pauli import PauliProduct
from stabpurify.stabilizer import random_stabilizer_state

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def paulis(draw, n=None, max_qubits=4, signed=True):
    k = draw(st.integers(1, max_qubits)) if n is None else n
    x = draw(st.integers(0, (1 << k) - 1))
    z = draw(st.integers(0, (1 << k) - 1))
    phase = draw(st.integers(0, 3)) if signed else 0
    return PauliProduct(k, x, z, phase)


@st.composite
def pauli_pairs(draw, max_qubits=4):
    k = draw(st.integers(1, max_qubits))
    return draw(paulis(n=k)), draw(paulis(n=k))


@st.composite
def stabilizer_states(draw, min_qubits=1, max_qubits=4):
    n = draw(st.integers(min_qubits, max_qubits))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_stabilizer_state(n, np.random.default_rng(seed))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
