import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stabpurify.codes import builtin
from stabpurify.dense import (
    apply_pauli,
    check_density_matrix,
    check_state_vector,
    conjugate_density,
    expectation,
    measure_checks,
    multicopy_state,
    pauli_matrix,
    pure_density,
    random_density_matrix,
    random_noisy_state,
    state_from_stabilizer,
    syndrome_basis,
    twirl,
    verify_decoded_state,
    verify_twirl,
)
from stabpurify.errors import BudgetExceeded, DimensionError, InvalidStateError
from stabpurify.multicopy import MultiCopySetup, build_check_plan
from stabpurify.pauli import PauliProduct, all_paulis, multiply
from stabpurify.stabilizer import StabilizerState, builtin_state, contains, graph_state

from conftest import stabilizer_states

P = PauliProduct.from_string
HEXAGON = graph_state(6, [(0, 4), (4, 2), (2, 3), (3, 1), (1, 5), (5, 0)])


def proportional(a, b):
    k = int(np.argmax(np.abs(b)))
    return np.allclose(a * b[k] / a[k], b, atol=1e-10) if abs(a[k]) > 1e-12 else False


def test_bell_amplitudes():
    psi = state_from_stabilizer(StabilizerState.from_strings(["XX", "ZZ"]))
    assert proportional(psi, np.array([1, 0, 0, 1]))


def test_ghz_amplitudes():
    psi = state_from_stabilizer(builtin_state("ghz3-path"))
    want = np.zeros(8)
    want[0] = want[7] = 1
    assert proportional(psi, want)


def test_single_plus_state():
    assert proportional(state_from_stabilizer(StabilizerState.from_strings(["X"])), np.array([1, 1]))


def test_reference_fallback():
    # |1> is orthogonal to the default reference |0>
    psi = state_from_stabilizer(StabilizerState.from_strings(["-Z"]))
    assert proportional(psi, np.array([0, 1]))


def test_bit_order_matches_kron():
    x = np.array([[0, 1], [1, 0]])
    z = np.diag([1, -1])
    y = np.array([[0, -1j], [1j, 0]])
    assert np.allclose(pauli_matrix(P("XZ")), np.kron(x, z))
    assert np.allclose(pauli_matrix(P("-iYI")), -1j * np.kron(y, np.eye(2)))


@settings(max_examples=30)
@given(stabilizer_states(min_qubits=1, max_qubits=4), st.data())
def test_contains_matches_dense(s, data):
    psi = state_from_stabilizer(s)
    check_state_vector(psi)
    k = s.num_qubits
    ops = list(all_paulis(k)) if k <= 2 else [
        PauliProduct(k, data.draw(st.integers(0, (1 << k) - 1)), data.draw(st.integers(0, (1 << k) - 1)))
        for _ in range(16)
    ]
    ops += list(s.generators)
    for p in ops:
        sign = contains(s, p)
        ev = expectation(p, psi)
        if sign is None:
            assert np.linalg.norm(apply_pauli(p, psi) - ev * psi) > 1e-6 or abs(ev) < 1e-10
        else:
            assert np.allclose(apply_pauli(p, psi), sign * psi, atol=1e-10)


@settings(max_examples=30)
@given(stabilizer_states(min_qubits=1, max_qubits=4), st.data())
def test_generator_choice_does_not_change_state(s, data):
    gens = list(s.generators)
    for _ in range(4):
        i, j = data.draw(st.integers(0, len(gens) - 1)), data.draw(st.integers(0, len(gens) - 1))
        if i != j:
            gens[i] = multiply(gens[i], gens[j])
    a = state_from_stabilizer(s)
    b = state_from_stabilizer(StabilizerState(gens))
    assert abs(abs(np.vdot(a, b)) - 1) < 1e-10



def test_inconsistent_generators_rejected():
    from stabpurify.stabilizer import StabilizerGroup

    class Loose(StabilizerGroup):
        # skips validation so that +Z and -Z can be stored together
        def __init__(self, gens):
            self.num_qubits = 1
            self.generators = tuple(gens)

    with pytest.raises(InvalidStateError):
        state_from_stabilizer(Loose([P("Z"), P("-Z")]))


def test_density_checks():
    rng = np.random.default_rng(0)
    rho = random_density_matrix(2, rng)
    check_density_matrix(rho)
    with pytest.raises(InvalidStateError):
        check_density_matrix(2 * rho)
    with pytest.raises(InvalidStateError):
        check_density_matrix(np.diag([1.5, -0.5]).astype(complex))
    with pytest.raises(InvalidStateError):
        check_state_vector(np.array([1.0, 1.0]))


def test_conjugate_density_matches_matrices():
    rng = np.random.default_rng(1)
    rho = random_density_matrix(3, rng)
    p = P("XYZ")
    m = pauli_matrix(p)
    assert np.allclose(conjugate_density(p, rho), m @ rho @ m.conj().T)


# -- twirl --


@pytest.mark.parametrize("name", ["bell", "ghz3-path", "ghz4", "triangle"])
def test_twirl_removes_coherences(name):
    s = builtin_state(name)
    psi = state_from_stabilizer(s)
    rng = np.random.default_rng(5)
    for _ in range(5):
        rho = random_noisy_state(psi, rng)
        check_density_matrix(rho)
        assert verify_twirl(rho, s) < 1e-10


def test_noisy_state_has_coherences_before_twirl():
    s = builtin_state("bell")
    u = syndrome_basis(s)
    rho = random_noisy_state(state_from_stabilizer(s), np.random.default_rng(2))
    t = u.conj().T @ rho @ u
    assert np.abs(t - np.diag(np.diag(t))).max() > 1e-3


def test_syndrome_basis_is_unitary():
    u = syndrome_basis(builtin_state("ghz3"))
    assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-10)


def test_twirl_fixed_points():
    s = builtin_state("bell")
    psi = state_from_stabilizer(s)
    pure = pure_density(psi)
    assert np.abs(twirl(pure, s) - pure).max() < 1e-12
    u = syndrome_basis(s)
    diag = u @ np.diag([0.7, 0.1, 0.15, 0.05]) @ u.conj().T
    assert np.abs(twirl(diag, s) - diag).max() < 1e-12


def test_twirl_budgets():
    with pytest.raises(DimensionError):
        verify_twirl(np.eye(2) / 2, builtin_state("bell"))
    big = graph_state(9, [(i, i + 1) for i in range(8)])
    with pytest.raises(BudgetExceeded):
        verify_twirl(np.eye(2) / 2, big)


# -- decoded states --


def test_bell_c4_decoded():
    setup = MultiCopySetup(builtin_state("bell"), 4)
    plan = build_check_plan(builtin_state("bell"), builtin("C4"))
    assert verify_decoded_state(setup, plan)
    two_pairs = StabilizerState.from_strings(["XXII", "ZZII", "IIXX", "IIZZ"])
    assert verify_decoded_state(setup, builtin("C4"), target=two_pairs)


def test_bell_c4_other_outcomes():
    setup = MultiCopySetup(builtin_state("bell"), 4)
    code = builtin("C4")
    psi, record = measure_checks(setup, code, [[-1, 1], [-1, 1]])
    assert record == [[-1, 1], [-1, 1]]
    with pytest.raises(InvalidStateError):
        measure_checks(setup, code, [[-1, 1], [1, 1]])


def test_hexagon_dense():
    setup = MultiCopySetup(builtin_state("triangle"), 4)
    assert verify_decoded_state(setup, builtin("C4"), target=HEXAGON)
    wrong = graph_state(6, [(i, (i + 1) % 6) for i in range(6)])
    assert not verify_decoded_state(setup, builtin("C4"), target=wrong)


def test_triangle_c4_report_fails_encoded_check():
    rep = build_check_plan(builtin_state("triangle"), builtin("C4"))
    assert not verify_decoded_state(rep.plan.setup, rep)


def test_ghz_c5_over_budget():
    setup = MultiCopySetup(builtin_state("ghz3-path"), 5)
    with pytest.raises(BudgetExceeded):
        measure_checks(setup, builtin("C5"))


def test_multicopy_state_is_product():
    setup = MultiCopySetup(builtin_state("bell"), 2)
    psi = state_from_stabilizer(multicopy_state(setup))
    bell = state_from_stabilizer(builtin_state("bell"))
    assert abs(abs(np.vdot(psi, np.kron(bell, bell))) - 1) < 1e-10
