"""Dense state-vector and density-matrix oracle for small registers.

Basis index convention: qubit 0 is the most significant bit, so the label
``XZ`` acts as ``kron(X, Z)``.  A Pauli product acts on a basis state as

    P |b> = i**(phase + |x & z|) * (-1)**|z & b| * |b ^ x>

with ``x`` and ``z`` re-indexed to that bit order.  Operators are applied by
index permutation, never materialized, except in ``pauli_matrix``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .codes import StabilizerCode
from .errors import BudgetExceeded, DimensionError, InvalidStateError
from .multicopy import (
    CheckPlan,
    IncompatibilityReport,
    MultiCopySetup,
    OperatorArray,
    encoded_operator,
)
from .pauli import PauliProduct, embed, multiply, product
from .stabilizer import StabilizerGroup, StabilizerState, destabilizers

MAX_VECTOR_QUBITS = 12
MAX_MATRIX_QUBITS = 8
ATOL = 1e-10

_PHASES = np.array([1, 1j, -1, -1j])


def _index_mask(v: int, k: int) -> int:
    out = 0
    for q in range(k):
        if (v >> q) & 1:
            out |= 1 << (k - 1 - q)
    return out


def _action(p: PauliProduct) -> tuple[np.ndarray, np.ndarray]:
    """(target index, coefficient) per basis state b, with P|b> = coeff[b] |target[b]>."""
    k = p.num_qubits
    xm = _index_mask(p.x, k)
    zm = _index_mask(p.z, k)
    b = np.arange(1 << k, dtype=np.int64)
    parity = np.zeros(1 << k, dtype=np.int64)
    t = b & zm
    while zm:
        parity ^= t & 1
        t >>= 1
        zm >>= 1
    coeff = _PHASES[(p.phase + (p.x & p.z).bit_count()) % 4] * (1 - 2 * parity)
    return b ^ xm, coeff


def pauli_matrix(p: PauliProduct) -> np.ndarray:
    if p.num_qubits > MAX_MATRIX_QUBITS:
        raise BudgetExceeded(f"{p.num_qubits}-qubit matrix exceeds the dense budget")
    target, coeff = _action(p)
    out = np.zeros((1 << p.num_qubits,) * 2, dtype=complex)
    out[target, np.arange(len(target))] = coeff
    return out


def apply_pauli(p: PauliProduct, psi: np.ndarray) -> np.ndarray:
    if psi.shape[0] != 1 << p.num_qubits:
        raise DimensionError("vector length does not match the operator")
    target, coeff = _action(p)
    out = np.empty_like(psi, dtype=complex)
    out[target] = (coeff.reshape((-1,) + (1,) * (psi.ndim - 1))) * psi
    return out


def conjugate_density(p: PauliProduct, rho: np.ndarray) -> np.ndarray:
    """P rho P^dagger."""
    left = apply_pauli(p, rho)
    return apply_pauli(p, left.conj().T).conj().T


def expectation(p: PauliProduct, psi: np.ndarray) -> complex:
    return complex(np.vdot(psi, apply_pauli(p, psi)))


def _num_qubits(dim: int) -> int:
    k = dim.bit_length() - 1
    if 1 << k != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return k


def check_state_vector(psi: np.ndarray, tol: float = ATOL) -> None:
    if abs(np.linalg.norm(psi) - 1) > tol:
        raise InvalidStateError("state vector is not normalized")


def check_density_matrix(rho: np.ndarray, tol: float = ATOL) -> None:
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidStateError("density matrix trace differs from 1")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -tol:
        raise InvalidStateError("density matrix is not positive semidefinite")


def project(g: PauliProduct, psi: np.ndarray) -> np.ndarray:
    """(I + g)/2 applied to ``psi`` (unnormalized)."""
    return (psi + apply_pauli(g, psi)) / 2


def state_from_stabilizer(s: StabilizerGroup) -> np.ndarray:
    """Normalized joint +1 eigenvector of the signed generators.

    Starts from |0...0> and falls back to later basis states when the
    projector annihilates the reference.
    """
    k = s.num_qubits
    if k > MAX_VECTOR_QUBITS:
        raise BudgetExceeded(f"{k} qubits exceed the dense budget of {MAX_VECTOR_QUBITS}")
    dim = 1 << k
    for start in range(dim):
        psi = np.zeros(dim, dtype=complex)
        psi[start] = 1.0
        for g in s.generators:
            psi = project(g, psi)
        norm = np.linalg.norm(psi)
        if norm > 1e-9:
            return psi / norm
    raise InvalidStateError("generators have no common +1 eigenvector")


def pure_density(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


def random_density_matrix(k: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed mixed state."""
    dim = 1 << k
    r = rank or dim
    g = rng.normal(size=(dim, r)) + 1j * rng.normal(size=(dim, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_noisy_state(psi: np.ndarray, rng: np.random.Generator, terms: int = 4, paulis: int = 3) -> np.ndarray:
    """Mixture of ``psi`` hit by random complex combinations of random Paulis.

    The combinations create coherences between syndrome sectors, which is
    what a twirl has to remove.
    """
    k = _num_qubits(len(psi))
    rho = np.zeros((len(psi),) * 2, dtype=complex)
    for _ in range(terms):
        phi = np.zeros_like(psi, dtype=complex)
        for _ in range(paulis):
            p = PauliProduct(k, int(rng.integers(1 << k)), int(rng.integers(1 << k)))
            c = rng.normal() + 1j * rng.normal()
            phi += c * apply_pauli(p, psi)
        nrm = np.linalg.norm(phi)
        if nrm < 1e-12:
            continue
        phi /= nrm
        rho += rng.random() * pure_density(phi)
    if np.trace(rho).real < 1e-12:
        return pure_density(psi)
    return rho / np.trace(rho)


def multicopy_state(setup: MultiCopySetup) -> StabilizerState:
    """The m-copy target as one stabilizer state on ``m * n`` row-major qubits."""
    return StabilizerState([a.op for a in setup.single_copy_generators()])


def twirl(rho: np.ndarray, s: StabilizerGroup) -> np.ndarray:
    """(1/|S|) sum over Q in S of Q rho Q^dagger."""
    if rho.shape[0] != 1 << s.num_qubits:
        raise DimensionError("density matrix and group sizes differ")
    out = np.zeros_like(rho, dtype=complex)
    count = 0
    for q in s.elements():
        out += conjugate_density(q, rho)
        count += 1
    return out / count


def syndrome_basis(s: StabilizerState) -> np.ndarray:
    """Columns D_e |psi> for every destabilizer combination e (bit i = generator i flipped)."""
    psi = state_from_stabilizer(s)
    d = destabilizers(s)
    k = s.num_qubits
    cols = []
    for e in range(1 << k):
        op = product([d[i] for i in range(k) if (e >> i) & 1], k)
        cols.append(apply_pauli(op, psi))
    return np.stack(cols, axis=1)


def verify_twirl(rho: np.ndarray, s: StabilizerState) -> float:
    """Largest off-diagonal magnitude of the twirled state in the syndrome basis."""
    k = s.num_qubits
    if k > MAX_MATRIX_QUBITS:
        raise BudgetExceeded(f"{k} qubits exceed the density-matrix budget of {MAX_MATRIX_QUBITS}")
    if rho.shape != (1 << k, 1 << k):
        raise DimensionError("density matrix and state sizes differ")
    u = syndrome_basis(s)
    t = u.conj().T @ twirl(rho, s) @ u
    off = t - np.diag(np.diag(t))
    return float(np.abs(off).max())


# -- decoded states ---------------------------------------------------------------------


def _party_checks(setup: MultiCopySetup, code: StabilizerCode) -> list[list[PauliProduct]]:
    m, n = setup.copies, setup.parties
    return [[embed(g.unsigned(), range(c, m * n, n), m * n) for g in code.generators] for c in range(n)]


def measure_checks(
    setup: MultiCopySetup, code: StabilizerCode, outcomes: Sequence[Sequence[int]] | None = None,
    psi: np.ndarray | None = None,
) -> tuple[np.ndarray, list[list[int]]]:
    """Every party measures every code generator; returns the post-measurement state and outcomes.

    ``outcomes[c][j]`` fixes party c's result for generator j.  When omitted,
    each result is +1 unless that outcome has probability zero.
    """
    if setup.num_qubits > MAX_VECTOR_QUBITS:
        raise BudgetExceeded(f"{setup.num_qubits} qubits exceed the dense budget of {MAX_VECTOR_QUBITS}")
    if psi is None:
        psi = state_from_stabilizer(multicopy_state(setup))
    record = []
    for c, ops in enumerate(_party_checks(setup, code)):
        row = []
        for j, g in enumerate(ops):
            want = None if outcomes is None else outcomes[c][j]
            for sign in ((want,) if want is not None else (1, -1)):
                cand = project(g if sign == 1 else -g, psi)
                nrm = np.linalg.norm(cand)
                if nrm > 1e-9:
                    break
            else:
                raise InvalidStateError(f"party {c} outcome {want} for check {j} has probability zero")
            psi = cand / nrm
            row.append(sign)
        record.append(row)
    return psi, record


def verify_decoded_state(
    setup: MultiCopySetup,
    plan: CheckPlan | IncompatibilityReport | StabilizerCode,
    outcomes: Sequence[Sequence[int]] | None = None,
    target: StabilizerGroup | None = None,
) -> bool:
    """Whether the post-measurement state carries the intended logical state.

    Without ``target`` the state must be a +1 eigenvector of every encoded
    master generator of the plan.  With ``target`` (a group on the
    ``k * n`` logical qubits, index ``l * n + c``) it must be a +1
    eigenvector of each target generator instead.
    """
    if isinstance(plan, IncompatibilityReport):
        plan = plan.plan
    code = plan if isinstance(plan, StabilizerCode) else plan.code
    if code.num_physical != setup.copies:
        raise DimensionError("code size and copy count differ")
    psi, _ = measure_checks(setup, code, outcomes)
    if target is not None:
        ops = [encoded_operator(code, g, setup.parties).op for g in target.generators]
    else:
        if isinstance(plan, StabilizerCode):
            raise ValueError("a plan is needed to check encoded generators")
        ops = [e.array.op for e in plan.encoded if e.array is not None]
        if len(ops) != len(plan.encoded):
            return False
    return all(abs(expectation(op, psi) - 1) < ATOL for op in ops)
