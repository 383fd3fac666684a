"""Signed Pauli products in the binary symplectic representation.

A Pauli product on ``n`` qubits is stored as two ``n``-bit integers ``x`` and
``z`` (bit ``q`` belongs to qubit ``q``) plus a phase exponent ``phase`` so that

    P = i**phase * sigma(x_0, z_0) (x) ... (x) sigma(x_{n-1}, z_{n-1})

with sigma(0,0)=I, sigma(1,0)=X, sigma(0,1)=Z and sigma(1,1)=Y.  Because
Y = iXZ, a factor with both bits set carries its own ``i``; all phase arithmetic
below is exact modulo 4.

Python integers act as packed bit vectors of arbitrary width, so inner products
reduce to ``&``, ``^`` and ``int.bit_count``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError

_PREFIXES = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_LETTERS = "IXZY"  # index = x + 2*z


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True, slots=True)
class PauliProduct:
    """Immutable signed Pauli product; see the module docstring for encoding."""

    num_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be non-negative")
        limit = 1 << self.num_qubits
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError("bit vectors exceed num_qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> PauliProduct:
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliProduct:
        """The operator ``letter`` on ``qubit`` and identity elsewhere."""
        if not 0 <= qubit < n:
            raise IndexError(f"qubit {qubit} out of range for {n} qubits")
        code = _LETTERS.index(letter)
        return cls(n, (code & 1) << qubit, (code >> 1) << qubit)

    @classmethod
    def from_string(cls, text: str) -> PauliProduct:
        """Parse strings such as ``"+XZZ"``, ``"-iYI"`` or ``"XX"``."""
        s = text.strip().replace("−", "-")
        phase = 0
        if s[:1] in "+-":
            phase = 0 if s[0] == "+" else 2
            s = s[1:]
        if s[:1] == "i":
            phase += 1
            s = s[1:]
        if not s:
            raise ParseError(f"empty Pauli string {text!r}")
        x = z = 0
        for q, ch in enumerate(s):
            try:
                code = _LETTERS.index(ch.upper())
            except ValueError:
                raise ParseError(f"bad Pauli letter {ch!r} in {text!r}") from None
            x |= (code & 1) << q
            z |= (code >> 1) << q
        return cls(len(s), x, z, phase)

    # -- basic queries ------------------------------------------------------

    def letters(self) -> str:
        return "".join(
            _LETTERS[((self.x >> q) & 1) | (((self.z >> q) & 1) << 1)]
            for q in range(self.num_qubits)
        )

    def __str__(self) -> str:
        return _PREFIXES[self.phase] + self.letters()

    def __repr__(self) -> str:
        return f"PauliProduct({str(self)!r})"

    def letter(self, qubit: int) -> str:
        return _LETTERS[((self.x >> qubit) & 1) | (((self.z >> qubit) & 1) << 1)]

    @property
    def is_identity(self) -> bool:
        """True when the bit part is trivial (any phase)."""
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian products."""
        if not self.is_hermitian:
            raise ValueError(f"{self} is not Hermitian")
        return 1 if self.phase == 0 else -1

    @property
    def bits(self) -> tuple[int, int]:
        return self.x, self.z

    def unsigned(self) -> PauliProduct:
        return PauliProduct(self.num_qubits, self.x, self.z, 0)

    def with_phase(self, phase: int) -> PauliProduct:
        return PauliProduct(self.num_qubits, self.x, self.z, phase)

    def __neg__(self) -> PauliProduct:
        return PauliProduct(self.num_qubits, self.x, self.z, self.phase + 2)

    def __mul__(self, other: PauliProduct) -> PauliProduct:
        return multiply(self, other)

    def symplectic_vector(self) -> int:
        """The 2n-bit vector ``x | z << n`` used by the GF(2) routines."""
        return self.x | (self.z << self.num_qubits)

    @classmethod
    def from_symplectic(cls, n: int, v: int, phase: int = 0) -> PauliProduct:
        mask = (1 << n) - 1
        return cls(n, v & mask, v >> n, phase)


def _check_dims(a: PauliProduct, b: PauliProduct) -> None:
    if a.num_qubits != b.num_qubits:
        raise DimensionError(f"{a.num_qubits}-qubit and {b.num_qubits}-qubit operands")


def multiply(a: PauliProduct, b: PauliProduct) -> PauliProduct:
    """Exact operator product ``a @ b``."""
    _check_dims(a, b)
    x = a.x ^ b.x
    z = a.z ^ b.z
    # i^{x.z} X^x Z^z form: reorder Z^{z_a} X^{x_b} (sign (-1)^{z_a.x_b}), then
    # re-absorb the i's of the resulting Y factors.
    phase = (
        a.phase
        + b.phase
        + _popcount(a.x & a.z)
        + _popcount(b.x & b.z)
        + 2 * _popcount(a.z & b.x)
        - _popcount(x & z)
    )
    return PauliProduct(a.num_qubits, x, z, phase)


def product(ops: Iterable[PauliProduct], n: int | None = None) -> PauliProduct:
    """Ordered product of ``ops``; ``n`` is required when ``ops`` may be empty."""
    result = None
    for op in ops:
        result = op if result is None else multiply(result, op)
    if result is None:
        if n is None:
            raise ValueError("empty product needs n")
        return PauliProduct.identity(n)
    return result


def symplectic_inner(a: PauliProduct, b: PauliProduct) -> int:
    """0 if ``a`` and ``b`` commute, 1 if they anticommute."""
    _check_dims(a, b)
    return _popcount((a.x & b.z) ^ (a.z & b.x)) & 1


def commutes(a: PauliProduct, b: PauliProduct) -> bool:
    return symplectic_inner(a, b) == 0


def hadamard_all(a: PauliProduct) -> PauliProduct:
    """Conjugate by transversal Hadamard: X <-> Z and Y -> -Y."""
    return PauliProduct(a.num_qubits, a.z, a.x, a.phase + 2 * _popcount(a.x & a.z))


def weight(a: PauliProduct) -> int:
    return _popcount(a.x | a.z)


def _scatter(v: int, positions: Sequence[int]) -> int:
    out = 0
    for i, p in enumerate(positions):
        if (v >> i) & 1:
            out |= 1 << p
    return out


def _gather(v: int, positions: Sequence[int]) -> int:
    out = 0
    for i, p in enumerate(positions):
        if (v >> p) & 1:
            out |= 1 << i
    return out


def embed(a: PauliProduct, positions: Sequence[int], total: int) -> PauliProduct:
    """Place ``a`` on ``positions`` of a ``total``-qubit register (identity elsewhere)."""
    if len(positions) != a.num_qubits:
        raise DimensionError(f"{len(positions)} positions for a {a.num_qubits}-qubit operator")
    if any(p < 0 or p >= total for p in positions):
        raise IndexError(f"positions {list(positions)} out of range for {total} qubits")
    if any(q <= p for p, q in zip(positions, positions[1:])):
        raise ValueError("positions must be strictly increasing")
    return PauliProduct(total, _scatter(a.x, positions), _scatter(a.z, positions), a.phase)


def restrict(a: PauliProduct, positions: Sequence[int]) -> PauliProduct:
    """Factors of ``a`` on ``positions`` as an unsigned product (phase dropped)."""
    if any(p < 0 or p >= a.num_qubits for p in positions):
        raise IndexError("position out of range")
    return PauliProduct(len(positions), _gather(a.x, positions), _gather(a.z, positions))


def tensor(*ops: PauliProduct) -> PauliProduct:
    """Kronecker product; the first operand occupies the lowest qubit indices."""
    x = z = 0
    shift = 0
    phase = 0
    for op in ops:
        x |= op.x << shift
        z |= op.z << shift
        phase += op.phase
        shift += op.num_qubits
    return PauliProduct(shift, x, z, phase)


def all_paulis(n: int) -> Iterable[PauliProduct]:
    """Every unsigned n-qubit Pauli product (4**n of them)."""
    for x in range(1 << n):
        for z in range(1 << n):
            yield PauliProduct(n, x, z)


def paulis_of_weight(n: int, w: int) -> Iterable[PauliProduct]:
    """Unsigned n-qubit products with exactly ``w`` non-identity factors."""
    from itertools import combinations, product as cartesian

    for support in combinations(range(n), w):
        for letters in cartesian((1, 2, 3), repeat=w):
            x = z = 0
            for q, code in zip(support, letters):
                x |= (code & 1) << q
                z |= (code >> 1) << q
            yield PauliProduct(n, x, z)
