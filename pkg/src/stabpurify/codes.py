"""Stabilizer codes with explicit logical operators, and syndrome tables."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import gf2
from .errors import BudgetExceeded, DimensionError, InvalidCodeError, ParseError
from .pauli import PauliProduct, hadamard_all, multiply, paulis_of_weight, symplectic_inner
from .stabilizer import (
    StabilizerGroup,
    _decompose,
    _parse_header_lines,
    contains,
    is_css_form,
    parse_pauli_field,
)


def _p(s):
    return PauliProduct.from_string(s) if isinstance(s, str) else s


class StabilizerCode:
    """Check generators plus one (X_L, Z_L) pair per encoded qubit."""

    def __init__(
        self,
        checks: Sequence[PauliProduct | str],
        logical_x: Sequence[PauliProduct | str],
        logical_z: Sequence[PauliProduct | str],
        name: str | None = None,
    ):
        self.checks = StabilizerGroup([_p(c) for c in checks])
        n = self.checks.num_qubits
        self.logical_x = tuple(_p(op) for op in logical_x)
        self.logical_z = tuple(_p(op) for op in logical_z)
        self.name = name
        if len(self.logical_x) != len(self.logical_z):
            raise InvalidCodeError("logical_x and logical_z lengths differ")
        for op in self.logical_x + self.logical_z:
            if op.num_qubits != n:
                raise DimensionError(f"logical {op} does not act on {n} qubits")
        self._validate()

    @property
    def num_physical(self) -> int:
        return self.checks.num_qubits

    @property
    def num_logical(self) -> int:
        return len(self.logical_x)

    @property
    def generators(self) -> tuple[PauliProduct, ...]:
        return self.checks.generators

    def __repr__(self) -> str:
        label = self.name or "code"
        return f"<StabilizerCode {label} [[{self.num_physical},{self.num_logical}]]>"

    def _validate(self) -> None:
        n, k = self.num_physical, self.num_logical
        if len(self.checks) + k != n:
            raise InvalidCodeError(f"{len(self.checks)} checks and {k} logicals on {n} qubits")
        for op in self.logical_x + self.logical_z:
            if not op.is_hermitian:
                raise InvalidCodeError(f"logical {op} is not Hermitian")
            for g in self.checks.generators:
                if symplectic_inner(op, g):
                    raise InvalidCodeError(f"logical {op} anticommutes with check {g}")
        for i in range(k):
            for j in range(k):
                want = 1 if i == j else 0
                if symplectic_inner(self.logical_x[i], self.logical_z[j]) != want:
                    raise InvalidCodeError(f"X_L[{i}] and Z_L[{j}] have the wrong commutation")
                if symplectic_inner(self.logical_x[i], self.logical_x[j]) or symplectic_inner(
                    self.logical_z[i], self.logical_z[j]
                ):
                    raise InvalidCodeError("logical operators of one type must commute")
        rows = self.checks.symplectic_rows() + [op.symplectic_vector() for op in self.logical_x + self.logical_z]
        if gf2.rank(rows) != len(rows):
            raise InvalidCodeError("checks and logicals are not independent")

    def logical_op(self, index: int, letter: str) -> PauliProduct:
        """Logical X, Y or Z of encoded qubit ``index`` (Y = i X_L Z_L)."""
        if letter == "X":
            return self.logical_x[index]
        if letter == "Z":
            return self.logical_z[index]
        if letter == "Y":
            xz = multiply(self.logical_x[index], self.logical_z[index])
            return xz.with_phase(xz.phase + 1)
        if letter == "I":
            return PauliProduct.identity(self.num_physical)
        raise ValueError(f"bad logical letter {letter!r}")

    def in_check_group(self, op: PauliProduct) -> bool:
        return _decompose(self.checks, op.unsigned()) is not None

    def logical_action(self, op: PauliProduct) -> tuple[int, int]:
        """(x, z) bit masks of the logical Pauli implemented by a normalizer element."""
        lx = lz = 0
        for i in range(self.num_logical):
            # X-component detected by Z_L and vice versa
            lx |= symplectic_inner(op, self.logical_z[i]) << i
            lz |= symplectic_inner(op, self.logical_x[i]) << i
        return lx, lz


# -- syndromes ---------------------------------------------------------------


def syndrome_bits(code: StabilizerCode, e: PauliProduct) -> int:
    """Syndrome packed as an integer; bit j belongs to check j."""
    if e.num_qubits != code.num_physical:
        raise DimensionError(f"{e.num_qubits}-qubit error on a {code.num_physical}-qubit code")
    out = 0
    for j, g in enumerate(code.checks.generators):
        out |= symplectic_inner(e, g) << j
    return out


def syndrome(code: StabilizerCode, e: PauliProduct) -> tuple[int, ...]:
    s = syndrome_bits(code, e)
    return tuple((s >> j) & 1 for j in range(len(code.checks)))


@dataclass(frozen=True)
class TableEntry:
    correction: object
    detect_only: bool = False


@dataclass
class SyndromeTable:
    """Syndrome -> correction, with ambiguous syndromes flagged detect-only.

    Syndromes missing from ``entries`` were never produced by an enumerated
    error and are treated like detect-only ones by decoders.
    """

    num_checks: int
    max_weight: int
    entries: dict[int, TableEntry] = field(default_factory=dict)

    def decode(self, s: int):
        """Correction for syndrome ``s``, or None if the syndrome must be rejected."""
        entry = self.entries.get(s)
        if entry is None or entry.detect_only:
            return None
        return entry.correction

    @property
    def fully_correcting(self) -> bool:
        return not any(e.detect_only for e in self.entries.values())

    def detect_only_syndromes(self) -> list[int]:
        return sorted(s for s, e in self.entries.items() if e.detect_only)


def tabulate(
    errors: Iterable,
    syndrome_of: Callable[[object], int],
    equivalent: Callable[[object, object], bool],
    num_checks: int,
    max_weight: int,
) -> SyndromeTable:
    """Generic first-come table: later inequivalent collisions mark the syndrome detect-only.

    ``errors`` must be ordered by nondecreasing weight so stored representatives
    are minimum weight.
    """
    table = SyndromeTable(num_checks, max_weight)
    for e in errors:
        s = syndrome_of(e)
        prev = table.entries.get(s)
        if prev is None:
            table.entries[s] = TableEntry(e)
        elif not prev.detect_only and not equivalent(prev.correction, e):
            table.entries[s] = TableEntry(prev.correction, detect_only=True)
    return table


def build_syndrome_table(code: StabilizerCode, max_weight: int) -> SyndromeTable:
    """Enumerate every error up to ``max_weight``; corrections are classes modulo the check group."""
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    n = code.num_physical

    def errors():
        for w in range(min(max_weight, n) + 1):
            yield from paulis_of_weight(n, w)

    def equivalent(a, b):
        # same syndrome, so a*b is in the normalizer; it is a check element iff
        # it acts trivially on every logical qubit
        return code.logical_action(multiply(a, b)) == (0, 0)

    return tabulate(errors(), lambda e: syndrome_bits(code, e), equivalent, len(code.checks), max_weight)


# -- classification ------------------------------------------------------------


def is_css(code: StabilizerCode) -> bool:
    return is_css_form(code.checks)


def is_css_h(code: StabilizerCode) -> bool:
    """CSS, check group fixed by transversal H with signs, and H swapping X_L/Z_L per qubit."""
    if not is_css(code):
        return False
    for g in code.checks.generators:
        if contains(code.checks, hadamard_all(g)) != 1:
            return False
    for lx, lz in zip(code.logical_x, code.logical_z):
        if not code.in_check_group(multiply(hadamard_all(lx), lz)):
            return False
        if not code.in_check_group(multiply(hadamard_all(lz), lx)):
            return False
    return True


class CodeClass(str, enum.Enum):
    CSS_H = "CSS-H"
    CSS = "CSS"
    STABILIZER = "STABILIZER (non-CSS)"

    def __str__(self) -> str:
        return self.value


def classify_code(code: StabilizerCode) -> CodeClass:
    if is_css_h(code):
        return CodeClass.CSS_H
    if is_css(code):
        return CodeClass.CSS
    return CodeClass.STABILIZER


DEFAULT_DISTANCE_BUDGET = 10


def distance(code: StabilizerCode, budget: int = DEFAULT_DISTANCE_BUDGET) -> int:
    """Minimum weight of a nontrivial logical operator (brute force)."""
    n = code.num_physical
    if n > budget:
        raise BudgetExceeded(f"distance enumeration over {n} qubits exceeds budget {budget}")
    for w in range(1, n + 1):
        for e in paulis_of_weight(n, w):
            if syndrome_bits(code, e) == 0 and code.logical_action(e) != (0, 0):
                return w
    raise InvalidCodeError("code has no nontrivial logical operator")  # pragma: no cover


def correctable_weight(code: StabilizerCode) -> int:
    return (distance(code) - 1) // 2


# -- builtin codes -------------------------------------------------------------

BUILTIN_CODES: dict[str, tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]] = {
    "C4": (
        ("+XXXX", "+ZZZZ"),
        ("+XXII", "+IXIX"),
        ("+ZIZI", "+IIZZ"),
    ),
    "C5": (
        ("+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"),
        ("+XXXXX",),
        ("+ZZZZZ",),
    ),
    "C6": (
        ("+XIXXIX", "+IXXIXX", "+ZIZZIZ", "+IZZIZZ"),
        ("+XXXIII", "+IIIXXX"),
        ("+ZZZIII", "+IIIZZZ"),
    ),
    "C7": (
        ("+XIXIXIX", "+IXXIIXX", "+IIIXXXX", "+ZIZIZIZ", "+IZZIIZZ", "+IIIZZZZ"),
        ("+XXXXXXX",),
        ("+ZZZZZZZ",),
    ),
}


def builtin(name: str) -> StabilizerCode:
    key = name.upper()
    if key not in BUILTIN_CODES:
        raise KeyError(f"unknown builtin code {name!r}; choose from {sorted(BUILTIN_CODES)}")
    checks, lx, lz = BUILTIN_CODES[key]
    return StabilizerCode(checks, lx, lz, name=key)


# -- text format ---------------------------------------------------------------


def format_code(code: StabilizerCode) -> str:
    lines = []
    if code.name:
        lines.append(f"name: {code.name}")
    lines.append(f"qubits: {code.num_physical}")
    lines += [f"gen: {g}" for g in code.checks.generators]
    for lx, lz in zip(code.logical_x, code.logical_z):
        lines.append(f"logical_x: {lx}")
        lines.append(f"logical_z: {lz}")
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> StabilizerCode:
    n = None
    name = None
    gens, lxs, lzs = [], [], []
    for lineno, key, value in _parse_header_lines(text):
        if key == "name":
            name = value
        elif key == "qubits":
            try:
                n = int(value)
            except ValueError:
                raise ParseError(f"bad qubit count {value!r}", lineno) from None
        elif key in ("gen", "logical_x", "logical_z"):
            if n is None:
                raise ParseError(f"'{key}' before 'qubits' header", lineno)
            op = parse_pauli_field(value, lineno, n)
            {"gen": gens, "logical_x": lxs, "logical_z": lzs}[key].append((lineno, op))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if n is None:
        raise ParseError("missing 'qubits' header")
    from .stabilizer import _validate_lines

    _validate_lines(gens)
    try:
        return StabilizerCode([g for _, g in gens], [o for _, o in lxs], [o for _, o in lzs], name=name)
    except InvalidCodeError as exc:
        raise ParseError(str(exc)) from None
