"""Operator arrays over m copies of an n-party state, and parity-check plans.

An m-copy, n-party Pauli product is laid out as an m x n array: row ``r`` is
copy ``r``, column ``c`` is party ``c``.  The linear qubit index is row-major,
``qubit(r, c) = r * n + c``, everywhere in this package (arrays, error vectors,
reports).

A *single-copy generator* is master generator ``i`` placed on row ``r``; its
index is ``r * n + i``.  Membership of an array in the multi-copy stabilizer is
decided row by row against the master group.

Plan construction (``build_check_plan``) forms candidate multi-party checks
from a master generator and a code generator, keeps the candidates whose
columns are measurable code-group elements and whose rows all lie in the
master group, builds the encoded master generators from the code's logical
operators, and then checks the two sufficiency conditions:

1. every single-copy generator is seen by at least one check;
2. every encoded master generator lies in the multi-copy stabilizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import gf2
from .codes import CodeClass, StabilizerCode, classify_code, is_css, is_css_h
from .errors import DimensionError, InvalidStateError
from .pauli import PauliProduct, embed, hadamard_all, multiply, restrict, symplectic_inner
from .stabilizer import (
    LocalClifford,
    StabilizerGroup,
    StabilizerState,
    StateClass,
    classify_state,
    contains,
    css_frame,
    css_generators,
    is_css_form,
)

# -- operator arrays -------------------------------------------------------------


def _party_name(c: int, n: int) -> str:
    return chr(ord("A") + c) if n <= 26 else f"P{c + 1}"


@dataclass(frozen=True)
class OperatorArray:
    """Pauli product on ``rows * cols`` qubits with ``qubit(r, c) = r * cols + c``."""

    rows: int
    cols: int
    op: PauliProduct
    label: str | None = None

    def __post_init__(self):
        if self.op.num_qubits != self.rows * self.cols:
            raise DimensionError(
                f"{self.op.num_qubits}-qubit operator does not fill a {self.rows}x{self.cols} array"
            )

    def qubit(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"cell ({r}, {c}) outside {self.rows}x{self.cols} array")
        return r * self.cols + c

    def row(self, r: int) -> PauliProduct:
        """Row ``r`` as an unsigned ``cols``-qubit product."""
        return restrict(self.op, [self.qubit(r, c) for c in range(self.cols)])

    def column(self, c: int) -> PauliProduct:
        """Column ``c`` (one party's operator) as an unsigned ``rows``-qubit product."""
        return restrict(self.op, [self.qubit(r, c) for r in range(self.rows)])

    @classmethod
    def from_rows(cls, rows: Sequence[PauliProduct | str], phase: int = 0, label=None) -> OperatorArray:
        ops = [PauliProduct.from_string(r) if isinstance(r, str) else r for r in rows]
        n = ops[0].num_qubits
        total = len(ops) * n
        x = z = 0
        ph = phase
        for r, op in enumerate(ops):
            if op.num_qubits != n:
                raise DimensionError("rows have different widths")
            e = embed(op, range(r * n, (r + 1) * n), total)
            x |= e.x
            z |= e.z
            ph += op.phase
        return cls(len(ops), n, PauliProduct(total, x, z, ph), label)

    @classmethod
    def from_columns(cls, columns: Sequence[PauliProduct], phase: int = 0, label=None) -> OperatorArray:
        """Column-wise tensor product; column phases add (the columns are disjoint)."""
        m = columns[0].num_qubits
        n = len(columns)
        total = m * n
        x = z = 0
        ph = phase
        for c, op in enumerate(columns):
            if op.num_qubits != m:
                raise DimensionError("columns have different heights")
            e = embed(op, range(c, total, n), total)
            x |= e.x
            z |= e.z
            ph += op.phase
        return cls(m, n, PauliProduct(total, x, z, ph), label)

    def with_op(self, op: PauliProduct) -> OperatorArray:
        return OperatorArray(self.rows, self.cols, op, self.label)

    def render(self, indent: str = "") -> str:
        """Grid with party headers and copy numbers, sign on the first line."""
        head = " ".join(_party_name(c, self.cols) for c in range(self.cols))
        sign = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.op.phase]
        lines = [f"{indent}{sign:>2}    {head}"]
        for r in range(self.rows):
            letters = " ".join(self.op.letter(self.qubit(r, c)) for c in range(self.cols))
            lines.append(f"{indent}{r + 1:>4}  {letters}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()


# -- multi-copy setup --------------------------------------------------------------


class MultiCopySetup:
    """``copies`` copies of an n-party master state."""

    def __init__(self, master: StabilizerState, copies: int):
        if not isinstance(master, StabilizerState):
            raise InvalidStateError("master must be a StabilizerState")
        if copies < 1:
            raise ValueError("copies must be >= 1")
        self.master = master
        self.copies = copies
        self.parties = master.num_qubits
        self._master_rows = master.symplectic_rows()

    @property
    def num_qubits(self) -> int:
        return self.copies * self.parties

    def single_copy_generator(self, row: int, index: int) -> OperatorArray:
        n, m = self.parties, self.copies
        g = self.master.generators[index]
        op = embed(g, range(row * n, (row + 1) * n), m * n)
        return OperatorArray(m, n, op, label=f"S{index + 1}@{row + 1}")

    def single_copy_generators(self) -> list[OperatorArray]:
        """All m*n single-copy generators, index ``r * n + i``."""
        return [self.single_copy_generator(r, i) for r in range(self.copies) for i in range(self.parties)]

    def _check(self, a: OperatorArray) -> None:
        if a.rows != self.copies or a.cols != self.parties:
            raise DimensionError(f"{a.rows}x{a.cols} array for a {self.copies}x{self.parties} setup")

    def decomposition(self, a: OperatorArray) -> int | None:
        """Bit mask over single-copy generators whose product equals ``a`` up to sign."""
        self._check(a)
        n = self.parties
        mask = 0
        for r in range(self.copies):
            c = gf2.decompose(a.row(r).symplectic_vector(), self._master_rows)
            if c is None:
                return None
            mask |= c << (r * n)
        return mask

    def offending_rows(self, a: OperatorArray) -> list[int]:
        self._check(a)
        return [r for r in range(self.copies) if contains(self.master, a.row(r)) is None]

    def eigenvalue(self, a: OperatorArray) -> int | None:
        """Eigenvalue of ``a`` on the m-copy target, or None if it is not a stabilizer element."""
        self._check(a)
        if not a.op.is_hermitian:
            return None
        acc = a.op.phase
        for r in range(self.copies):
            ev = contains(self.master, a.row(r))
            if ev is None:
                return None
            acc += 0 if ev == 1 else 2
        return 1 if acc % 4 == 0 else -1

    def flip_vector(self, error: PauliProduct) -> int:
        """Bit ``r * n + i`` is set when ``error`` flips single-copy generator (r, i)."""
        if error.num_qubits != self.num_qubits:
            raise DimensionError(f"{error.num_qubits}-qubit error on a {self.num_qubits}-qubit setup")
        n = self.parties
        out = 0
        for r in range(self.copies):
            row = restrict(error, range(r * n, (r + 1) * n))
            for i, g in enumerate(self.master.generators):
                out |= symplectic_inner(row, g) << (r * n + i)
        return out


def multicopy_eigenvalue(setup: MultiCopySetup, a: OperatorArray) -> int | None:
    return setup.eigenvalue(a)


def in_multicopy_stabilizer(setup: MultiCopySetup, a: OperatorArray) -> bool:
    """Whether ``a`` fixes the m-copy target (every row in the master group, total sign +1)."""
    return setup.eigenvalue(a) == 1


# -- plans -----------------------------------------------------------------------


@dataclass(frozen=True)
class ParityCheck:
    """A multi-party check: each party measures one column on its m qubits.

    ``array`` carries the sign that makes it a +1 stabilizer element; the
    product of the unsigned column outcomes is ``expected_outcome`` when no
    error occurred.
    """

    array: OperatorArray
    masters: tuple[int, ...]
    code_index: int
    family: str
    columns: tuple[PauliProduct, ...]
    column_labels: tuple[str, ...]
    expected_outcome: int
    decomposition: int


@dataclass(frozen=True)
class EncodedGenerator:
    """Master generator ``master`` encoded into logical qubit ``logical``.

    ``array`` is signed to fix the target; ``logical_sign`` is the raw
    eigenvalue of the unsigned construction, i.e. the known logical frame sign
    of this generator in the decoded state.
    """

    array: OperatorArray | None
    raw: OperatorArray
    master: int
    logical: int
    logical_sign: int | None
    decomposition: int | None


@dataclass(frozen=True)
class RejectedCandidate:
    masters: tuple[int, ...]
    code_index: int
    family: str
    reason: str
    row: int | None = None
    row_op: PauliProduct | None = None


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    witness: object = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


@dataclass
class CheckPlan:
    setup: MultiCopySetup
    code: StabilizerCode
    frame: LocalClifford
    construction: str
    checks: list[ParityCheck]
    encoded: list[EncodedGenerator]
    rejected: list[RejectedCandidate] = field(default_factory=list)
    condition_1: ConditionResult | None = None
    condition_2: ConditionResult | None = None

    @property
    def ok(self) -> bool:
        return bool(self.condition_1) and bool(self.condition_2)

    @property
    def master(self) -> StabilizerState:
        return self.setup.master

    def checks_for(self, master_index: int) -> list[ParityCheck]:
        return [c for c in self.checks if master_index in c.masters]


@dataclass
class IncompatibilityReport:
    """Why a (state, code) pair was refused: the first failing condition and its witness."""

    condition: int
    witness: object
    detail: str
    plan: CheckPlan

    @property
    def ok(self) -> bool:
        return False


# -- construction ---------------------------------------------------------------

_HERMITIAN_LETTER = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}


def _local(bits_x: int, bits_z: int, m: int) -> PauliProduct:
    return PauliProduct(m, bits_x, bits_z)


def _uniform_type(g: PauliProduct) -> str | None:
    if g.z == 0:
        return "X"
    if g.x == 0:
        return "Z"
    return None


def _pair_form(s: StabilizerState) -> list[tuple[int, int]] | None:
    """Index pairs (X^u, Z^u) partitioning the generators, or None."""
    xs = {g.x: i for i, g in enumerate(s.generators) if g.z == 0}
    zs = {g.z: i for i, g in enumerate(s.generators) if g.x == 0}
    if len(xs) + len(zs) != len(s.generators) or set(xs) != set(zs):
        return None
    return [(xs[u], zs[u]) for u in sorted(xs)]


def _typed_form(s: StabilizerState) -> bool:
    return all(_uniform_type(g) is not None for g in s.generators)


def _pair_master(s: StabilizerState) -> StabilizerState:
    """Regenerate a CSS-H-form state as X^u, Z^u pairs."""
    xs, _ = css_generators(s)
    gens = []
    for gx in xs:
        gz = PauliProduct(s.num_qubits, 0, gx.x)
        gens += [gx, gz.with_phase(0 if contains(s, gz) == 1 else 2)]
    return StabilizerState(gens)


def _typed_master(s: StabilizerState) -> StabilizerState:
    xs, zs = css_generators(s)
    return StabilizerState(xs + zs)


def _normalize(
    master: StabilizerState, code: StabilizerCode, frame
) -> tuple[StabilizerState, LocalClifford, str]:
    """Choose frame and generator presentation; returns (master, frame, construction)."""
    n = master.num_qubits
    code_h = is_css_h(code)
    code_css = is_css(code)
    if frame == "auto":
        if code_h:
            frame = LocalClifford.identity(n)
        else:
            cls = classify_state(master)
            f = None
            if cls is StateClass.CSS_H:
                f = css_frame(master, hadamard_invariant=True)
            elif cls is StateClass.CSS and code_css:
                f = css_frame(master)
            frame = f if f is not None else LocalClifford.identity(n)
    elif frame is None:
        frame = LocalClifford.identity(n)
    elif not isinstance(frame, LocalClifford):
        raise TypeError("frame must be None, 'auto' or a LocalClifford")
    if frame.num_qubits != n:
        raise DimensionError("frame and master sizes differ")
    s = master if frame.is_identity else StabilizerState(frame.apply(master).generators)

    if code_h:
        return s, frame, "variant"
    if _pair_form(s) is not None:
        return s, frame, "pair"
    if is_css_form(s) and len(s.generators) % 2 == 0:
        xs, zs = css_generators(s)
        if sorted(g.x for g in xs) == sorted(g.z for g in zs):
            return _pair_master(s), frame, "pair"
    if code_css and is_css_form(s):
        return (s if _typed_form(s) else _typed_master(s)), frame, "typed"
    return s, frame, "fallback"


def _logical_reps(code: StabilizerCode) -> list[dict[str, PauliProduct]]:
    """Per logical qubit, representatives of X_L, Z_L and Y_L = i X_L Z_L.

    For CSS-H codes Z_L is replaced by the equivalent ``hadamard_all(X_L)`` so
    that X and Z columns of an encoded generator share their support.
    """
    reps = []
    h = is_css_h(code)
    for lx, lz in zip(code.logical_x, code.logical_z):
        if h:
            hz = hadamard_all(lx)
            stab = multiply(hz, lz)
            sign = contains(code.checks, stab)
            if sign is not None:
                lz = hz if sign == 1 else -hz
        xz = multiply(lx, lz)
        reps.append({"X": lx, "Z": lz, "Y": xz.with_phase(xz.phase + 1)})
    return reps


def _variant_columns(s: PauliProduct, g: PauliProduct, j: int, m: int):
    """Column c: g (X), H(g) (Z), g.H(g) (Y); unsigned so each is Hermitian."""
    hg = hadamard_all(g)
    by_letter = {
        "X": (g.x, g.z, f"g{j + 1}"),
        "Z": (hg.x, hg.z, f"H(g{j + 1})"),
        "Y": (g.x ^ hg.x, g.z ^ hg.z, f"g{j + 1}H(g{j + 1})"),
    }
    cols, labels = [], []
    for c in range(s.num_qubits):
        letter = s.letter(c)
        if letter == "I":
            cols.append(PauliProduct.identity(m))
            labels.append("I")
        else:
            x, z, lab = by_letter[letter]
            cols.append(_local(x, z, m))
            labels.append(lab)
    return cols, labels


def _support_columns(support: int, g: PauliProduct, j: int, n: int, m: int):
    cols, labels = [], []
    for c in range(n):
        if (support >> c) & 1:
            cols.append(g.unsigned())
            labels.append(f"g{j + 1}")
        else:
            cols.append(PauliProduct.identity(m))
            labels.append("I")
    return cols, labels


def _candidates(s: StabilizerState, code: StabilizerCode, construction: str):
    """Yield (masters, code_index, family, columns, labels) in a fixed order."""
    n = s.num_qubits
    m = code.num_physical
    gens = code.generators
    if construction == "pair":
        for ix, iz in _pair_form(s):
            support = s.generators[ix].x
            for j, g in enumerate(gens):
                cols, labels = _support_columns(support, g, j, n, m)
                yield (ix, iz), j, "pair", cols, labels
        return
    for i, sg in enumerate(s.generators):
        support = sg.x | sg.z
        st = _uniform_type(sg)
        for j, g in enumerate(gens):
            if construction == "typed":
                if st is not None and _uniform_type(g) == st:
                    cols, labels = _support_columns(support, g, j, n, m)
                    yield (i,), j, "typed", cols, labels
                continue
            if construction == "fallback":
                cols, labels = _support_columns(support, g, j, n, m)
                yield (i,), j, "same", cols, labels
            cols, labels = _variant_columns(sg, g, j, m)
            yield (i,), j, "variant", cols, labels


def _encoded_generators(setup: MultiCopySetup, code: StabilizerCode) -> list[EncodedGenerator]:
    s = setup.master
    reps = _logical_reps(code)
    m = code.num_physical
    out = []
    for i, sg in enumerate(s.generators):
        for ell, rep in enumerate(reps):
            cols = [rep[sg.letter(c)] if sg.letter(c) != "I" else PauliProduct.identity(m) for c in range(s.num_qubits)]
            raw = OperatorArray.from_columns(cols, phase=sg.phase, label=f"S{i + 1}_L{ell + 1}")
            ev = setup.eigenvalue(raw)
            signed = None
            if ev is not None:
                signed = raw if ev == 1 else raw.with_op(-raw.op)
            out.append(EncodedGenerator(signed, raw, i, ell, ev, setup.decomposition(raw)))
    return out


def check_condition_1(setup: MultiCopySetup, plan: CheckPlan) -> ConditionResult:
    """Every single-copy generator must appear in some check's decomposition."""
    seen = 0
    for chk in plan.checks:
        seen |= chk.decomposition
    n = setup.parties
    for r in range(setup.copies):
        for i in range(n):
            if not (seen >> (r * n + i)) & 1:
                w = setup.single_copy_generator(r, i)
                detail = (
                    f"a flip of master generator {i + 1} ({setup.master.generators[i]}) on copy {r + 1} "
                    "changes no multi-party check"
                )
                return ConditionResult(False, w, detail)
    return ConditionResult(True)


def check_condition_2(setup: MultiCopySetup, plan: CheckPlan) -> ConditionResult:
    """Every encoded master generator must lie in the multi-copy stabilizer."""
    for e in plan.encoded:
        if e.array is None or not in_multicopy_stabilizer(setup, e.array):
            bad = setup.offending_rows(e.raw)
            row = bad[0] if bad else None
            detail = f"encoded generator {e.raw.label} is not in the multi-copy stabilizer"
            if row is not None:
                detail += f"; row {row + 1} ({e.raw.row(row).letters()}) is not in the master group"
            return ConditionResult(False, e.raw, detail)
    return ConditionResult(True)


def build_check_plan(
    master: StabilizerState,
    code: StabilizerCode,
    frame: LocalClifford | str | None = None,
    *,
    parties: int | None = None,
    copies: int | None = None,
) -> CheckPlan | IncompatibilityReport:
    """Build parity checks and encoded generators for purifying ``master`` with ``code``.

    Parameters
    ----------
    master : StabilizerState
        Target state, one qubit per party.
    code : StabilizerCode
        Purifying code; the protocol consumes ``code.num_physical`` copies.
    frame : None, "auto" or LocalClifford
        ``None`` uses the generators as given.  ``"auto"`` searches for a local
        frame in which the state is CSS (or CSS-H) when the code needs one.
    parties, copies : int, optional
        Expected sizes, validated when given.

    Returns
    -------
    CheckPlan when both sufficiency conditions hold, else an
    IncompatibilityReport naming the first failing condition.
    """
    if parties is not None and parties != master.num_qubits:
        raise DimensionError(f"state has {master.num_qubits} parties, expected {parties}")
    if copies is not None and copies != code.num_physical:
        raise DimensionError(f"code consumes {code.num_physical} copies, not {copies}")
    s, fr, construction = _normalize(master, code, frame)
    setup = MultiCopySetup(s, code.num_physical)

    checks: list[ParityCheck] = []
    rejected: list[RejectedCandidate] = []
    seen: set[tuple[int, int]] = set()
    for masters, j, family, cols, labels in _candidates(s, code, construction):
        bad_col = next((c for c, op in enumerate(cols) if not op.is_identity and not code.in_check_group(op)), None)
        if bad_col is not None:
            rejected.append(
                RejectedCandidate(
                    masters, j, family,
                    f"column {_party_name(bad_col, s.num_qubits)} ({cols[bad_col].letters()}) is not a check-group element",
                )
            )
            continue
        arr = OperatorArray.from_columns(cols)
        if arr.op.is_identity:
            continue
        ev = setup.eigenvalue(arr)
        if ev is None:
            r = setup.offending_rows(arr)[0]
            rejected.append(
                RejectedCandidate(
                    masters, j, family,
                    f"row {r + 1} ({arr.row(r).letters()}) is not in the master group",
                    r, arr.row(r),
                )
            )
            continue
        key = arr.op.bits
        if key in seen:
            continue
        seen.add(key)
        label = f"S{'/'.join(str(i + 1) for i in masters)} x g{j + 1} ({family})"
        signed = OperatorArray(arr.rows, arr.cols, arr.op if ev == 1 else -arr.op, label)
        checks.append(
            ParityCheck(signed, masters, j, family, tuple(cols), tuple(labels), ev, setup.decomposition(arr))
        )

    plan = CheckPlan(setup, code, fr, construction, checks, _encoded_generators(setup, code), rejected)
    plan.condition_1 = check_condition_1(setup, plan)
    plan.condition_2 = check_condition_2(setup, plan)
    if not plan.condition_1:
        witness = plan.condition_1.witness
        detail = plan.condition_1.detail
        # point at the row that sank the candidates for the unseen master generator
        i = int(witness.label[1:].split("@")[0]) - 1
        for rc in rejected:
            if i in rc.masters and rc.row is not None:
                detail += f"; e.g. candidate S{i + 1} x g{rc.code_index + 1} has row {rc.row + 1} = {rc.row_op.letters()}"
                break
        return IncompatibilityReport(1, witness, detail, plan)
    if not plan.condition_2:
        return IncompatibilityReport(2, plan.condition_2.witness, plan.condition_2.detail, plan)
    return plan


def witness_row(report: IncompatibilityReport) -> PauliProduct | None:
    """The first offending row behind an incompatibility, if one exists."""
    if report.condition == 2:
        bad = report.plan.setup.offending_rows(report.witness)
        return report.witness.row(bad[0]) if bad else None
    i = int(report.witness.label[1:].split("@")[0]) - 1
    for rc in report.plan.rejected:
        if i in rc.masters and rc.row_op is not None:
            return rc.row_op
    return None


def class_compatibility(state_class: StateClass | str, code_class: CodeClass | str) -> bool:
    """Whether the class pairing is guaranteed to admit a valid plan.

    CSS-H states work with any code, CSS states with CSS codes, and any state
    with a CSS-H code.  Everything else is not guaranteed (False).
    """
    sc = StateClass(str(state_class))
    cc = CodeClass(str(code_class))
    if cc is CodeClass.CSS_H:
        return True
    if sc is StateClass.CSS_H:
        return True
    return sc is StateClass.CSS and cc is CodeClass.CSS


# -- encoded state ------------------------------------------------------------------


def _logical_letters(code: StabilizerCode, op: PauliProduct) -> tuple[PauliProduct, int]:
    """Split a normalizer element as sign * (logical Pauli) * (check element).

    Returns the logical Pauli on ``k`` logical qubits (phase 0, Y = i X_L Z_L)
    and the physical representative it was matched against.
    """
    lx, lz = code.logical_action(op)
    k = code.num_logical
    rep = PauliProduct.identity(code.num_physical)
    reps = _logical_reps(code)
    for ell in range(k):
        a, b = (lx >> ell) & 1, (lz >> ell) & 1
        if a or b:
            rep = multiply(rep, reps[ell]["XZY"[a + 2 * b - 1]])
    return PauliProduct(k, lx, lz), rep


def encoded_state(
    setup: MultiCopySetup, code: StabilizerCode, outcomes: Sequence[Sequence[int]] | None = None
) -> StabilizerState:
    """Logical state left after every party measures every code generator.

    ``outcomes[c][j]`` is party ``c``'s +-1 result for code generator ``j``
    (default all +1).  Logical qubit ``l`` of party ``c`` has index ``l * n + c``.
    The result is computed by intersecting the multi-copy stabilizer with the
    commutant of the measured checks and reading off logical actions.
    """
    n, m = setup.parties, setup.copies
    k = code.num_logical
    if m != code.num_physical:
        raise DimensionError(f"code acts on {code.num_physical} qubits but setup has {m} copies")
    if outcomes is None:
        outcomes = [[1] * len(code.generators) for _ in range(n)]
    singles = [a.op for a in setup.single_copy_generators()]
    measured = []
    for c in range(n):
        for j, g in enumerate(code.generators):
            op = embed(g, range(c, m * n, n), m * n)
            measured.append(op if outcomes[c][j] == 1 else -op)
    # combinations of single-copy generators commuting with every measured check
    constraints = []
    for g in measured:
        row = 0
        for b, s in enumerate(singles):
            row |= symplectic_inner(s, g) << b
        constraints.append(row)
    combos = gf2.nullspace(constraints, len(singles))

    party_codes = [
        StabilizerGroup([g if outcomes[c][j] == 1 else -g for j, g in enumerate(code.generators)])
        for c in range(n)
    ]
    logical_gens = []
    for mask in combos:
        t = PauliProduct.identity(m * n)
        for b in range(len(singles)):
            if (mask >> b) & 1:
                t = multiply(t, singles[b])
        arr = OperatorArray(m, n, t)
        phase = t.phase
        lx = lz = 0
        for c in range(n):
            col = arr.column(c)
            lp, rep = _logical_letters(code, col)
            rest = multiply(col, rep)  # rep is Hermitian, so rep^-1 == rep
            eps = contains(party_codes[c], rest) if not rest.is_identity else (1 if rest.phase == 0 else -1)
            if eps is None:
                raise InvalidStateError("column outside the code normalizer")  # pragma: no cover
            phase += 0 if eps == 1 else 2
            for ell in range(k):
                lx |= ((lp.x >> ell) & 1) << (ell * n + c)
                lz |= ((lp.z >> ell) & 1) << (ell * n + c)
        if phase % 2:
            raise InvalidStateError("non-Hermitian logical operator")  # pragma: no cover
        if lx == 0 and lz == 0:
            if phase % 4 != 0:
                raise ValueError("outcome record has probability zero")
            continue
        logical_gens.append(PauliProduct(k * n, lx, lz, phase))
    # independent subset
    chosen: list[PauliProduct] = []
    for g in logical_gens:
        if not gf2.in_span(g.symplectic_vector(), [c.symplectic_vector() for c in chosen]):
            chosen.append(g)
        elif contains(StabilizerGroup(chosen, k * n), g) != 1:
            # a dependent generator with the opposite sign: -I would be stabilized
            raise ValueError("outcome record has probability zero")
    return StabilizerState(chosen, k * n)


# -- text rendering ------------------------------------------------------------------


def format_plan(plan: CheckPlan) -> str:
    s = plan.setup.master
    lines = [
        f"# state: {', '.join(str(g) for g in s.generators)}",
        f"# code: {plan.code.name or 'custom'} [[{plan.code.num_physical},{plan.code.num_logical}]]"
        f" ({classify_code(plan.code)})",
        f"# copies (rows): {plan.setup.copies}   parties (columns): {plan.setup.parties}",
        "# qubit index: copy * parties + party",
        f"# construction: {plan.construction}",
        f"# frame: {plan.frame}",
        f"# condition 1: {'pass' if plan.condition_1 else 'FAIL'}",
        f"# condition 2: {'pass' if plan.condition_2 else 'FAIL'}",
        f"checks: {len(plan.checks)}",
    ]
    for t, chk in enumerate(plan.checks, 1):
        lines.append("")
        lines.append(f"check {t}: {chk.array.label}; expected product {chk.expected_outcome:+d}")
        lines.append("# measured: " + ", ".join(
            f"{_party_name(c, s.num_qubits)}={lab}" for c, lab in enumerate(chk.column_labels)
        ))
        lines.append(chk.array.render("  "))
    lines.append("")
    lines.append(f"encoded generators: {len(plan.encoded)}")
    for e in plan.encoded:
        lines.append("")
        sign = "" if e.logical_sign in (None, 1) else "; logical frame sign -1"
        member = "" if e.array is not None else "; NOT in multi-copy stabilizer"
        lines.append(f"encoded {e.raw.label}{sign}{member}")
        lines.append((e.array or e.raw).render("  "))
    return "\n".join(lines) + "\n"


def format_report(report: IncompatibilityReport) -> str:
    lines = [
        f"incompatible: condition {report.condition} fails",
        f"detail: {report.detail}",
        "witness:",
        report.witness.render("  "),
    ]
    row = witness_row(report)
    if row is not None:
        lines.append(f"offending row: {row.letters()}")
    return "\n".join(lines) + "\n"


def encoded_operator(code: StabilizerCode, logical: PauliProduct, parties: int) -> OperatorArray:
    """Physical array for a Pauli on the ``k * parties`` logical qubits (index ``l * n + c``)."""
    k = code.num_logical
    if logical.num_qubits != k * parties:
        raise DimensionError(f"logical operator on {logical.num_qubits} qubits, expected {k * parties}")
    reps = _logical_reps(code)
    m = code.num_physical
    cols = []
    for c in range(parties):
        col = PauliProduct.identity(m)
        for ell in range(k):
            letter = logical.letter(ell * parties + c)
            if letter != "I":
                col = multiply(col, reps[ell][letter])
        cols.append(col)
    return OperatorArray.from_columns(cols, phase=logical.phase)
