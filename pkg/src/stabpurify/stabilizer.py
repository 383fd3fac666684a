"""Stabilizer groups and states.

Generators are stored as *signed* Pauli products: a generator ``-XX`` is the
operator that fixes the state, so every stored element has eigenvalue +1.
``signs`` exposes the eigenvalue column of the usual (generator, eigenvalue)
presentation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import gf2
from .errors import DimensionError, InvalidStateError, ParseError
from .pauli import PauliProduct, hadamard_all, multiply, symplectic_inner


def _as_pauli(g) -> PauliProduct:
    return PauliProduct.from_string(g) if isinstance(g, str) else g


class StabilizerGroup:
    """Independent, commuting, Hermitian generators (possibly fewer than qubits)."""

    def __init__(self, generators: Iterable[PauliProduct | str], num_qubits: int | None = None):
        gens = tuple(_as_pauli(g) for g in generators)
        if num_qubits is None:
            if not gens:
                raise InvalidStateError("num_qubits required for an empty generator list")
            num_qubits = gens[0].num_qubits
        for i, g in enumerate(gens):
            if g.num_qubits != num_qubits:
                raise DimensionError(f"generator {i} acts on {g.num_qubits} qubits, expected {num_qubits}")
            if not g.is_hermitian:
                raise InvalidStateError(f"generator {i} ({g}) is not Hermitian")
            if g.is_identity:
                raise InvalidStateError(f"generator {i} is the identity")
        for i, g in enumerate(gens):
            for j in range(i):
                if symplectic_inner(g, gens[j]):
                    raise InvalidStateError(f"generators {j} ({gens[j]}) and {i} ({g}) anticommute")
        if gf2.rank(g.symplectic_vector() for g in gens) != len(gens):
            raise InvalidStateError("generators are not independent")
        self.num_qubits = num_qubits
        self.generators = gens
        self._canonical: CanonicalForm | None = None

    @classmethod
    def from_strings(cls, labels: Sequence[str]) -> StabilizerGroup:
        return cls([PauliProduct.from_string(s) for s in labels])

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(g.sign for g in self.generators)

    @property
    def paulis(self) -> tuple[PauliProduct, ...]:
        """Generators with their signs stripped."""
        return tuple(g.unsigned() for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"{type(self).__name__}([{', '.join(str(g) for g in self.generators)}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, StabilizerGroup):
            return NotImplemented
        return equal_groups(self, other)

    def __hash__(self) -> int:
        return hash(canonicalize(self).rows)

    def symplectic_rows(self) -> list[int]:
        return [g.symplectic_vector() for g in self.generators]

    def elements(self) -> Iterator[PauliProduct]:
        """All 2**k signed group elements (each fixes the stabilized space)."""
        k = len(self.generators)
        for mask in range(1 << k):
            acc = PauliProduct.identity(self.num_qubits)
            for i in range(k):
                if (mask >> i) & 1:
                    acc = multiply(acc, self.generators[i])
            yield acc


class StabilizerState(StabilizerGroup):
    """A stabilizer group with exactly as many generators as qubits."""

    def __init__(self, generators, num_qubits=None):
        super().__init__(generators, num_qubits)
        if len(self.generators) != self.num_qubits:
            raise InvalidStateError(
                f"{len(self.generators)} generators for {self.num_qubits} qubits; a state needs one per qubit"
            )


@dataclass(frozen=True)
class CanonicalForm:
    """Signed generators in reduced row echelon form over the (x|z) columns.

    ``pivots`` lists ``(kind, qubit)`` with kind ``"x"`` or ``"z"``.
    """

    num_qubits: int
    rows: tuple[PauliProduct, ...]
    pivots: tuple[tuple[str, int], ...]


def canonicalize(s: StabilizerGroup) -> CanonicalForm:
    if s._canonical is not None:
        return s._canonical
    n = s.num_qubits
    # echelon with tracked signed products, pivot = lowest symplectic bit
    basis: dict[int, PauliProduct] = {}
    for g in s.generators:
        for p in sorted(basis):
            if (g.symplectic_vector() >> p) & 1:
                g = multiply(g, basis[p])
        v = g.symplectic_vector()
        if v == 0:
            raise InvalidStateError("dependent generators")
        basis[gf2.low_bit(v)] = g
    pivots = sorted(basis)
    for p in pivots:
        for q in pivots:
            if q != p and (basis[q].symplectic_vector() >> p) & 1:
                basis[q] = multiply(basis[q], basis[p])
    rows = tuple(basis[p] for p in pivots)
    kinds = tuple(("x", p) if p < n else ("z", p - n) for p in pivots)
    form = CanonicalForm(n, rows, kinds)
    s._canonical = form
    return form


def _decompose(s: StabilizerGroup, p: PauliProduct) -> PauliProduct | None:
    """Signed group element with the same bits as ``p``, or None."""
    if p.num_qubits != s.num_qubits:
        raise DimensionError(f"{p.num_qubits}-qubit operator against a {s.num_qubits}-qubit group")
    form = canonicalize(s)
    n = s.num_qubits
    v = p.symplectic_vector()
    acc = PauliProduct.identity(n)
    for row in form.rows:
        pv = gf2.low_bit(row.symplectic_vector())
        if (v >> pv) & 1:
            acc = multiply(acc, row)
    if acc.symplectic_vector() != v:
        return None
    return acc


def contains(s: StabilizerGroup, p: PauliProduct | str) -> int | None:
    """Eigenvalue (+1/-1) of ``p`` on the stabilized space, or None if ``p`` is not in the group."""
    p = _as_pauli(p)
    elem = _decompose(s, p)
    if elem is None:
        return None
    rel = (p.phase - elem.phase) % 4
    if rel % 2:
        raise ValueError(f"{p} is not Hermitian")
    return 1 if rel == 0 else -1


def equal_groups(a: StabilizerGroup, b: StabilizerGroup) -> bool:
    if a.num_qubits != b.num_qubits:
        return False
    return canonicalize(a).rows == canonicalize(b).rows


def is_css_form(s: StabilizerGroup) -> bool:
    """Whether the group has a generating set of purely X-type and purely Z-type elements."""
    xs = [g.x for g in s.generators]
    zs = [g.z for g in s.generators]
    return gf2.rank(xs) + gf2.rank(zs) == len(s.generators)


def css_generators(s: StabilizerGroup) -> tuple[list[PauliProduct], list[PauliProduct]]:
    """Signed X-type and Z-type group elements forming canonical bases of those subgroups."""
    n = s.num_qubits
    rows = s.symplectic_rows()
    xmask = (1 << n) - 1
    # group elements whose z (resp. x) part vanishes: kernel of the projection
    z_kernel = _kernel_combinations([r >> n for r in rows])
    x_kernel = _kernel_combinations([r & xmask for r in rows])
    xs = [_combine(s, c) for c in z_kernel]
    zs = [_combine(s, c) for c in x_kernel]
    xs = _canonical_subset(s, xs)
    zs = _canonical_subset(s, zs)
    return xs, zs


def _kernel_combinations(vectors: Sequence[int]) -> list[int]:
    """Masks c with XOR of vectors[i] over set bits of c equal to zero."""
    k = len(vectors)
    # transpose: constraint per bit position over the k coefficients
    width = max((v.bit_length() for v in vectors), default=0)
    constraints = []
    for b in range(width):
        row = 0
        for i, v in enumerate(vectors):
            if (v >> b) & 1:
                row |= 1 << i
        if row:
            constraints.append(row)
    return gf2.nullspace(constraints, k)


def _combine(s: StabilizerGroup, mask: int) -> PauliProduct:
    acc = PauliProduct.identity(s.num_qubits)
    for i, g in enumerate(s.generators):
        if (mask >> i) & 1:
            acc = multiply(acc, g)
    return acc


def _canonical_subset(s: StabilizerGroup, elems: list[PauliProduct]) -> list[PauliProduct]:
    vecs = gf2.rref(e.symplectic_vector() for e in elems)
    return [_decompose(s, PauliProduct.from_symplectic(s.num_qubits, v)) for v in vecs]


def apply_pauli_frame(s: StabilizerGroup, p: PauliProduct | str) -> StabilizerGroup:
    """Flip the sign of every generator anticommuting with ``p``."""
    p = _as_pauli(p)
    if p.num_qubits != s.num_qubits:
        raise DimensionError("frame and state sizes differ")
    gens = [-g if symplectic_inner(g, p) else g for g in s.generators]
    return type(s)(gens, s.num_qubits)


def destabilizers(s: StabilizerState) -> list[PauliProduct]:
    """Unsigned products ``d_i`` anticommuting with generator ``i`` only."""
    n = s.num_qubits
    swapped = [(g.symplectic_vector() >> n) | ((g.symplectic_vector() & ((1 << n) - 1)) << n) for g in s.generators]
    out = []
    for i in range(n):
        others = swapped[:i] + swapped[i + 1 :]
        for v in gf2.nullspace(others, 2 * n):
            if gf2.parity(v & swapped[i]):
                out.append(PauliProduct.from_symplectic(n, v))
                break
        else:  # pragma: no cover - independence guarantees a solution
            raise InvalidStateError("no destabilizer found")
    return out


# -- local Clifford frames -------------------------------------------------

# A single-qubit Clifford up to Pauli corrections is the pair of (x, z) bit
# images of X and of Z.  Identity first so untouched states keep their frame.
_X, _Z, _Y = (1, 0), (0, 1), (1, 1)
AXIS_MAPS: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    (_X, _Z),  # identity
    (_Z, _X),  # Hadamard
    (_X, _Y),  # X->X, Z->Y
    (_Y, _X),
    (_Y, _Z),  # X->Y, Z->Z (phase gate)
    (_Z, _Y),
)
# one representative per {map, map with images swapped} pair
_FIRST_QUBIT_MAPS = (AXIS_MAPS[0], AXIS_MAPS[2], AXIS_MAPS[4])


def _letter_bits(bits: tuple[int, int], n: int, q: int) -> PauliProduct:
    return PauliProduct(n, bits[0] << q, bits[1] << q)


@dataclass(frozen=True)
class LocalClifford:
    """Product of single-qubit Cliffords mapping X -> +A_q and Z -> +B_q on qubit q."""

    maps: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    @classmethod
    def identity(cls, n: int) -> LocalClifford:
        return cls((AXIS_MAPS[0],) * n)

    @property
    def num_qubits(self) -> int:
        return len(self.maps)

    @property
    def is_identity(self) -> bool:
        return all(m == AXIS_MAPS[0] for m in self.maps)

    def conjugate(self, p: PauliProduct) -> PauliProduct:
        """U p U^dagger with exact phase."""
        n = self.num_qubits
        if p.num_qubits != n:
            raise DimensionError("frame and operator sizes differ")
        xpart = PauliProduct.identity(n)
        zpart = PauliProduct.identity(n)
        for q, (ix, iz) in enumerate(self.maps):
            if (p.x >> q) & 1:
                xpart = multiply(xpart, _letter_bits(ix, n, q))
            if (p.z >> q) & 1:
                zpart = multiply(zpart, _letter_bits(iz, n, q))
        out = multiply(xpart, zpart)
        # sigma(1,1) = i X Z carries an extra i per Y factor
        return out.with_phase(out.phase + p.phase + (p.x & p.z).bit_count())

    def apply(self, s: StabilizerGroup) -> StabilizerGroup:
        return type(s)([self.conjugate(g) for g in s.generators], s.num_qubits)

    def __str__(self) -> str:
        names = {(_X, _Z): "I", (_Z, _X): "H"}
        out = []
        for m in self.maps:
            out.append(names.get(m, f"X->{_axis_name(m[0])},Z->{_axis_name(m[1])}"))
        return " ".join(out)


def _axis_name(bits):
    return {_X: "X", _Z: "Z", _Y: "Y"}[bits]


def random_local_clifford(n: int, rng) -> LocalClifford:
    return LocalClifford(tuple(AXIS_MAPS[int(rng.integers(6))] for _ in range(n)))


# -- classification --------------------------------------------------------


class StateClass(str, enum.Enum):
    CSS_H = "CSS-H"
    CSS = "CSS"
    GENERAL = "GENERAL"
    UNKNOWN = "UNKNOWN"

    def __str__(self) -> str:
        return self.value


def _new_bit_masks(n: int, q: int, m) -> tuple[int, int]:
    """Functionals (over 2n-bit vectors) giving the transformed x and z bits of qubit q."""
    (ax, az), (bx, bz) = m
    new_x = (ax << q) | (bx << (q + n))
    new_z = (az << q) | (bz << (q + n))
    return new_x, new_z


def _css_leaves(s: StabilizerGroup, hadamard: bool) -> Iterator[LocalClifford]:
    """Local frames putting ``s`` into CSS form (optionally also H-invariant), in search order."""
    n = s.num_qubits
    k = len(s.generators)
    full = gf2.rref(s.symplectic_rows())
    half = k // 2

    def feasible(bx, bz):
        if hadamard:
            return len(bx) >= half and len(bz) >= half
        return len(bx) + len(bz) >= k

    def rec(q, chosen, bx, bz):
        if q == n:
            if len(bx) + len(bz) != k:
                return
            frame = LocalClifford(tuple(chosen))
            if hadamard and not _hadamard_invariant_css(s, frame, bx, bz):
                return
            yield frame
            return
        for m in (_FIRST_QUBIT_MAPS if q == 0 else AXIS_MAPS):
            fx, fz = _new_bit_masks(n, q, m)
            # X-type elements need transformed z bits zero, Z-type need x bits zero
            nbx = gf2.restrict_subspace(bx, fz)
            nbz = gf2.restrict_subspace(bz, fx)
            if not feasible(nbx, nbz):
                continue
            chosen.append(m)
            yield from rec(q + 1, chosen, nbx, nbz)
            chosen.pop()

    yield from rec(0, [], list(full), list(full))


def _hadamard_invariant_css(s, frame: LocalClifford, bx, bz) -> bool:
    n = s.num_qubits
    if len(bx) != len(bz):
        return False
    mapped_x = [frame.conjugate(PauliProduct.from_symplectic(n, v)).x for v in bx]
    mapped_z = [frame.conjugate(PauliProduct.from_symplectic(n, v)).z for v in bz]
    return gf2.rref(mapped_x) == gf2.rref(mapped_z)


def css_frame(s: StabilizerGroup, hadamard_invariant: bool = False) -> LocalClifford | None:
    """First local frame (in search order) mapping ``s`` to CSS form, or None."""
    return next(iter(_css_leaves(s, hadamard_invariant)), None)


DEFAULT_CLASSIFY_BUDGET = 8


def classify_state(s: StabilizerGroup, budget: int = DEFAULT_CLASSIFY_BUDGET) -> StateClass:
    """Local-Clifford class of a stabilizer state.

    Exhaustive over single-qubit axis permutations when ``num_qubits <= budget``;
    larger inputs only get the frame-free checks and may come back UNKNOWN.
    Signs never matter: local Pauli corrections reach every sign pattern.
    """
    n = s.num_qubits
    if n > budget:
        if is_css_form(s) and n % 2 == 0 and is_hadamard_invariant(s, with_signs=False):
            return StateClass.CSS_H
        return StateClass.UNKNOWN
    if css_frame(s) is None:
        return StateClass.GENERAL
    if len(s.generators) % 2 == 0 and css_frame(s, hadamard_invariant=True) is not None:
        return StateClass.CSS_H
    return StateClass.CSS


def is_hadamard_invariant(s: StabilizerGroup, with_signs: bool = True) -> bool:
    """Whether transversal Hadamard maps the group onto itself."""
    for g in s.generators:
        h = hadamard_all(g)
        if with_signs:
            if contains(s, h) != 1:
                return False
        elif _decompose(s, h.unsigned()) is None:
            return False
    return True


# -- builtin states ----------------------------------------------------------

BUILTIN_STATES: dict[str, tuple[str, ...]] = {
    "bell": ("+XX", "+ZZ"),
    "ghz3": ("+XXX", "+ZZI", "+ZIZ"),
    # generator order used when discussing purification with the five-qubit code
    "ghz3-path": ("+ZZI", "+XXX", "+IZZ"),
    "ghz4": ("+XXXX", "+ZZII", "+IZZI", "+IIZZ"),
    "triangle": ("+XZZ", "+ZXZ", "+ZZX"),
}


def builtin_state(name: str) -> StabilizerState:
    try:
        labels = BUILTIN_STATES[name.lower()]
    except KeyError:
        raise KeyError(f"unknown builtin state {name!r}; choose from {sorted(BUILTIN_STATES)}") from None
    return StabilizerState.from_strings(labels)


def graph_state(num_qubits: int, edges: Iterable[tuple[int, int]]) -> StabilizerState:
    """Graph state with generators X_v prod_{w ~ v} Z_w."""
    nbrs = [0] * num_qubits
    for a, b in edges:
        nbrs[a] |= 1 << b
        nbrs[b] |= 1 << a
    return StabilizerState([PauliProduct(num_qubits, 1 << v, nbrs[v]) for v in range(num_qubits)])


def random_stabilizer_state(n: int, rng) -> StabilizerState:
    """Random state: random graph state under random local Cliffords and signs."""
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.5]
    g = graph_state(n, edges)
    g = random_local_clifford(n, rng).apply(g)
    flip = PauliProduct(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
    return apply_pauli_frame(g, flip)


# -- text format -------------------------------------------------------------


def format_state(s: StabilizerGroup) -> str:
    lines = [f"qubits: {s.num_qubits}"]
    lines += [f"gen: {g}" for g in s.generators]
    return "\n".join(lines) + "\n"


def _parse_header_lines(text: str) -> Iterator[tuple[int, str, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {raw.strip()!r}", lineno)
        key, value = (part.strip() for part in line.split(":", 1))
        yield lineno, key.lower(), value


def parse_pauli_field(value: str, lineno: int, n: int | None) -> PauliProduct:
    try:
        p = PauliProduct.from_string(value)
    except ParseError as exc:
        raise ParseError(str(exc), lineno) from None
    if n is not None and p.num_qubits != n:
        raise ParseError(f"{value!r} has {p.num_qubits} qubits, header says {n}", lineno)
    if not p.is_hermitian:
        raise ParseError(f"{value!r} is not Hermitian", lineno)
    return p


def parse_state(text: str) -> StabilizerState:
    """Parse the line-oriented state format (``qubits: n`` then ``gen: <signed pauli>`` lines)."""
    n = None
    gens: list[tuple[int, PauliProduct]] = []
    for lineno, key, value in _parse_header_lines(text):
        if key == "qubits":
            if n is not None:
                raise ParseError("duplicate 'qubits' header", lineno)
            try:
                n = int(value)
            except ValueError:
                raise ParseError(f"bad qubit count {value!r}", lineno) from None
            if n <= 0:
                raise ParseError("qubit count must be positive", lineno)
        elif key == "gen":
            if n is None:
                raise ParseError("'gen' before 'qubits' header", lineno)
            gens.append((lineno, parse_pauli_field(value, lineno, n)))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if n is None:
        raise ParseError("missing 'qubits' header")
    _validate_lines(gens)
    if len(gens) != n:
        raise ParseError(f"{len(gens)} generators for {n} qubits")
    return StabilizerState([g for _, g in gens], n)


def _validate_lines(gens: list[tuple[int, PauliProduct]]) -> None:
    basis: dict[int, int] = {}
    for i, (lineno, g) in enumerate(gens):
        if g.is_identity:
            raise ParseError("identity generator", lineno)
        for lj, h in gens[:i]:
            if symplectic_inner(g, h):
                raise ParseError(f"{g} anticommutes with {h} (line {lj})", lineno)
        v = gf2.reduce(g.symplectic_vector(), basis)
        if v == 0:
            raise ParseError(f"{g} is a product of earlier generators", lineno)
        basis[gf2.low_bit(v)] = v
