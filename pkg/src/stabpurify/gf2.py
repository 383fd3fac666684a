"""Linear algebra over GF(2) on rows packed into Python integers.

Pivots are chosen at the lowest set bit, so ``rref`` output is unique for a
given row space.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def parity(v: int) -> int:
    return v.bit_count() & 1


def echelon(rows: Iterable[int]) -> dict[int, int]:
    """Map pivot bit -> basis row (not fully reduced)."""
    basis: dict[int, int] = {}
    for v in rows:
        v = reduce(v, basis)
        if v:
            basis[low_bit(v)] = v
    return basis


def reduce(v: int, basis: dict[int, int]) -> int:
    """Fully reduce ``v`` against an echelon basis keyed by pivot bit."""
    for p in sorted(basis):
        if (v >> p) & 1:
            v ^= basis[p]
    return v


def rank(rows: Iterable[int]) -> int:
    return len(echelon(rows))


def rref(rows: Iterable[int]) -> list[int]:
    """Unique reduced row echelon form, sorted by pivot position."""
    basis = echelon(rows)
    pivots = sorted(basis)
    for p in pivots:
        for q in pivots:
            if q != p and (basis[q] >> p) & 1:
                basis[q] ^= basis[p]
    return [basis[p] for p in pivots]


def in_span(v: int, rows: Sequence[int]) -> bool:
    return reduce(v, echelon(rows)) == 0


def decompose(v: int, rows: Sequence[int]) -> int | None:
    """Coefficient mask ``c`` with XOR of ``rows[i]`` (bit i of c set) equal to ``v``.

    ``rows`` must be independent; returns None when ``v`` is outside their span.
    """
    basis: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(rows):
        tag = 1 << i
        while r:
            p = low_bit(r)
            if p not in basis:
                basis[p] = (r, tag)
                break
            br, bt = basis[p]
            r ^= br
            tag ^= bt
        else:
            raise ValueError("rows are dependent")
    coeff = 0
    while v:
        p = low_bit(v)
        if p not in basis:
            return None
        br, bt = basis[p]
        v ^= br
        coeff ^= bt
    return coeff


def nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {v : parity(v & r) == 0 for every r in rows} within ``ncols`` bits."""
    # Solve by Gaussian elimination on the constraint matrix.
    basis = rref(rows)
    pivots = [low_bit(r) for r in basis]
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = 1 << f
        for r, p in zip(basis, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def restrict_subspace(basis: list[int], functional: int) -> list[int]:
    """Basis of the subspace of span(basis) annihilated by ``functional``.

    ``basis`` must be independent; the result drops at most one vector.
    """
    for k, b in enumerate(basis):
        if parity(b & functional):
            return [c ^ b if parity(c & functional) else c for j, c in enumerate(basis) if j != k]
    return list(basis)


def bits_of(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]
