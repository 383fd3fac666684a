import itertools

import numpy as np
from hypothesis import given, strategies as st

from stabpurify import gf2

rows_st = st.lists(st.integers(0, 255), max_size=8)


def brute_rank(rows, width=8):
    if not rows:
        return 0
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return int(np.log2(len(span)))


@given(rows_st)
def test_rank_matches_span_size(rows):
    assert gf2.rank(rows) == brute_rank(rows)


@given(rows_st)
def test_rref_is_canonical_for_row_space(rows):
    shuffled = list(reversed(rows)) + [a ^ b for a, b in zip(rows, rows[1:])]
    assert gf2.rref(rows) == gf2.rref(shuffled)


@given(rows_st, st.integers(0, 255))
def test_in_span_and_decompose_agree(rows, v):
    basis = gf2.rref(rows)
    c = gf2.decompose(v, basis)
    assert (c is not None) == gf2.in_span(v, rows)
    if c is not None:
        acc = 0
        for i, r in enumerate(basis):
            if (c >> i) & 1:
                acc ^= r
        assert acc == v


@given(rows_st)
def test_nullspace_is_orthogonal_complement(rows):
    ns = gf2.nullspace(rows, 8)
    for v in ns:
        assert all(gf2.parity(v & r) == 0 for r in rows)
    assert len(ns) == 8 - gf2.rank(rows)
    assert gf2.rank(ns) == len(ns)


@given(rows_st, st.integers(0, 255))
def test_restrict_subspace(rows, functional):
    basis = gf2.rref(rows)
    sub = gf2.restrict_subspace(basis, functional)
    assert all(gf2.parity(v & functional) == 0 for v in sub)
    assert gf2.rank(sub) == len(sub)
    # exactly the annihilated part of the span
    span = {0}
    for r in basis:
        span |= {s ^ r for s in span}
    kept = {s for s in span if gf2.parity(s & functional) == 0}
    assert 1 << len(sub) == len(kept)


def test_decompose_rejects_dependent_rows():
    import pytest

    with pytest.raises(ValueError):
        gf2.decompose(1, [1, 1])


def test_low_bit_and_bits_of():
    assert gf2.low_bit(0b10100) == 2
    assert gf2.bits_of(0b101, 4) == [1, 0, 1, 0]
