"""Exact RREF, span membership, and incremental span extension."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from divalg.linalg import (
    ExactMatrix,
    basis_of,
    empty_basis,
    rref,
    same_span,
    span_contains,
    span_extend,
)


def test_rref_proportional_rows():
    b, rank = rref(ExactMatrix.from_rows([[1, 2], [2, 4]]))
    assert rank == 1
    assert b.rows == ((1, 2),)


def test_rref_identity():
    b, rank = rref(ExactMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert rank == 3


def test_rref_hand_elimination():
    b, rank = rref(ExactMatrix.from_rows([[0, 1], [1, 0], [1, 1]]))
    assert rank == 2
    assert b.pivot_cols == (0, 1)


def test_rref_fractions():
    b, rank = rref(ExactMatrix.from_rows([[Fraction(1, 2), 1], [1, 2], [3, 5]]))
    assert rank == 2
    # pivots are exactly 1, pivot columns clean
    for r, p in zip(b.rows, b.pivot_cols):
        assert r[p] == 1


def test_span_contains_examples():
    b = basis_of([(1, 0)], 2)
    assert span_contains(b, (2, 0))
    assert not span_contains(b, (0, 1))
    b2 = basis_of([(1, 1), (0, 2)], 2)
    assert span_contains(b2, (3, 5))


def test_span_contains_scaling_invariance():
    b = basis_of([(1, 2, 3), (0, 1, 1)], 3)
    v = (1, 3, 4)
    assert span_contains(b, v)
    assert span_contains(b, tuple(Fraction(7, 3) * x for x in v))


def test_span_extend_examples():
    b = basis_of([(1, 0)], 2)
    b2, grew = span_extend(b, [(0, 1)])
    assert grew and b2.rank == 2
    b3, grew = span_extend(b, [(5, 0)])
    assert not grew and b3.rank == 1
    b4, _ = span_extend(empty_basis(2), [(1, 2), (2, 4), (0, 1)])
    assert b4.rank == 2


def test_rref_is_projection():
    m = ExactMatrix.from_rows([[2, 4, 6], [1, 3, 5], [0, 1, 1]])
    b, _ = rref(m)
    b2, _ = rref(ExactMatrix.from_rows(list(b.rows)))
    assert b.rows == b2.rows


def test_vector_length_checked():
    b = basis_of([(1, 0)], 2)
    with pytest.raises(ValueError):
        span_contains(b, (1, 0, 0))


vectors3 = st.lists(
    st.lists(st.integers(min_value=-5, max_value=5), min_size=3, max_size=3),
    min_size=1,
    max_size=5,
)


@given(vectors3, vectors3)
def test_extend_monotone_and_idempotent(rows, more):
    b = basis_of(rows, 3)
    b2, grew = span_extend(b, more)
    assert b2.rank >= b.rank
    assert grew == (b2.rank > b.rank)
    b3, grew3 = span_extend(b2, more)
    assert not grew3
    assert b3.rows == b2.rows


@given(vectors3)
def test_rref_canonical_under_permutation(rows):
    b1 = basis_of(rows, 3)
    b2 = basis_of(list(reversed(rows)), 3)
    assert b1.rows == b2.rows
    assert same_span(b1, b2)
