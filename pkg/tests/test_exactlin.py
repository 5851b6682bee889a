from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twoquiver.exactlin import (FieldNotSplitError, Matrix, NonAssociativeError, StructureConstants, Subspace,
                                algebra_radical, membership, nullspace, rank, rref, solve)

small = st.integers(-4, 4).map(Fraction)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def as_sympy(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


def test_rref_known():
    m, piv = rref([[2, 4, 2], [1, 2, 3]])
    assert m.to_rows() == [[1, 2, 0], [0, 0, 1]]
    assert piv == [0, 2]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_and_rank_match_sympy(rows):
    m, piv = rref(rows)
    ref, ref_piv = as_sympy(rows).rref()
    assert [[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m.to_rows()] == ref.tolist()
    assert tuple(piv) == ref_piv
    assert rank(rows) == as_sympy(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_nullspace_is_kernel_of_right_dimension(rows):
    basis = nullspace(rows)
    ncols = len(rows[0])
    assert len(basis) == ncols - rank(rows)
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_agrees_with_consistency(rows, b):
    b = b[:len(rows)]
    x = solve(rows, b)
    aug_rank = rank([r + [y] for r, y in zip(rows, b)])
    if aug_rank > rank(rows):
        assert x is None
    else:
        assert [sum(a * c for a, c in zip(r, x)) for r in rows] == b


def test_membership_reports_residual():
    space, _ = rref([[1, 0, 1], [0, 1, 1]])
    assert membership(space, [2, 3, 5]) == (True, [2, 3])
    ok, residual = membership(space, [1, 1, 1])
    assert not ok and residual == [0, 0, -1]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.sampled_from("abcde"), small), max_size=6),
       st.dictionaries(st.sampled_from("abcde"), small))
def test_subspace_membership_matches_rank(vectors, v):
    s = Subspace()
    for w in vectors:
        s.add(w)
    keys = list("abcde")
    rows = [[w.get(k, 0) for k in keys] for w in vectors] or [[0] * 5]
    assert len(s) == rank(rows)
    assert s.contains(v) == (rank(rows + [[v.get(k, 0) for k in keys]]) == rank(rows))


def test_subspace_pivot_is_largest_key():
    s = Subspace(order=len)
    s.add({"aaa": 1, "a": 2})
    assert s.reduce({"aaa": 1}) == {"a": -2}


def dual_numbers():
    # basis 1, t with t^2 = 0
    return StructureConstants.build(2, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], unit=[1, 0])


def test_radical_of_dual_numbers():
    rad = algebra_radical(dual_numbers(), require_discrete=True)
    assert rad == [[0, 1]]


def test_radical_of_semisimple_product():
    a = StructureConstants.build(2, [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], unit=[1, 1],
                                 idempotents=[[1, 0], [0, 1]])
    assert algebra_radical(a, require_discrete=True) == []


def test_field_not_split_over_rationals():
    # Q(i): i^2 = -1 has no radical but is not split over Q
    a = StructureConstants.build(2, [[[1, 0], [0, 1]], [[0, 1], [-1, 0]]], unit=[1, 0])
    with pytest.raises(FieldNotSplitError):
        algebra_radical(a, require_discrete=True)
    assert algebra_radical(a) == []


def test_non_associative_table_rejected():
    a = StructureConstants.build(2, [[[0, 1], [1, 0]], [[1, 0], [1, 1]]])
    with pytest.raises(NonAssociativeError):
        algebra_radical(a)


def test_matrix_identity_product():
    m = Matrix.from_rows([[1, 2], [3, 4]])
    assert (m @ Matrix.identity(2)).to_rows() == m.to_rows()
