from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoquiver import Cell, OneCell, PathVector, TwoQuiver
from twoquiver.pathcat import enumerate_paths, identity_cell, path_key, vertical_compose
from twoquiver.quiver2 import QuiverError

Q = TwoQuiver(("*",), {"F": ("*", "*"), "G": ("*", "*")}, {},
              {"a": ("F", "G"), "b": ("G", "F"), "c": ("F", "F")})


def test_enumerate_paths_counts():
    # F -> F paths: (), c, b∘a, c∘c at length <= 2
    assert enumerate_paths(Q, "F", "F", 2) == [(), ("c",), ("b", "a"), ("c", "c")]
    with pytest.raises(ValueError):
        enumerate_paths(Q, "F", "F", None)


def test_path_key_is_length_first():
    assert sorted([("b", "a"), ("c",), ()], key=path_key) == [(), ("c",), ("b", "a")]


def test_path_vector_validation():
    v = PathVector.path(Q, "b", "a")
    assert (v.src, v.tgt) == ("F", "F")
    with pytest.raises(QuiverError):
        PathVector.path(Q, "a", "a")


coeffs = st.integers(-3, 3).map(Fraction)


def cells(src, tgt):
    paths = {"F": {"F": [(), ("c",)], "G": [("a",), ("a", "c")]},
             "G": {"F": [("b",)], "G": [(), ("a", "b")]}}

    def entry(s, t):
        return st.dictionaries(st.sampled_from(paths[s][t]), coeffs)

    grid = st.tuples(*[st.tuples(*[entry(s, t) for s in src]) for t in tgt])
    return grid.map(lambda g: Cell(OneCell("*", "*", src), OneCell("*", "*", tgt), g))


L1, L2, L3, L4 = ("F", "G"), ("F",), ("F", "G"), ("G",)


@settings(max_examples=80, deadline=None)
@given(cells(L1, L2), cells(L3, L1), cells(L4, L3))
def test_vertical_composition_is_associative(a, b, c):
    assert vertical_compose(vertical_compose(a, b), c) == vertical_compose(a, vertical_compose(b, c))


@settings(max_examples=80, deadline=None)
@given(cells(L1, L3))
def test_identity_cells_are_units(a):
    assert vertical_compose(identity_cell(a.tgt), a) == a
    assert vertical_compose(a, identity_cell(a.src)) == a


M3 = ("F", "F", "G")


@settings(max_examples=80, deadline=None)
@given(cells(M3, L2), cells(L4, M3))
def test_swapping_equal_summands_commutes_with_composition(a, b):
    """Exchanging the two F summands of the middle 1-cell on both sides leaves a∘b unchanged."""
    swap = [1, 0, 2]
    ap = a.permuted(range(a.shape[0]), swap)
    bp = b.permuted(swap, range(b.shape[1]))
    assert vertical_compose(ap, bp) == vertical_compose(a, b)


def test_cell_arithmetic():
    F = OneCell("*", "*", ("F",))
    c = Cell(F, F, (({("c",): Fraction(2)},),))
    assert (c - c).is_zero
    assert c.scaled(Fraction(1, 2)).entry(0, 0) == {("c",): 1}
    with pytest.raises(QuiverError):
        Cell(F, F, (({},), ({},)))
