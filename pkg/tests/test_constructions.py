from functools import lru_cache
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoquiver import build_two_category, check_licit, two_level_acyclic, verify_drop, verify_two_category
from twoquiver.constructions import (OrderedMonoid, a2_algebra, catalan_monoid, cyclic_kronecker_algebra,
                                     format_relation, monoid_two_category, projective_semicategory)
from twoquiver.constructions.fixtures import xquiver_bundle
from twoquiver.constructions.monoid import MonoidError, cover_chains


@lru_cache(maxsize=None)
def count_maps(n, i=1, floor=1):
    """Non-decreasing f on {i..n} with floor <= f(i) <= i, counted recursively."""
    if i > n:
        return 1
    return sum(count_maps(n, i + 1, v) for v in range(floor, i + 1))


@pytest.mark.parametrize("n,size", [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42)])
def test_catalan_sizes(n, size):
    m = catalan_monoid(n)
    assert len(m.elements) == size == count_maps(n) == comb(2 * n, n) // (n + 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 10 ** 6))))
def test_catalan_elements_are_order_preserving_and_decreasing(arg):
    n, k = arg
    m = catalan_monoid(n)
    f = m.elements[k % len(m.elements)]
    assert all(f[i] <= i + 1 for i in range(n))
    assert all(a <= b for a, b in zip(f, f[1:]))
    assert m.mul(f, f) == tuple(f[x - 1] for x in f)


def test_incompatible_order_rejected():
    # lexicographic order is total but not compatible with composition in C_3
    with pytest.raises(MonoidError, match="not compatible"):
        catalan_monoid(3, leq=lambda f, g: f <= g)


def test_bad_unit_rejected():
    with pytest.raises(MonoidError):
        OrderedMonoid.build([0, 1], lambda x, y: x * y, 0, lambda x, y: x == y)


def built(q, p, j, d, name):
    check_licit(p)
    return build_two_category(q, p, j, d, name)


def test_catalan_three_two_category():
    m = catalan_monoid(3)
    q, p, j, d = monoid_two_category(m)
    assert len(q.two_edges) == 5 and len(j.generators) == 2 and j.nilpotency_degree == 4
    cat = built(q, p, j, d, "C_3")
    assert verify_drop(cat).ok
    assert verify_two_category(cat).ok


def test_chain_choice_does_not_matter():
    m = catalan_monoid(3)
    assert any(len(cover_chains(m, x, y)) > 1 for x in m.elements for y in m.elements if m.leq(x, y))
    a = built(*monoid_two_category(m, chain=0), "chain 0")
    b = built(*monoid_two_category(m, chain=1), "chain 1")
    assert a._raw_lower == b._raw_lower and a._raw_upper == b._raw_upper


@pytest.mark.slow
def test_catalan_four_two_category():
    q, p, j, d = monoid_two_category(catalan_monoid(4))
    cat = built(q, p, j, d, "C_4")
    assert verify_drop(cat).ok
    assert verify_two_category(cat).ok


def test_algebra_dimensions():
    a2 = a2_algebra()
    assert a2.dim == 3
    assert [len(a2.basis(a, b)) for a in "ef" for b in "ef"] == [1, 1, 0, 1]
    assert cyclic_kronecker_algebra().dim > a2.dim


def test_square_quiver_presentation():
    q, p, j, d = projective_semicategory(a2_algebra())
    assert sorted(q.one_edges) == ["F_ee", "F_ef", "F_fe", "F_ff"]
    assert q.two_edges == {"α_{e,x}": ("F_ee", "F_ef"), "α_{f,x}": ("F_fe", "F_ff"),
                           "α_{x,e}": ("F_fe", "F_ee"), "α_{x,f}": ("F_ff", "F_ef")}
    assert [format_relation(g.terms) for g in j.generators] == ["α_{e,x}∘α_{x,e} = α_{x,f}∘α_{f,x}"]
    assert j.nilpotency_degree == 3


def test_xquiver_is_not_two_level_acyclic():
    b = xquiver_bundle()
    assert check_licit(b.presentation).ok
    assert two_level_acyclic(b.quiver) == (False, ["α", "β"])
