from collections import Counter

import pytest

from twoquiver import gabriel_quiver, round_trip
from twoquiver.constructions import a2_algebra, cyclic_kronecker_algebra, format_relation, projective_semicategory
from twoquiver.constructions import projective_two_category
from twoquiver.constructions.fixtures import ca_lifts
from twoquiver.gabriel import radical_power
from twoquiver.quiver2 import QuiverError

CV_TO_KRONECKER = {"V": "I", "P1": "F_ee", "P2": "F_ff", "Q1": "F_fe", "Q2": "F_ef"}


def test_round_trip_m(m_data):
    r = round_trip(*m_data, "M")
    assert r.ok, r.to_text()
    assert r.data["isomorphism"]["two_edges"] == {a: a for a in m_data[0].two_edges}


def test_round_trip_square_quiver():
    q, p, j, d = projective_semicategory(a2_algebra())
    r = round_trip(q, p, j, d, "S_A")
    assert r.ok, r.to_text()
    assert r.data["nilpotency_degree"] == 3


def test_extracted_m_counts(m_cat):
    res = gabriel_quiver(m_cat)
    assert len(res.quiver.two_edges) == 5
    assert res.radical_dims[("Q", "P")] == 2


def test_identity_including_category_relation():
    cat = projective_two_category(a2_algebra(), certify=False)
    res = gabriel_quiver(cat, ca_lifts(cat))
    assert sorted(res.quiver.two_edges) == ["α", "β₁", "β₂", "γ₁", "γ₂"]
    assert [format_relation(g.terms) for g in res.ideal.generators] == ["β₁∘γ₁ = β₂∘γ₂"]
    assert res.ideal.nilpotency_degree == 4


def test_bad_lifts_rejected():
    cat = projective_two_category(a2_algebra(), certify=False)
    lifts = dict(ca_lifts(cat))
    lifts["γ₂"] = lifts["γ₁"][:2] + ({"F_fe→F_ee:x⊗e": 2},)
    with pytest.raises(QuiverError):
        gabriel_quiver(cat, lifts)


def test_transcribed_cv_agrees_with_bimodule_engine(cv):
    """Two independent routes to the same 2-category agree on every invariant we can read off."""
    ck = projective_two_category(cyclic_kronecker_algebra(), certify=False)
    m = CV_TO_KRONECKER
    assert {m[v] for v in cv.one_edges} == set(ck.one_edges)
    for a in m:
        for b in m:
            assert sorted(m[x] for x in cv.g(a, b)) == sorted(ck.g(m[a], m[b]))
            if cv.parallel(a, b):
                assert len(cv.basis(a, b)) == len(ck.basis(m[a], m[b]))
    for k in (1, 2, 3, 4):
        r1, r2 = radical_power(cv, k), radical_power(ck, k)
        assert {(m[F], m[G]): len(v) for (F, G), v in r1.items()} == {k_: len(v) for k_, v in r2.items()}
    g1, g2 = gabriel_quiver(cv), gabriel_quiver(ck)
    assert Counter((m[s], m[t]) for s, t in g1.quiver.two_edges.values()) == Counter(g2.quiver.two_edges.values())
    assert g1.ideal.nilpotency_degree == g2.ideal.nilpotency_degree == 4
