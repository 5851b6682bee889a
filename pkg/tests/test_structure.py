from fractions import Fraction

import pytest

from twoquiver import cells, check_adjunction, check_involution, fiat_report
from twoquiver.constructions.transcribed import m_adjunction_cells, m_involution
from twoquiver.structure import Adjunction, WeakInvolution, check_finitary


def star():
    d = m_involution()
    return WeakInvolution(d["vertices"], d["one_edges"], d["two_edges"])


def oracle_left_cells(cat):
    """F <=_L G iff G is a summand of H F for some H (or G = F); classes of mutual reachability."""
    edges = sorted(cat.one_edges)
    reach = {F: {F} for F in edges}
    for F in edges:
        frontier = [F]
        while frontier:
            X = frontier.pop()
            for H in edges:
                if cat.one_edges[H][0] == cat.one_edges[X][1]:
                    for G in cat.g(H, X):
                        if G not in reach[F]:
                            reach[F].add(G)
                            frontier.append(G)
    classes = {frozenset(G for G in edges if G in reach[F] and F in reach[G]) for F in edges}
    return sorted(sorted(c) for c in classes)


def test_m_cells(m_cat):
    part = cells(m_cat)
    assert part.left == part.right == part.two_sided == [["I"], ["P", "Q"]]
    assert part.left == oracle_left_cells(m_cat)


def test_cv_cells_match_oracle(cv):
    part = cells(cv)
    assert part.left == oracle_left_cells(cv)
    assert part.cell_of("P1") == ["P1", "Q1"]
    assert part.two_sided == [["P1", "P2", "Q1", "Q2"], ["V"]]


def test_m_involution_certified(m_cat):
    r = check_involution(m_cat, star())
    assert r.ok, r.to_text()
    assert r.data["fixed_one_cells"] == ["I"]


def test_mutated_involution_fails(m_cat):
    s = star()
    two = dict(s.two_cells)
    two["beta"] = {("beta",): Fraction(1)}
    r = check_involution(m_cat, WeakInvolution(s.vertices, s.one_edges, two))
    assert not r.ok
    assert not r.get("order two on 2-cells").ok


@pytest.mark.parametrize("F,G", [("Q", "P"), ("P", "Q")])
def test_m_adjunctions(m_cat, F, G):
    u, c = m_adjunction_cells()
    r = check_adjunction(m_cat, F, G, u, c)
    assert r.ok, r.to_text()


def test_sign_flipped_counit_leaves_a_residual(m_cat):
    u, c = m_adjunction_cells()
    bad = c.scaled(-1)
    r = check_adjunction(m_cat, "Q", "P", u, bad)
    assert not r.ok
    residual = r.failures()[0].witness["residual"]
    assert not residual.is_zero


def test_fiat_report_on_m(m_cat):
    u, c = m_adjunction_cells()
    r = fiat_report(m_cat, star(), [Adjunction("Q", "P", u, c), Adjunction("P", "Q", u, c)])
    assert r.ok, r.to_text()
    assert r.data["observations"] == ["cell {P, Q} has no ⋆-self-dual member"]


def test_fiat_report_needs_both_adjunctions(m_cat):
    u, c = m_adjunction_cells()
    r = fiat_report(m_cat, star(), [Adjunction("Q", "P", u, c)])
    assert not r.get("every F has an adjunction with F*").ok


def test_finitary_checks(m_cat, cv):
    assert check_finitary(m_cat).ok
    assert check_finitary(cv).ok
