import pytest

from twoquiver import build_two_category, check_licit, verify_drop, verify_two_category
from twoquiver.drop import DropError, DropTable
from twoquiver.pathcat import Cell
from twoquiver.quotient import AdmissibleIdeal, build_quotient


def test_m_drops_certified(m_cat):
    r = verify_drop(m_cat)
    assert r.ok, r.to_text()
    assert r.get("relations drop to zero").count > 0


@pytest.mark.parametrize("index", range(6))
def test_dropping_a_relation_breaks_the_drop_axioms(m_data, index):
    q, p, j, d = m_data
    gens = j.generators[:index] + j.generators[index + 1:]
    cat = build_two_category(q, p, AdmissibleIdeal(gens, j.nilpotency_degree), d, "mutant")
    r = verify_drop(cat)
    assert not r.ok
    assert not r.get("relations drop to zero").ok


def test_last_relation_is_independent_but_harmless(m_data):
    """Without γ∘β∘η the quotient is larger (End(I) gains a basis element) and still a 2-category."""
    q, p, j, d = m_data
    cat = build_two_category(q, p, AdmissibleIdeal(j.generators[:6], j.nilpotency_degree), d, "larger")
    assert cat.table.dim("I", "I") == 2
    assert verify_drop(cat).ok
    assert verify_two_category(cat).ok


def test_missing_drop_entry_reported(m_data):
    q, p, j, d = m_data
    partial = DropTable(dict(d.lower), {k: v for k, v in d.upper.items() if k != ("P", "alpha")})
    cat = build_two_category(q, p, j, partial, "partial")
    r = verify_drop(cat)
    assert not r.get("table complete").ok


def test_wrong_drop_boundary_rejected(m_data):
    q, p, j, d = m_data
    bad = DropTable(dict(d.lower), dict(d.upper))
    c = bad.lower[("P", "gamma")]
    bad.lower[("P", "gamma")] = Cell(c.tgt, c.src, tuple(zip(*c.entries)))
    with pytest.raises(DropError):
        build_two_category(q, p, j, bad, "bad")


def test_sign_flipped_drop_detected(m_data):
    q, p, j, d = m_data
    bad = DropTable(dict(d.lower), dict(d.upper))
    bad.lower[("Q", "gamma")] = d.lower[("Q", "gamma")].scaled(-1)
    cat = build_two_category(q, p, j, bad, "flipped")
    r = verify_drop(cat)
    r2 = verify_two_category(cat)
    assert not (r.ok and r2.ok)
