from fractions import Fraction

from twoquiver import verify_two_category
from twoquiver.gabriel import TwoCatPresentation


def clone(cv, products=None, lower=None):
    return TwoCatPresentation(cv.vertices, cv.one_edges, cv.identities, cv.rewrites, cv.bases, cv.units,
                              products if products is not None else cv.products,
                              lower if lower is not None else cv.lower_table, cv.upper_table,
                              cv.generator_labels, name="mutant")


def test_m_axiom_suite(m_cat):
    r = verify_two_category(m_cat)
    assert r.ok, r.to_text()
    assert r.get("interchange law").count > 0


def test_sa_axiom_suite(sa_cat):
    assert verify_two_category(sa_cat).ok


def test_mutated_vertical_product_fails(cv):
    key = next(k for k, v in sorted(cv.products.items()) if v)
    products = dict(cv.products)
    products[key] = {x: 2 * c for x, c in products[key].items()}
    r = verify_two_category(clone(cv, products=products), interchange=False)
    assert not r.ok


def test_mutated_whiskering_fails(cv):
    key = sorted(cv.lower_table)[0]
    lower = dict(cv.lower_table)
    lower[key] = lower[key].scaled(Fraction(2))
    r = verify_two_category(clone(cv, lower=lower), interchange=False)
    assert not r.ok
    assert r.failures()
