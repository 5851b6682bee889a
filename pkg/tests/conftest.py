from __future__ import annotations

import pytest

from twoquiver import build_two_category, check_licit
from twoquiver.constructions import a2_algebra, cv_presentation, projective_semicategory
from twoquiver.constructions.transcribed import m_bundle


def built(q, p, j, d, name):
    check_licit(p)
    return build_two_category(q, p, j, d, name)


@pytest.fixture(scope="session")
def m_data():
    q, p, j, d = m_bundle()
    check_licit(p)
    return q, p, j, d


@pytest.fixture(scope="session")
def m_cat(m_data):
    return built(*m_data, "M")


@pytest.fixture(scope="session")
def sa_cat():
    return built(*projective_semicategory(a2_algebra()), "S_A")


@pytest.fixture(scope="session")
def cv():
    return cv_presentation("CV")
