"""Builders for example families and the named fixtures."""
from .fixtures import FIXTURES, fixture, fixture_text
from .monoid import OrderedMonoid, catalan_monoid, monoid_two_category
from .projective import (AlgebraPresentation, a2_algebra, cyclic_kronecker_algebra, format_relation,
                         projective_semicategory, projective_two_category)
from .transcribed import cv_presentation

__all__ = [
    "FIXTURES",
    "AlgebraPresentation",
    "OrderedMonoid",
    "a2_algebra",
    "catalan_monoid",
    "cv_presentation",
    "cyclic_kronecker_algebra",
    "fixture",
    "fixture_text",
    "format_relation",
    "monoid_two_category",
    "projective_semicategory",
    "projective_two_category",
]
