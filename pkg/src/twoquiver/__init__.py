"""Finitary 2-categories from bound 2-quivers, with exact verification."""
from .drop import DropTable, QuiverTwoCategory, build_two_category, verify_drop
from .gabriel import TwoCatPresentation, gabriel_quiver, round_trip
from .pathcat import Cell, PathVector
from .quiver2 import LicitPresentation, OneCell, TwoQuiver, check_licit, compose_one_cells, two_level_acyclic
from .quotient import AdmissibleIdeal, build_quotient, check_indecomposable, check_radical_law
from .report import Report
from .structure import cells, check_adjunction, check_involution, fiat_report
from .twocat import verify_two_category

__all__ = [
    "AdmissibleIdeal",
    "Cell",
    "DropTable",
    "LicitPresentation",
    "OneCell",
    "PathVector",
    "QuiverTwoCategory",
    "Report",
    "TwoCatPresentation",
    "TwoQuiver",
    "build_quotient",
    "build_two_category",
    "cells",
    "check_adjunction",
    "check_indecomposable",
    "check_involution",
    "check_licit",
    "check_radical_law",
    "compose_one_cells",
    "fiat_report",
    "gabriel_quiver",
    "round_trip",
    "two_level_acyclic",
    "verify_drop",
    "verify_two_category",
]
