"""Named fixtures shipped as presentation files under ``data/``.

``fixture(name)`` loads a file through the presentation format.  The files are
produced by :func:`generate` from the transcriptions and builders;
:func:`write_fixtures` (or ``scripts/regenerate_fixtures.py``) rewrites them.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..fileformat import Bundle, bundle_to_doc, dumps, parse_document, two_category_to_doc
from ..gabriel import gabriel_quiver
from ..quiver2 import LicitPresentation, TwoQuiver
from .projective import a2_algebra, projective_semicategory, projective_two_category
from .transcribed import cv_presentation, m_adjunction_cells, m_bundle, m_involution

__all__ = ["FIXTURES", "ca_lifts", "fixture", "fixture_text", "generate", "write_fixtures", "xquiver_bundle"]

FIXTURES = ("CV", "M", "SA_A2", "CA_A2", "XQUIVER")


def xquiver_bundle() -> Bundle:
    """One vertex, ``F^2 = I_X ⊕ F`` and a 2-cycle ``α: I_X -> F``, ``β: F -> I_X``."""
    q = TwoQuiver(("X",), {"I_X": ("X", "X"), "F": ("X", "X")}, {"X": "I_X"},
                  {"α": ("I_X", "F"), "β": ("F", "I_X")})
    p = LicitPresentation(q, {("F", "F"): ("I_X", "F")})
    from ..drop import DropTable

    return Bundle(q, p, None, DropTable(), "XQUIVER")


def ca_lifts(cat) -> dict:
    """2-edges of the identity-including category over ``e --x--> f``."""
    return {
        "γ₁": ("F_fe", "F_ee", {"F_fe→F_ee:x⊗e": 1}),
        "γ₂": ("F_fe", "F_ff", {"F_fe→F_ff:f⊗x": 1}),
        "β₁": ("F_ee", "I", {"F_ee→I:e": 1}),
        "β₂": ("F_ff", "I", {"F_ff→I:f": 1}),
        "α": ("I", "F_ef", {"I→F_ef:e⊗x+x⊗f": 1}),
    }


def generate() -> dict[str, dict]:
    """Fresh documents for every fixture."""
    docs = {}
    docs["CV"] = two_category_to_doc(cv_presentation("CV"))
    q, p, j, d = m_bundle()
    u, c = m_adjunction_cells()
    adjs = [{"left": "Q", "right": "P", "unit": u, "counit": c},
            {"left": "P", "right": "Q", "unit": u, "counit": c}]
    docs["M"] = bundle_to_doc(Bundle(q, p, j, d, "M", m_involution(), adjs))
    q, p, j, d = projective_semicategory(a2_algebra(), "SA_A2")
    docs["SA_A2"] = bundle_to_doc(Bundle(q, p, j, d, "SA_A2"))
    cat = projective_two_category(a2_algebra(), "CA_A2")
    res = gabriel_quiver(cat, ca_lifts(cat))
    docs["CA_A2"] = bundle_to_doc(Bundle(res.quiver, res.presentation, res.ideal, res.drops, "CA_A2"))
    docs["XQUIVER"] = bundle_to_doc(xquiver_bundle())
    return docs


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files(__package__).joinpath("data", f"{name}.json").read_text(encoding="utf-8")


def fixture(name: str):
    """A :class:`Bundle` for quiver fixtures, a presentation for ``CV``."""
    return parse_document(fixture_text(name))


def write_fixtures(out: Path | None = None) -> list[Path]:
    """Regenerate the data files; returns the paths written."""
    out = out or Path(__file__).with_name("data")
    out.mkdir(exist_ok=True)
    written = []
    for name, doc in generate().items():
        path = out / f"{name}.json"
        path.write_text(dumps(doc), encoding="utf-8")
        written.append(path)
    return written
