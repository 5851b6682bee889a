"""UTF-8 JSON presentation files.

Two document kinds share one layout for the 1-level:

* ``"quiver"``: a bound 2-quiver with admissible relations and a drop table;
* ``"two-category"``: a finitary 2-category listed by bases, units, vertical
  products and whiskerings, as produced by the build and gabriel commands.

Scalars are strings ``"n"`` or ``"n/d"``.  2-paths are lists of 2-edge ids in
application order (first applied first).  A 1-level rewrite ``{"lhs": [p, q]}``
is the composite ``p q`` with ``q`` applied first.  :func:`dumps` is canonical,
so ``dumps(parse(dumps(x)))`` reproduces its input byte for byte.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .exactlin import as_fraction, format_fraction
from .pathcat import Cell, PathVector, path_key
from .quiver2 import LicitPresentation, OneCell, QuiverError, TwoQuiver
from .quotient import AdmissibleIdeal
from .drop import DropTable

__all__ = [
    "Bundle",
    "PresentationFormatError",
    "bundle_from_doc",
    "bundle_to_doc",
    "dumps",
    "loads",
    "parse_document",
    "two_category_from_doc",
    "two_category_to_doc",
]


class PresentationFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationFormatError(f"malformed JSON: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise PresentationFormatError("a presentation file must hold a JSON object", 1, 1)
    return doc


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def _need(doc: Mapping, key: str, kind=None):
    if key not in doc:
        raise PresentationFormatError(f"missing section {key!r}")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise PresentationFormatError(f"section {key!r} has the wrong type")
    return val


def _scalar(x) -> Fraction:
    if not isinstance(x, (str, int)) or isinstance(x, bool):
        raise PresentationFormatError(f"scalar {x!r} must be a string 'n' or 'n/d'")
    try:
        return as_fraction(x)
    except (ValueError, ZeroDivisionError):
        raise PresentationFormatError(f"scalar {x!r} is not a rational number") from None


# ---------------------------------------------------------------------------
# 1-level


def _one_level_from(doc: Mapping, two_edges: Mapping) -> TwoQuiver:
    vertices = tuple(_need(doc, "vertices", list))
    edges = {}
    for e in _need(doc, "one_edges", list):
        try:
            edges[e["id"]] = (e["src"], e["tgt"])
        except (KeyError, TypeError):
            raise PresentationFormatError(f"1-edge entry {e!r} needs id, src and tgt") from None
    stationary = dict(doc.get("stationary", {}))
    try:
        return TwoQuiver(vertices, edges, stationary, two_edges)
    except QuiverError as e:
        raise PresentationFormatError(str(e)) from None


def _rewrites_from(doc: Mapping) -> dict:
    out = {}
    for r in _need(doc, "one_rewrites", list):
        try:
            p, q = r["lhs"]
            rhs = r["rhs"]
        except (KeyError, TypeError, ValueError):
            raise PresentationFormatError(f"rewrite entry {r!r} needs lhs [p, q] and rhs") from None
        if not isinstance(rhs, list):
            raise PresentationFormatError(f"rewrite target of {p}{q} must be a list of 1-edges, got {rhs!r}")
        out[(p, q)] = rhs
    return out


def _one_level_to(vertices, one_edges, stationary, rewrites) -> dict:
    return {
        "vertices": list(vertices),
        "one_edges": [{"id": e, "src": s, "tgt": t} for e, (s, t) in sorted(one_edges.items())],
        "stationary": {x: stationary[x] for x in sorted(stationary)},
        "one_rewrites": [{"lhs": [p, q], "rhs": list(rewrites[(p, q)])} for p, q in sorted(rewrites)],
    }


# ---------------------------------------------------------------------------
# quiver documents


@dataclass
class Bundle:
    """Everything needed to build a quiver 2-category."""

    quiver: TwoQuiver
    presentation: LicitPresentation
    ideal: AdmissibleIdeal | None
    drops: DropTable
    name: str = "presentation"
    involution: dict | None = None
    adjunctions: list = field(default_factory=list)


def _terms_from(items, where: str) -> dict:
    if not isinstance(items, list):
        raise PresentationFormatError(f"{where}: terms must be a list")
    out: dict = {}
    for t in items:
        try:
            c, path = _scalar(t["coefficient"]), t["path"]
        except (KeyError, TypeError):
            raise PresentationFormatError(f"{where}: term {t!r} needs coefficient and path") from None
        key = tuple(reversed(path))
        out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def _terms_to(vec: Mapping) -> list:
    return [{"coefficient": format_fraction(vec[p]), "path": list(reversed(p))}
            for p in sorted(vec, key=path_key) if vec[p]]


def _cell_from(lit, X: str, Y: str, where: str, label_terms: bool = False) -> Cell:
    try:
        src, tgt, entries = lit["src"], lit["tgt"], lit["entries"]
    except (KeyError, TypeError):
        raise PresentationFormatError(f"{where}: a 2-cell needs src, tgt and entries") from None
    reader = _label_terms_from if label_terms else _terms_from
    if len(entries) != len(tgt) or any(len(row) != len(src) for row in entries):
        raise PresentationFormatError(f"{where}: entry grid must be {len(tgt)} x {len(src)}")
    grid = tuple(tuple(reader(e, where) for e in row) for row in entries)
    return Cell(OneCell(X, Y, tuple(src)), OneCell(X, Y, tuple(tgt)), grid)


def _cell_to(c: Cell, label_terms: bool = False) -> dict:
    writer = _label_terms_to if label_terms else _terms_to
    return {"src": list(c.src.components), "tgt": list(c.tgt.components),
            "entries": [[writer(e) for e in row] for row in c.entries]}


def parse_document(text: str):
    """Parse a file of either kind."""
    doc = loads(text)
    kind = doc.get("kind", "quiver")
    if kind == "quiver":
        return bundle_from_doc(doc)
    if kind == "two-category":
        return two_category_from_doc(doc)
    raise PresentationFormatError(f"unknown document kind {kind!r}")


def bundle_from_doc(doc: Mapping) -> Bundle:
    two = {}
    for e in doc.get("two_edges", []):
        try:
            two[e["id"]] = (e["src"], e["tgt"])
        except (KeyError, TypeError):
            raise PresentationFormatError(f"2-edge entry {e!r} needs id, src and tgt") from None
    q = _one_level_from(doc, two)
    try:
        p = LicitPresentation(q, _rewrites_from(doc), fill_units=False)
    except QuiverError as e:
        raise PresentationFormatError(str(e)) from None
    n = doc.get("nilpotency_degree")
    ideal = None
    if n is not None:
        gens = []
        for k, g in enumerate(doc.get("admissible_generators", [])):
            where = f"admissible generator {k}"
            try:
                gens.append(PathVector(g["src"], g["tgt"], _terms_from(g["terms"], where)))
            except (KeyError, TypeError):
                raise PresentationFormatError(f"{where} needs src, tgt and terms") from None
        try:
            ideal = AdmissibleIdeal(tuple(gens), int(n))
        except QuiverError as e:
            raise PresentationFormatError(str(e)) from None
    elif doc.get("admissible_generators"):
        raise PresentationFormatError("admissible generators given without a nilpotency degree")
    d = DropTable()
    for side, tab in (("drop_lower", d.lower), ("drop_upper", d.upper)):
        for k, ent in enumerate(doc.get(side, [])):
            where = f"{side} entry {k}"
            try:
                F, a, lit = ent["edge"], ent["two_edge"], ent["cell"]
            except (KeyError, TypeError):
                raise PresentationFormatError(f"{where} needs edge, two_edge and cell") from None
            if F not in q.one_edges or a not in q.two_edges:
                raise PresentationFormatError(f"{where} names an unknown edge")
            K = q.two_edges[a][0]
            X, Y = (q.src(K), q.tgt(F)) if side == "drop_lower" else (q.src(F), q.tgt(K))
            tab[(F, a)] = _cell_from(lit, X, Y, where)
    inv = doc.get("involution")
    if inv is not None:
        inv = {"vertices": dict(inv["vertices"]), "one_edges": dict(inv["one_edges"]),
               "two_edges": {a: _terms_from(t, f"involution of {a}") for a, t in inv["two_edges"].items()}}
    adjs = []
    for k, a in enumerate(doc.get("adjunctions", [])):
        F, G = a["left"], a["right"]
        X, Y = q.one_edges[F]
        adjs.append({"left": F, "right": G,
                     "unit": _cell_from(a["unit"], X, X, f"adjunction {k} unit"),
                     "counit": _cell_from(a["counit"], Y, Y, f"adjunction {k} counit")})
    return Bundle(q, p, ideal, d, doc.get("name", "presentation"), inv, adjs)


def bundle_to_doc(b: Bundle) -> dict:
    q = b.quiver
    doc: dict = {"kind": "quiver", "name": b.name}
    doc.update(_one_level_to(q.vertices, q.one_edges, q.stationary, b.presentation.rewrites))
    doc["two_edges"] = [{"id": a, "src": s, "tgt": t} for a, (s, t) in sorted(q.two_edges.items())]
    if b.ideal is None:
        doc["nilpotency_degree"] = None
        doc["admissible_generators"] = []
    else:
        doc["nilpotency_degree"] = b.ideal.nilpotency_degree
        doc["admissible_generators"] = [{"src": g.src, "tgt": g.tgt, "terms": _terms_to(g.terms)}
                                        for g in b.ideal.generators]
    doc["drop_lower"] = [{"edge": F, "two_edge": a, "cell": _cell_to(c)}
                         for (F, a), c in sorted(b.drops.lower.items())]
    doc["drop_upper"] = [{"edge": F, "two_edge": a, "cell": _cell_to(c)}
                         for (F, a), c in sorted(b.drops.upper.items())]
    if b.involution is not None:
        inv = b.involution
        doc["involution"] = {
            "vertices": {k: inv["vertices"][k] for k in sorted(inv["vertices"])},
            "one_edges": {k: inv["one_edges"][k] for k in sorted(inv["one_edges"])},
            "two_edges": {a: _terms_to(inv["two_edges"][a]) for a in sorted(inv["two_edges"])},
        }
    if b.adjunctions:
        doc["adjunctions"] = [{"left": a["left"], "right": a["right"], "unit": _cell_to(a["unit"]),
                               "counit": _cell_to(a["counit"])} for a in b.adjunctions]
    return doc


# ---------------------------------------------------------------------------
# two-category documents


def _label_terms_from(items, where: str) -> dict:
    if not isinstance(items, list):
        raise PresentationFormatError(f"{where}: terms must be a list")
    out: dict = {}
    for t in items:
        try:
            c, lab = _scalar(t["coefficient"]), t["label"]
        except (KeyError, TypeError):
            raise PresentationFormatError(f"{where}: term {t!r} needs coefficient and label") from None
        out[lab] = out.get(lab, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def _label_terms_to(vec: Mapping) -> list:
    return [{"coefficient": format_fraction(vec[x]), "label": x} for x in sorted(vec) if vec[x]]


def two_category_from_doc(doc: Mapping):
    from .gabriel import TwoCatPresentation

    q = _one_level_from(doc, {})
    rewrites = {k: tuple(v) for k, v in _rewrites_from(doc).items()}
    bases = {}
    for b in _need(doc, "bases", list):
        bases[(b["src"], b["tgt"])] = list(b["labels"])
    units = dict(_need(doc, "units", dict))
    products = {}
    for k, pr in enumerate(doc.get("products", [])):
        products[(pr["left"], pr["right"])] = _label_terms_from(pr["value"], f"product {k}")
    where = {x: st for st, labs in bases.items() for x in labs}
    lower, upper = {}, {}
    for side, tab in (("whisker_lower", lower), ("whisker_upper", upper)):
        for k, ent in enumerate(doc.get(side, [])):
            f, x = ent["edge"], ent["label"]
            if f not in q.one_edges or x not in where:
                raise PresentationFormatError(f"{side} entry {k} names an unknown edge or label")
            K = where[x][0]
            X, Y = (q.src(K), q.tgt(f)) if side == "whisker_lower" else (q.src(f), q.tgt(K))
            tab[(f, x)] = _cell_from(ent["cell"], X, Y, f"{side} entry {k}", label_terms=True)
    try:
        return TwoCatPresentation(q.vertices, q.one_edges, q.stationary, rewrites, bases, units,
                                  products, lower, upper, doc.get("generators"),
                                  name=doc.get("name", "presentation"))
    except QuiverError as e:
        raise PresentationFormatError(str(e)) from None


def two_category_to_doc(cat) -> dict:
    """Export any :class:`TwoCategory` by listing its structure constants.

    Labels are rendered with ``format_label``; identity 2-cells become ``ι_F``.
    """
    name = {}
    for K, L in cat.parallel_pairs():
        for x in cat.basis(K, L):
            name[(K, L, x)] = f"ι_{K}" if K == L and x == cat.unit(K) else cat.format_label(x)

    def vec(v, K, L):
        return {name[(K, L, x)]: c for x, c in v.items()}

    def cell(c: Cell) -> Cell:
        return Cell(c.src, c.tgt, tuple(tuple(vec(e, F, G) for F, e in zip(c.src.components, row))
                                        for G, row in zip(c.tgt.components, c.entries)))

    doc: dict = {"kind": "two-category", "name": getattr(cat, "name", "2-category")}
    doc.update(_one_level_to(cat.vertices, cat.one_edges, cat.identities, cat.rewrites))
    doc["bases"] = [{"src": K, "tgt": L, "labels": [name[(K, L, x)] for x in cat.basis(K, L)]}
                    for K, L in cat.parallel_pairs() if cat.basis(K, L)]
    doc["units"] = {F: f"ι_{F}" for F in sorted(cat.one_edges)}
    products = []
    edges = sorted(cat.one_edges)
    for K, M in cat.parallel_pairs():
        for L in edges:
            if not cat.parallel(M, L):
                continue
            for b in cat.basis(K, M):
                if K == M and b == cat.unit(K):
                    continue
                for a in cat.basis(M, L):
                    if M == L and a == cat.unit(M):
                        continue
                    v = cat.mul(a, b, K, M, L)
                    if v:
                        products.append({"left": name[(M, L, a)], "right": name[(K, M, b)],
                                         "value": _label_terms_to(vec(v, K, L))})
    doc["products"] = sorted(products, key=lambda p: (p["left"], p["right"]))
    low, up = [], []
    for K, L in cat.parallel_pairs():
        for x in cat.basis(K, L):
            if K == L and x == cat.unit(K):
                continue
            for f in edges:
                if cat.is_identity(f):
                    continue
                if cat.one_edges[f][0] == cat.one_edges[K][1]:
                    low.append({"edge": f, "label": name[(K, L, x)],
                                "cell": _cell_to(cell(cat.lower_basis(f, x, K, L)), True)})
                if cat.one_edges[f][1] == cat.one_edges[K][0]:
                    up.append({"edge": f, "label": name[(K, L, x)],
                               "cell": _cell_to(cell(cat.upper_basis(f, x, K, L)), True)})
    doc["whisker_lower"] = sorted(low, key=lambda e: (e["edge"], e["label"]))
    doc["whisker_upper"] = sorted(up, key=lambda e: (e["edge"], e["label"]))
    gens = sorted(name[(K, L, x)] for K, L in cat.parallel_pairs() for x in cat.generators(K, L))
    doc["generators"] = gens
    return doc
