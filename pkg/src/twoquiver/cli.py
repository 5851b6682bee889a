"""Command-line front end.

Exit status is 0 when every check is certified, 1 when a check fails and 2 for
unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .drop import build_two_category, verify_drop
from .exactlin import format_fraction
from .fileformat import (Bundle, PresentationFormatError, bundle_to_doc, dumps, loads, parse_document,
                         two_category_to_doc)
from .gabriel import TwoCatPresentation, gabriel_quiver, round_trip
from .pathcat import enumerate_paths
from .quiver2 import QuiverError, check_licit, two_level_acyclic
from .quotient import AdmissibleIdeal, check_indecomposable, check_radical_law
from .report import Report
from .structure import Adjunction, WeakInvolution, cells, fiat_report
from .twocat import verify_two_category

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _read(path: str | None) -> str:
    if path is None:
        raise InputError("--input is required")
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str | None):
    try:
        return parse_document(_read(path))
    except PresentationFormatError as e:
        raise InputError(str(e)) from None


def _write(path: str | None, doc: dict) -> None:
    if path is None:
        return
    Path(path).write_text(dumps(doc), encoding="utf-8")


def _licit(obj, rep: Report) -> bool:
    p = obj.presentation if isinstance(obj, Bundle) else obj.licit_candidate()
    try:
        r = check_licit(p)
    except QuiverError as e:
        witness = {"kind": getattr(e, "kind", "form"), "pair": list(getattr(e, "pair", []) or [])}
        rep.add("licit", False, 0, witness, note=str(e))
        return False
    rep.add("licit", r.ok, r.triples_checked, r.as_dict()["failures"][:3] or None)
    return r.ok


def _category(b: Bundle, rep: Report, max_degree: int | None):
    """Quotient and 2-category for a bundle, or ``None`` after recording why not."""
    acyclic, cycle = two_level_acyclic(b.quiver)
    ideal = b.ideal
    if ideal is None:
        if not acyclic:
            rep.add("2-level acyclic", False, len(b.quiver.two_edges), {"cycle": cycle},
                    note="closed cycle of 2-edges without relations: not finitary")
            if max_degree is not None:
                growth = {}
                for n in range(max_degree + 1):
                    growth[n] = sum(1 for K in b.quiver.one_edges for L in b.quiver.one_edges
                                    for pth in enumerate_paths(b.quiver, K, L, n) if len(pth) == n)
                rep.data["2-paths by length"] = growth
            return None
        longest = max((len(pth) for K in b.quiver.one_edges for L in b.quiver.one_edges
                       for pth in enumerate_paths(b.quiver, K, L, len(b.quiver.two_edges))), default=0)
        ideal = AdmissibleIdeal((), max(longest + 1, 2))
        rep.add("2-level acyclic", True, len(b.quiver.two_edges))
    try:
        return build_two_category(b.quiver, b.presentation, ideal, b.drops, b.name)
    except QuiverError as e:
        rep.add("admissible ideal", False, 0, note=str(e))
        return None


def _finish(rep: Report, args) -> int:
    rep.finish()
    print(rep.to_json() if args.report == "json" else rep.to_text())
    return EXIT_OK if rep.ok else EXIT_FAILED


def _as_presentation(obj) -> TwoCatPresentation:
    if not isinstance(obj, TwoCatPresentation):
        raise InputError("expected a two-category document")
    return obj


# give TwoCatPresentation documents the same licit entry point as bundles
def _licit_candidate(self):
    from .quiver2 import LicitPresentation, TwoQuiver

    q = TwoQuiver(self.vertices, self.one_edges, self.identities, {})
    return LicitPresentation(q, self.rewrites, fill_units=False)


TwoCatPresentation.licit_candidate = _licit_candidate


# ---------------------------------------------------------------------------
# commands


def cmd_check_licit(args) -> int:
    obj = _load(args.input)
    rep = Report(f"check-licit: {getattr(obj, 'name', 'presentation')}")
    _licit(obj, rep)
    return _finish(rep, args)


def cmd_build(args) -> int:
    obj = _load(args.input)
    if not isinstance(obj, Bundle):
        raise InputError("build expects a quiver document")
    rep = Report(f"build: {obj.name}")
    if not _licit(obj, rep):
        return _finish(rep, args)
    cat = _category(obj, rep, args.max_degree)
    if cat is None:
        return _finish(rep, args)
    t = cat.table
    rep.add("admissible ideal", True, len(t.ideal.generators),
            note=f"nilpotency degree {t.n}")
    rep.extend(check_radical_law(t), "radical: ")
    rep.extend(check_indecomposable(t), "indecomposable: ")
    rep.extend(verify_drop(cat), "drop: ")
    rep.extend(verify_two_category(cat), "2-category: ")
    rep.data["indecomposable 1-cells"] = len(cat.one_edges)
    if rep.ok:
        _write(args.output, two_category_to_doc(cat))
    return _finish(rep, args)


def cmd_gabriel(args) -> int:
    obj = _load(args.input)
    name = getattr(obj, "name", "presentation")
    rep = Report(f"gabriel: {name}")
    if isinstance(obj, Bundle):
        if not _licit(obj, rep):
            return _finish(rep, args)
        if obj.ideal is None:
            _category(obj, rep, args.max_degree)
            if not rep.ok:
                return _finish(rep, args)
        rt = round_trip(obj.quiver, obj.presentation, obj.ideal, obj.drops, name)
        rep.extend(rt)
        rep.data.update(rt.data)
        cat = build_two_category(obj.quiver, obj.presentation, obj.ideal, obj.drops, name)
    else:
        cat = _as_presentation(obj)
        if not _licit(obj, rep):
            return _finish(rep, args)
    res = gabriel_quiver(cat)
    rep.data["two_edges"] = len(res.quiver.two_edges)
    rep.data["nilpotency_degree"] = res.ideal.nilpotency_degree
    rep.data["relations"] = [{ "∘".join(k): v for k, v in g.terms.items()} for g in res.ideal.generators]
    if not isinstance(obj, Bundle):
        rebuilt = res.build(name)
        rep.extend(verify_drop(rebuilt), "extracted: ")
    _write(args.output, bundle_to_doc(Bundle(res.quiver, res.presentation, res.ideal, res.drops, name)))
    return _finish(rep, args)


def cmd_cells(args) -> int:
    obj = _load(args.input)
    rep = Report(f"cells: {getattr(obj, 'name', 'presentation')}")
    if not _licit(obj, rep):
        return _finish(rep, args)
    part = cells(obj.presentation if isinstance(obj, Bundle) else obj)
    rep.data["left"] = part.left
    rep.data["right"] = part.right
    rep.data["two_sided"] = part.two_sided
    return _finish(rep, args)


def cmd_fiat(args) -> int:
    obj = _load(args.input)
    if not isinstance(obj, Bundle):
        raise InputError("fiat expects a quiver document with involution and adjunctions")
    rep = Report(f"fiat: {obj.name}")
    if obj.involution is None:
        raise InputError("the document has no involution section")
    if not _licit(obj, rep):
        return _finish(rep, args)
    cat = _category(obj, rep, args.max_degree)
    if cat is None:
        return _finish(rep, args)
    inv = obj.involution
    star = WeakInvolution(inv["vertices"], inv["one_edges"], inv["two_edges"])
    adjs = [Adjunction(a["left"], a["right"], a["unit"], a["counit"]) for a in obj.adjunctions]
    fr = fiat_report(cat, star, adjs)
    rep.extend(fr)
    rep.data.update(fr.data)
    return _finish(rep, args)


def _algebra(args):
    from .constructions.projective import AlgebraPresentation, a2_algebra, cyclic_kronecker_algebra

    if args.input is None:
        named = {"a2": a2_algebra, "kronecker": cyclic_kronecker_algebra}
        if args.param not in named:
            raise InputError("give --input ALGEBRA.json or one of: a2, kronecker")
        return named[args.param]()
    try:
        doc = loads(_read(args.input))
        arrows = {a["id"]: (a["src"], a["tgt"]) for a in doc["arrows"]}
        rels = [{tuple(t["path"]): Fraction(t["coefficient"]) for t in r["terms"]}
                for r in doc.get("relations", [])]
        return AlgebraPresentation(doc["vertices"], arrows, rels, doc.get("nilpotency_degree"))
    except PresentationFormatError as e:
        raise InputError(str(e)) from None
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed algebra document: {e}") from None


def _monoid_doc(m) -> dict:
    names = m.names
    return {
        "kind": "ordered-monoid",
        "elements": [names[x] for x in m.elements],
        "unit": names[m.unit],
        "table": [{"left": names[x], "right": names[y], "product": names[m.mul(x, y)]}
                  for x in m.elements for y in m.elements],
        "order": sorted([names[x], names[y]] for x, y in m.leq_pairs if x != y),
    }


def _monoid_from_doc(doc: dict):
    from .constructions.monoid import OrderedMonoid

    try:
        els = list(doc["elements"])
        table = {(r["left"], r["right"]): r["product"] for r in doc["table"]}
        order = {tuple(p) for p in doc.get("order", [])}
        return OrderedMonoid.build(els, lambda x, y: table[(x, y)], doc["unit"],
                                   lambda x, y: x == y or (x, y) in order)
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed monoid document: {e}") from None


def cmd_construct(args) -> int:
    from .constructions.monoid import catalan_monoid, monoid_two_category
    from .constructions.projective import projective_semicategory, projective_two_category

    rep = Report(f"construct {args.kind}")
    if args.kind == "catalan":
        try:
            n = int(args.param)
        except (TypeError, ValueError):
            raise InputError("catalan needs an integer size") from None
        if n < 1:
            raise InputError("catalan needs n >= 1")
        m = catalan_monoid(n)
        rep.add("ordered monoid", True, len(m.elements))
        rep.data["elements"] = len(m.elements)
        doc = _monoid_doc(m)
        if args.output is None and args.report != "json":
            print(dumps(doc), end="")
        _write(args.output, doc)
    elif args.kind == "monoid":
        if args.input is not None:
            m = _monoid_from_doc(loads(_read(args.input)))
        elif args.param is not None:
            m = catalan_monoid(int(args.param))
        else:
            raise InputError("monoid needs --input MONOID.json or a Catalan size")
        q, p, j, d = monoid_two_category(m)
        b = Bundle(q, p, j, d, f"monoid ({len(m.elements)} elements)")
        check_licit(p)
        cat = build_two_category(q, p, j, d, b.name)
        rep.extend(verify_drop(cat), "drop: ")
        rep.extend(verify_two_category(cat), "2-category: ")
        _write(args.output, bundle_to_doc(b))
    elif args.kind == "projective":
        q, p, j, d = projective_semicategory(_algebra(args))
        b = Bundle(q, p, j, d, "S_A")
        check_licit(p)
        cat = build_two_category(q, p, j, d, "S_A")
        rep.extend(verify_drop(cat), "drop: ")
        rep.extend(verify_two_category(cat), "2-category: ")
        from .constructions.projective import format_relation
        rep.data["relations"] = [format_relation(g.terms) for g in j.generators]
        _write(args.output, bundle_to_doc(b))
    else:
        cat = projective_two_category(_algebra(args), certify=False)
        rep.extend(verify_two_category(cat), "2-category: ")
        _write(args.output, two_category_to_doc(cat))
    return _finish(rep, args)


def cmd_fixtures(args) -> int:
    from .constructions.fixtures import FIXTURES, fixture_text

    if args.action == "list":
        for name in FIXTURES:
            print(name)
        return EXIT_OK
    if args.name not in FIXTURES:
        raise InputError(f"unknown fixture {args.name!r}; choose from {', '.join(FIXTURES)}")
    text = fixture_text(args.name)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="presentation file (UTF-8 JSON)")
    common.add_argument("--output", help="where to write the produced document")
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--max-degree", type=int, default=None,
                        help="path-length bound for queries on non-finitary input")
    ap = argparse.ArgumentParser(prog="twoquiver", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("check-licit", parents=[common]).set_defaults(func=cmd_check_licit)
    sub.add_parser("build", parents=[common]).set_defaults(func=cmd_build)
    sub.add_parser("gabriel", parents=[common]).set_defaults(func=cmd_gabriel)
    sub.add_parser("cells", parents=[common]).set_defaults(func=cmd_cells)
    sub.add_parser("fiat", parents=[common]).set_defaults(func=cmd_fiat)
    c = sub.add_parser("construct", parents=[common])
    c.add_argument("kind", choices=("monoid", "catalan", "projective", "projective-id"))
    c.add_argument("param", nargs="?", help="Catalan size, or a2 / kronecker for the projective kinds")
    c.set_defaults(func=cmd_construct)
    f = sub.add_parser("fixtures", parents=[common])
    f.add_argument("action", choices=("list", "dump"))
    f.add_argument("name", nargs="?")
    f.set_defaults(func=cmd_fixtures)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
