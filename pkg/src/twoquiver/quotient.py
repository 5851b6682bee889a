"""Admissible ideals and quotient 1½-categories ``K Q / J``.

For every ordered pair of parallel 1-edges the table keeps all 2-paths shorter
than the nilpotency degree ``n`` and an echelon basis of the ideal inside their
span.  Paths of length ``>= n`` are zero.  Normal forms are what is left after
eliminating pivots, and pivots are the length-lexicographically largest paths,
so normal forms prefer short paths.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlin import Subspace, algebra_radical
from .pathcat import Cell, PathVector, _vcomp, all_paths, path_key
from .quiver2 import LicitPresentation, OneCell, QuiverError, TwoQuiver
from .report import Report

__all__ = [
    "AdmissibilityError",
    "AdmissibleIdeal",
    "QuotientTable",
    "build_quotient",
    "check_indecomposable",
    "check_radical_law",
    "hom_basis",
    "reduce",
]


class AdmissibilityError(QuiverError):
    """The relations do not define an admissible ideal."""


@dataclass(frozen=True)
class AdmissibleIdeal:
    generators: tuple
    nilpotency_degree: int

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.nilpotency_degree < 2:
            raise AdmissibilityError("nilpotency degree must be at least 2")
        for g in self.generators:
            low = [p for p in g.terms if len(p) < 2]
            if low:
                raise AdmissibilityError(
                    f"relation {g.src}->{g.tgt} has a term of length {len(low[0])} "
                    f"({'∘'.join(low[0]) or 'stationary'}); relations must live in degree >= 2")


class QuotientTable:
    def __init__(self, quiver: TwoQuiver, presentation: LicitPresentation, ideal: AdmissibleIdeal):
        self.quiver = quiver
        self.presentation = presentation
        self.ideal = ideal
        self.n = ideal.nilpotency_degree
        self.paths: dict[tuple, list] = all_paths(quiver, self.n - 1)
        self.spaces: dict[tuple, Subspace] = {k: Subspace(order=path_key) for k in self.paths}
        self.normal: dict[tuple, list] = {}
        self._mul_cache: dict = {}

    def _truncate(self, terms: Mapping) -> dict:
        return {p: c for p, c in terms.items() if len(p) < self.n and c}

    def reduce_vec(self, F: str, G: str, terms: Mapping) -> dict:
        """Normal form of a combination of paths ``F -> G``."""
        if (F, G) not in self.spaces:
            raise QuiverError(f"no 2-cells between non-parallel 1-edges {F}, {G}")
        return self.spaces[(F, G)].reduce(self._truncate(terms))

    def mul(self, a: tuple, b: tuple, F: str, G: str, H: str) -> dict:
        key = (a, b, F, H)
        hit = self._mul_cache.get(key)
        if hit is None:
            if len(a) + len(b) >= self.n:
                hit = {}
            else:
                hit = self.reduce_vec(F, H, {a + b: Fraction(1)})
            self._mul_cache[key] = hit
        return hit

    def basis(self, F: str, G: str) -> list:
        return self.normal[(F, G)]

    def dim(self, F: str, G: str) -> int:
        return len(self.normal[(F, G)])

    def ideal_rows(self, F: str, G: str) -> list[dict]:
        return self.spaces[(F, G)].rows()

    def is_zero(self, v: PathVector) -> bool:
        return not self.reduce_vec(v.src, v.tgt, v.terms)


def build_quotient(q: TwoQuiver, p: LicitPresentation, j: AdmissibleIdeal) -> QuotientTable:
    """Close the relations under single-edge pre- and post-composition."""
    if not p.certified:
        raise QuiverError("presentation has not been certified licit")
    if p.quiver is not q:
        if p.quiver != q:
            raise QuiverError("presentation belongs to a different quiver")
    t = QuotientTable(q, p, j)
    queue: list[tuple] = []

    def push(F, G, terms):
        terms = t._truncate(terms)
        if not terms:
            return
        sp = t.spaces[(F, G)]
        w = sp.reduce(terms)
        if w and sp.add(w):
            queue.append((F, G, w))

    for g in j.generators:
        g.validate(q)
        push(g.src, g.tgt, g.terms)
    while queue:
        F, G, v = queue.pop()
        for a in q.out_two_edges(G):
            push(F, q.two_edges[a][1], {(a,) + path: c for path, c in v.items()})
        for b in q.in_two_edges(F):
            push(q.two_edges[b][0], G, {path + (b,): c for path, c in v.items()})
    for (F, G), sp in t.spaces.items():
        for row in sp.rows():
            low = [path for path in row if len(path) < 2]
            if low:
                raise AdmissibilityError(
                    f"relations imply a consequence of degree {len(low[0])} on {F}->{G}")
    for key, paths in t.paths.items():
        piv = set(t.spaces[key].pivots)
        t.normal[key] = [path for path in paths if path not in piv]
    _verify_closure(t)
    return t


def _verify_closure(t: QuotientTable) -> None:
    q = t.quiver
    for (F, G), sp in t.spaces.items():
        for row in sp.rows():
            for a in q.out_two_edges(G):
                H = q.two_edges[a][1]
                if t.reduce_vec(F, H, {(a,) + path: c for path, c in row.items()}):
                    raise AdmissibilityError(f"ideal on {F}->{G} not closed under {a}")
            for b in q.in_two_edges(F):
                E = q.two_edges[b][0]
                if t.reduce_vec(E, G, {path + (b,): c for path, c in row.items()}):
                    raise AdmissibilityError(f"ideal on {F}->{G} not closed under {b}")


def reduce(t: QuotientTable, c: Cell) -> Cell:
    """Entrywise normal form of a 2-cell of the path category."""
    rows = []
    for j, G in enumerate(c.tgt.components):
        rows.append(tuple(t.reduce_vec(F, G, c.entries[j][i])
                          for i, F in enumerate(c.src.components)))
    return Cell(c.src, c.tgt, tuple(rows))


def vertical_compose_reduced(t: QuotientTable, a: Cell, b: Cell) -> Cell:
    return _vcomp(a, b, t.mul)


def hom_basis(t: QuotientTable, f: OneCell, g: OneCell) -> list[Cell]:
    if (f.src, f.tgt) != (g.src, g.tgt):
        raise QuiverError("hom between non-parallel 1-cells")
    out = []
    for j, G in enumerate(g.components):
        for i, F in enumerate(f.components):
            for path in t.normal[(F, G)]:
                out.append(Cell.single(f, g, j, i, {path: Fraction(1)}))
    return out


def _positive_span(t: QuotientTable, F: str, G: str) -> list[tuple]:
    return [p for p in t.normal[(F, G)] if p]


def check_radical_law(t: QuotientTable) -> Report:
    """The image of the edge ideal is nilpotent with discrete quotient and equals
    the trace-form radical of every hom-algebra."""
    from .twocat import hom_algebra

    rep = Report("radical law")
    q = t.quiver
    # nilpotency: iterated products of positive-length classes die by step n
    power = {k: [{p: Fraction(1)} for p in _positive_span(t, *k)] for k in t.normal}
    steps = 1
    while any(power.values()) and steps <= t.n + 1:
        nxt = {}
        for (F, G) in t.normal:
            sp = Subspace(order=path_key)
            for E in q.one_edges:
                if (F, E) not in t.normal or (E, G) not in t.normal:
                    continue
                for u in power[(F, E)]:
                    for p in _positive_span(t, E, G):
                        prod: dict = {}
                        for a, c in u.items():
                            for lab, d in t.mul(p, a, F, E, G).items():
                                prod[lab] = prod.get(lab, Fraction(0)) + c * d
                        sp.add({k: v for k, v in prod.items() if v})
            nxt[(F, G)] = sp.rows()
        power = nxt
        steps += 1
    nil_ok = not any(power.values())
    rep.add("edge ideal is nilpotent", nil_ok, steps, note=f"index {steps}" if nil_ok else "")
    # discreteness: one stationary class per edge, none between distinct edges
    bad = [k for k, basis in t.normal.items() if (k[0] == k[1]) != (() in basis)]
    rep.add("quotient by the edge ideal is discrete", not bad, len(t.normal), bad or None)
    # agreement with the trace-form radical
    count, mismatch = 0, None
    for X in q.vertices:
        for Y in q.vertices:
            if not any(st == (X, Y) for st in q.one_edges.values()):
                continue
            cat = _QuotientView(t)
            alg, index = hom_algebra(cat, X, Y)
            rad = algebra_radical(alg, require_discrete=True)
            positive = [n for n, (_, _, lab) in enumerate(index) if lab]
            count += 1
            # the radical is spanned by basis vectors of positive length exactly
            want = Subspace()
            for n in positive:
                want.add({n: Fraction(1)})
            same = len(rad) == len(positive) and all(want.contains({k: v for k, v in enumerate(r) if v})
                                                     for r in rad)
            if not same and mismatch is None:
                mismatch = {"vertices": [X, Y], "radical_dim": len(rad), "edge_ideal_dim": len(positive)}
    rep.add("trace-form radical equals the edge ideal", mismatch is None, count, mismatch)
    return rep.finish()


def check_indecomposable(t: QuotientTable) -> Report:
    """No two distinct 1-edges are isomorphic and every End(F) is local with
    one-dimensional top."""
    rep = Report("indecomposability")
    count, bad = 0, None
    for (F, G) in t.normal:
        if F == G:
            continue
        for u in t.normal[(F, G)]:
            for v in t.normal[(G, F)]:
                count += 1
                if () in t.mul(v, u, F, G, F) and bad is None:
                    bad = {"edges": [F, G], "u": list(u), "v": list(v)}
    rep.add("distinct 1-edges are not isomorphic", bad is None, count, bad)
    count, bad = 0, None
    for F in sorted(t.quiver.one_edges):
        from .twocat import hom_algebra  # local to avoid an import cycle

        count += 1
        alg, index = hom_algebra(_QuotientView(t, only=F), *t.quiver.one_edges[F])
        rad = algebra_radical(alg)
        if alg.dim - len(rad) != 1 and bad is None:
            bad = {"edge": F, "top_dim": alg.dim - len(rad)}
    rep.add("End(F) modulo its radical is one-dimensional", bad is None, count, bad)
    return rep.finish()


class _QuotientView:
    """Just enough of the 2-category interface for :func:`hom_algebra`."""

    def __init__(self, t: QuotientTable, only: str | None = None):
        self.t = t
        edges = t.quiver.one_edges
        self.one_edges = {only: edges[only]} if only else dict(edges)

    def basis(self, F, G):
        return self.t.normal[(F, G)]

    def unit(self, F):
        return ()

    def mul(self, a, b, F, G, H):
        return self.t.mul(a, b, F, G, H)
