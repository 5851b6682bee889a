"""Vertical drop tables and the quiver 2-category they induce.

A drop table gives, for each 1-edge ``F`` and each 2-edge ``a: K -> L``, the
2-cells ``F_*(a): F∘K -> F∘L`` and ``F^*(a): K∘F -> L∘F``.  They are extended
multiplicatively along 2-paths and additively over direct sums, and horizontal
composition is ``a b = G~^*(a) ∘ F_*(b) = F~_*(b) ∘ G^*(a)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .pathcat import Cell, _vcomp, add_vectors, concat_mul, enumerate_paths
from .quiver2 import LicitPresentation, OneCell, QuiverError, TwoQuiver
from .quotient import AdmissibleIdeal, QuotientTable, build_quotient, reduce
from .report import Report
from .twocat import HorizontalMismatch, TwoCategory, verify_two_category

__all__ = [
    "DropError",
    "DropTable",
    "QuiverTwoCategory",
    "build_two_category",
    "extend_drop",
    "extend_drop_upper",
    "horizontal_compose",
    "verify_drop",
    "verify_two_category",
]


class DropError(QuiverError):
    pass


@dataclass
class DropTable:
    """``lower[(F, a)] = F_*(a)`` and ``upper[(F, a)] = F^*(a)`` on 2-edges ``a``."""

    lower: dict = field(default_factory=dict)
    upper: dict = field(default_factory=dict)

    def boundary_lower(self, p: LicitPresentation, F: str, a: str) -> tuple[OneCell, OneCell]:
        q = p.quiver
        K, L = q.two_edges[a]
        src = OneCell(q.src(K), q.tgt(F), p.g(F, K))
        return src, OneCell(src.src, src.tgt, p.g(F, L))

    def boundary_upper(self, p: LicitPresentation, F: str, a: str) -> tuple[OneCell, OneCell]:
        q = p.quiver
        K, L = q.two_edges[a]
        src = OneCell(q.src(F), q.tgt(K), p.g(K, F))
        return src, OneCell(src.src, src.tgt, p.g(L, F))

    def required(self, p: LicitPresentation) -> list[tuple[str, str, str]]:
        """``(side, F, a)`` for every entry a complete table must provide."""
        q = p.quiver
        out = []
        for a in sorted(q.two_edges):
            K = q.two_edges[a][0]
            for F in sorted(q.one_edges):
                if q.is_stationary(F):
                    continue
                if q.src(F) == q.tgt(K):
                    out.append(("lower", F, a))
                if q.tgt(F) == q.src(K):
                    out.append(("upper", F, a))
        return out


class QuiverTwoCategory(TwoCategory):
    """``K Q / J`` with horizontal composition induced by a drop table."""

    def __init__(self, table: QuotientTable, drops: DropTable, name: str = "quiver 2-category"):
        p = table.presentation
        q = table.quiver
        super().__init__(q.vertices, q.one_edges, q.stationary, p.rewrites)
        self.name = name
        self.table = table
        self.quiver = q
        self.presentation = p
        self.drops = drops
        self._raw_lower: dict = {}
        self._raw_upper: dict = {}
        for (F, a), c in drops.lower.items():
            self._raw_lower[(F, a)] = self._checked(c, *drops.boundary_lower(p, F, a), f"{F}_*({a})")
        for (F, a), c in drops.upper.items():
            self._raw_upper[(F, a)] = self._checked(c, *drops.boundary_upper(p, F, a), f"{F}^*({a})")

    def _checked(self, c: Cell, src: OneCell, tgt: OneCell, what: str) -> Cell:
        if (c.src, c.tgt) != (src, tgt):
            raise DropError(f"{what} should run {src} -> {tgt}, got {c.src} -> {c.tgt}")
        return reduce(self.table, c)

    def basis(self, F, G):
        return self.table.normal[(F, G)]

    def unit(self, F):
        return ()

    def mul(self, a, b, F, G, H):
        return self.table.mul(a, b, F, G, H)

    def generators(self, F, G):
        return [(a,) for a in self.quiver.two_edges_between(F, G)]

    def format_label(self, x) -> str:
        return "∘".join(x) if x else "ι"

    def _edge_drop(self, side: str, f: str, a: str) -> Cell:
        raw = self._raw_lower if side == "lower" else self._raw_upper
        if (f, a) not in raw:
            raise DropError(f"drop table has no entry {f}{'_*' if side == 'lower' else '^*'}({a})")
        return raw[(f, a)]

    def _path_drop(self, side: str, f: str, path: tuple, K: str, L: str) -> Cell:
        basis_fn = self.lower_basis if side == "lower" else self.upper_basis
        q = self.quiver
        acc = None
        for a in path:               # leftmost factor is applied last
            s, t = q.two_edges[a]
            step = basis_fn(f, (a,), s, t)
            acc = step if acc is None else self.vcomp(acc, step)
        return acc

    def _lower_edge(self, f, x, K, L):
        if len(x) == 1:
            return self._edge_drop("lower", f, x[0])
        return self._path_drop("lower", f, x, K, L)

    def _upper_edge(self, f, x, K, L):
        if len(x) == 1:
            return self._edge_drop("upper", f, x[0])
        return self._path_drop("upper", f, x, K, L)

    def path_vector_cell(self, terms: Mapping, K: str, L: str) -> Cell:
        return Cell(self.edge(K), self.edge(L), ((dict(terms),),))

    def raw_drop(self, side: str, f: str, terms: Mapping, K: str, L: str) -> Cell:
        """Drop of an unreduced combination of paths, factor by factor."""
        src = OneCell(self.one_edges[K][0], self.one_edges[f][1], self.g(f, K)) if side == "lower" \
            else OneCell(self.one_edges[f][0], self.one_edges[K][1], self.g(K, f))
        tgt = OneCell(src.src, src.tgt, self.g(f, L) if side == "lower" else self.g(L, f))
        acc = Cell.zero(src, tgt)
        basis_fn = self.lower_basis if side == "lower" else self.upper_basis
        for path, c in terms.items():
            if not path:
                acc = acc + basis_fn(f, (), K, K).scaled(c)
            else:
                acc = acc + self._path_drop(side, f, path, K, L).scaled(c)
        return acc


def build_two_category(q: TwoQuiver, p: LicitPresentation, j: AdmissibleIdeal, d: DropTable,
                       name: str = "quiver 2-category") -> QuiverTwoCategory:
    return QuiverTwoCategory(build_quotient(q, p, j), d, name)


def extend_drop(cat: QuiverTwoCategory, f: OneCell, c: Cell) -> Cell:
    """``f_*(c)`` for an arbitrary 1-cell ``f`` and 2-cell ``c``."""
    return cat.lower(f, reduce(cat.table, c))


def extend_drop_upper(cat: QuiverTwoCategory, f: OneCell, c: Cell) -> Cell:
    """``f^*(c)`` for an arbitrary 1-cell ``f`` and 2-cell ``c``."""
    return cat.upper(f, reduce(cat.table, c))


def horizontal_compose(cat: TwoCategory, a: Cell, b: Cell) -> Cell:
    """``a b`` for ``a: F -> F~`` over ``Y -> X`` and ``b: G -> G~`` over ``Z -> Y``."""
    if isinstance(cat, QuiverTwoCategory):
        a, b = reduce(cat.table, a), reduce(cat.table, b)
    return cat.hcomp(a, b)


def verify_drop(cat: QuiverTwoCategory) -> Report:
    """Completeness, stationary triviality, ideal preservation and the
    remaining drop axioms, each exhaustively over 1-edges and 2-edges."""
    rep = Report(f"drop axioms: {cat.name}")
    q, p, t = cat.quiver, cat.presentation, cat.table
    edges = sorted(q.one_edges)

    missing = []
    for side, F, a in cat.drops.required(p):
        tab = cat.drops.lower if side == "lower" else cat.drops.upper
        if (F, a) not in tab:
            missing.append([side, F, a])
    rep.add("table complete", not missing, len(cat.drops.required(p)), missing[:5] or None)
    if missing:
        return rep.finish()

    count, bad = 0, None
    for (F, a), c in list(cat._raw_lower.items()) + list(cat._raw_upper.items()):
        if not q.is_stationary(F):
            continue
        count += 1
        if c != cat.cell((a,), *q.two_edges[a]) and bad is None:
            bad = {"edge": F, "two_edge": a, "given": c}
    rep.add("stationary edges drop trivially", bad is None, count, bad)

    # relations and long paths must drop to zero
    count, bad = 0, None
    killers = [(g.src, g.tgt, g.terms) for g in t.ideal.generators]
    for (K, L) in t.paths:
        for path in enumerate_paths(q, K, L, t.n):
            if len(path) == t.n:
                killers.append((K, L, {path: Fraction(1)}))
    for K, L, terms in killers:
        for f in edges:
            for side in ("lower", "upper"):
                if side == "lower" and q.src(f) != q.tgt(K):
                    continue
                if side == "upper" and q.tgt(f) != q.src(K):
                    continue
                count += 1
                got = cat.raw_drop(side, f, terms, K, L)
                if not got.is_zero and bad is None:
                    bad = {"side": side, "edge": f,
                           "relation": {"∘".join(k): v for k, v in terms.items()}, "image": got}
    rep.add("relations drop to zero", bad is None, count, bad)

    # the two horizontal formulas agree on generator pairs
    atoms = cat.atom_cells()
    count, bad = 0, None
    for x in atoms:
        for y in atoms:
            if q.tgt(y[1]) != q.src(x[1]):
                continue
            count += 1
            first, second = cat.hcomp_pair(x[3], y[3])
            if first != second and bad is None:
                bad = {"pair": [cat.format_label(x[0]), cat.format_label(y[0])],
                       "via lower first": first, "via upper first": second}
    rep.add("drops commute across horizontal pairs", bad is None, count, bad)
    if bad is not None:
        rep.add("drops compose along 1-cells", False, 0, note="skipped: horizontal composition undefined")
        rep.add("lower and upper drops commute", False, 0, note="skipped: horizontal composition undefined")
        return rep.finish()

    cat.ensure_associator()
    gens = [x for x in atoms if x[0]]
    count, bad = 0, None
    for F in edges:
        for G in edges:
            if q.tgt(G) != q.src(F):
                continue
            FG = cat.compose1(cat.edge(F), cat.edge(G))
            for x, K, L, c in gens:
                if q.tgt(K) == q.src(G):
                    count += 1
                    whole = cat.lower(FG, c)
                    nested = cat.lower(cat.edge(F), cat.lower(cat.edge(G), c))
                    if cat.rebracket(whole, (cat.edge(F), cat.edge(G), cat.edge(K)),
                                     (cat.edge(F), cat.edge(G), cat.edge(L))) != nested and bad is None:
                        bad = {"side": "lower", "edges": [F, G], "two_edge": cat.format_label(x)}
                if q.src(K) == q.tgt(F):
                    count += 1
                    whole = cat.upper(FG, c)
                    nested = cat.rebracket(cat.upper(cat.edge(G), cat.upper(cat.edge(F), c)),
                                           (cat.edge(K), cat.edge(F), cat.edge(G)),
                                           (cat.edge(L), cat.edge(F), cat.edge(G)))
                    if whole != nested and bad is None:
                        bad = {"side": "upper", "edges": [F, G], "two_edge": cat.format_label(x)}
    rep.add("drops compose along 1-cells", bad is None, count, bad)

    count, bad = 0, None
    for x, K, L, c in gens:
        for F in edges:
            if q.src(F) != q.tgt(K):
                continue
            for G in edges:
                if q.tgt(G) != q.src(K):
                    continue
                count += 1
                a = cat.lower(cat.edge(F), cat.upper(cat.edge(G), c))
                b = cat.rebracket(cat.upper(cat.edge(G), cat.lower(cat.edge(F), c)),
                                  (cat.edge(F), cat.edge(K), cat.edge(G)),
                                  (cat.edge(F), cat.edge(L), cat.edge(G)))
                if a != b and bad is None:
                    bad = {"edges": [F, G], "two_edge": cat.format_label(x), "F_*G^*": a, "G^*F_*": b}
    rep.add("lower and upper drops commute", bad is None, count, bad)
    return rep.finish()
