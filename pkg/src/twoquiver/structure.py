"""Cells, weak involutions, adjunctions and fiatness reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlin import algebra_radical, rank
from .pathcat import Cell, add_vectors, scale_vector
from .quiver2 import OneCell, QuiverError
from .report import Report
from .twocat import TwoCategory, hom_algebra

__all__ = [
    "Adjunction",
    "CellPartition",
    "InvolutionError",
    "WeakInvolution",
    "cells",
    "check_adjunction",
    "check_finitary",
    "check_involution",
    "fiat_report",
]


class InvolutionError(QuiverError):
    """The supplied involution is not defined everywhere it must be."""


# ---------------------------------------------------------------------------
# cells


def _table(c):
    """``(one_edges, g)`` for a 2-category or a licit presentation."""
    if hasattr(c, "quiver") and not isinstance(c, TwoCategory):
        return c.quiver.one_edges, c.g
    return c.one_edges, c.g


@dataclass
class CellPartition:
    edges: list
    leq_left: dict          # leq_left[(F, G)] is F <=_L G
    leq_right: dict
    leq_two: dict
    left: list = field(default_factory=list)
    right: list = field(default_factory=list)
    two_sided: list = field(default_factory=list)

    def cell_of(self, F: str, kind: str = "left") -> list:
        for c in getattr(self, kind):
            if F in c:
                return c
        raise KeyError(F)


def _closure(edges: list, step: dict) -> dict:
    """Reflexive-transitive closure of ``step[G] = set of F one step above G``."""
    leq = {}
    for G in edges:
        seen = {G}
        todo = [G]
        while todo:
            cur = todo.pop()
            for F in step[cur]:
                if F not in seen:
                    seen.add(F)
                    todo.append(F)
        for F in edges:
            leq[(F, G)] = F in seen
    return leq


def _classes(edges: list, leq: dict) -> list:
    out, done = [], set()
    for F in edges:
        if F in done:
            continue
        cls = [G for G in edges if leq[(F, G)] and leq[(G, F)]]
        done.update(cls)
        out.append(cls)
    return out


def cells(c) -> CellPartition:
    """Left, right and two-sided cells read off the 1-composition table.

    ``F <=_L G`` when ``F`` is a summand of ``H G`` for some 1-cell ``H``,
    identities included; ``<=_R`` uses ``G H`` and ``<=_J`` both sides.
    """
    one_edges, g = _table(c)
    edges = sorted(one_edges)
    left = {G: set() for G in edges}
    right = {G: set() for G in edges}
    for G in edges:
        for H in edges:
            if one_edges[H][0] == one_edges[G][1]:
                left[G].update(g(H, G))
            if one_edges[H][1] == one_edges[G][0]:
                right[G].update(g(G, H))
    both = {G: left[G] | right[G] for G in edges}
    part = CellPartition(edges, _closure(edges, left), _closure(edges, right), _closure(edges, both))
    part.left = _classes(edges, part.leq_left)
    part.right = _classes(edges, part.leq_right)
    part.two_sided = _classes(edges, part.leq_two)
    return part


# ---------------------------------------------------------------------------
# weak involutions


@dataclass
class WeakInvolution:
    """``vertices`` and ``one_edges`` are maps of names; ``two_cells`` sends a
    generator label ``x: K -> L`` to a vector in the basis of ``L* -> K*``.

    The map reverses both 1-composition and vertical composition.
    """

    vertices: dict
    one_edges: dict
    two_cells: dict

    def edge(self, F: str) -> str:
        return self.one_edges[F]


def _star_quiver_basis(cat, s: WeakInvolution, x, K: str, L: str) -> dict:
    """Image of a normal path of a quiver 2-category, extended anti-multiplicatively."""
    acc = {cat.unit(s.edge(L)): Fraction(1)}
    cur = s.edge(L)
    # x = a_1 ∘ ... ∘ a_k with a_k applied first; the image is a_k* ∘ ... ∘ a_1*
    for a in x:
        Ka, La = cat.quiver.two_edges[a]
        img = cat.table.reduce_vec(s.edge(La), s.edge(Ka), s.two_cells[a])
        acc = cat.mul_vec(img, acc, s.edge(L), cur, s.edge(Ka))
        cur = s.edge(Ka)
    return acc


def _star_vec(cat, s: WeakInvolution, vec: Mapping, K: str, L: str) -> dict:
    out: dict = {}
    for x, c in vec.items():
        out = add_vectors(out, scale_vector(_star_label(cat, s, x, K, L), c))
    return out


def _star_label(cat, s: WeakInvolution, x, K: str, L: str) -> dict:
    if K == L and x == cat.unit(K):
        return {cat.unit(s.edge(K)): Fraction(1)}
    if hasattr(cat, "quiver") and hasattr(cat, "table"):
        return _star_quiver_basis(cat, s, x, K, L)
    if x not in s.two_cells:
        raise InvolutionError(f"involution is not defined on the basis element {cat.format_label(x)}")
    return {k: Fraction(v) for k, v in s.two_cells[x].items() if v}


def check_involution(cat: TwoCategory, s: WeakInvolution) -> Report:
    """Order two, contravariance on 1-cells and 2-cells, and fixed 1-cells.

    For quiver 2-categories ``s`` is given on 2-edges and extended along paths;
    the relations must then map into the ideal.  For listed presentations it
    must be given on every non-identity basis element.  Compatibility with
    horizontal composition is outside the scope of this check.
    """
    rep = Report("weak involution")
    missing = [v for v in cat.vertices if v not in s.vertices]
    missing += [F for F in cat.one_edges if F not in s.one_edges]
    quiver_like = hasattr(cat, "quiver") and hasattr(cat, "table")
    if quiver_like:
        missing += [a for a in cat.quiver.two_edges if a not in s.two_cells]
    else:
        for K, L in cat.parallel_pairs():
            missing += [x for x in cat.basis(K, L) if x != (cat.unit(K) if K == L else None)
                        and x not in s.two_cells]
    if missing:
        raise InvolutionError(f"involution is not total: missing {missing[:5]}")

    bad = [v for v in cat.vertices if s.vertices[s.vertices[v]] != v]
    bad += [F for F in cat.one_edges if s.edge(s.edge(F)) != F]
    rep.add("order two on 0-cells and 1-cells", not bad, len(cat.vertices) + len(cat.one_edges), bad or None)

    bad = None
    count = 0
    for F, (x, y) in sorted(cat.one_edges.items()):
        count += 1
        if cat.one_edges[s.edge(F)] != (s.vertices[y], s.vertices[x]) and bad is None:
            bad = {"edge": F, "image": s.edge(F)}
    for F in sorted(cat.one_edges):
        for G in sorted(cat.one_edges):
            if cat.one_edges[G][1] != cat.one_edges[F][0]:
                continue
            count += 1
            lhs = sorted(s.edge(h) for h in cat.g(F, G))
            rhs = sorted(cat.g(s.edge(G), s.edge(F)))
            if lhs != rhs and bad is None:
                bad = {"pair": [F, G], "(FG)*": lhs, "G*F*": rhs}
    rep.add("contravariant on 1-composition", bad is None, count, bad)

    # boundaries and order two on 2-cell generators
    if quiver_like:
        gens = [((a,), *cat.quiver.two_edges[a]) for a in sorted(cat.quiver.two_edges)]
    else:
        gens = [(x, K, L) for K, L in cat.parallel_pairs() for x in cat.basis(K, L)
                if not (K == L and x == cat.unit(K))]
    bad, count = None, 0
    for x, K, L in gens:
        count += 1
        img = _star_label(cat, s, x, K, L)
        labels = set(cat.basis(s.edge(L), s.edge(K))) if cat.parallel(s.edge(L), s.edge(K)) else set()
        if not set(img) <= labels and bad is None:
            bad = {"two_cell": cat.format_label(x), "reason": f"image is not a 2-cell {s.edge(L)} -> {s.edge(K)}"}
            continue
        if quiver_like and s.edge(L) == s.edge(K) and () in img and bad is None:
            bad = {"two_cell": cat.format_label(x), "reason": "image leaves the radical"}
            continue
        twice = _star_vec(cat, s, img, s.edge(L), s.edge(K))
        if twice != {x: Fraction(1)} and bad is None:
            bad = {"two_cell": cat.format_label(x),
                   "twice": {cat.format_label(k): v for k, v in twice.items()}}
    rep.add("order two on 2-cells", bad is None, count, bad)
    if bad is not None and "reason" in bad:
        rep.add("anti-multiplicative on 2-cells", False, 0, note="skipped: boundary failure")
        return _fixed(rep, cat, s)

    # (a ∘ b)* = b* ∘ a*
    bad, count = None, 0
    if quiver_like:
        t = cat.table
        killers = [(g.src, g.tgt, g.terms) for g in t.ideal.generators]
        for (K, L), rows in t.spaces.items():
            killers.extend((K, L, r) for r in rows.rows())
        for K, L, terms in killers:
            count += 1
            img: dict = {}
            for path, c in terms.items():
                if len(path) >= t.n:
                    continue
                img = add_vectors(img, scale_vector(_star_quiver_basis(cat, s, path, K, L), c))
            if img and bad is None:
                bad = {"relation": {cat.format_label(k): v for k, v in terms.items()},
                       "image": {cat.format_label(k): v for k, v in img.items()}}
    else:
        for K, M in cat.parallel_pairs():
            for L in sorted(cat.one_edges):
                if not cat.parallel(M, L):
                    continue
                for b in cat.basis(K, M):
                    for a in cat.basis(M, L):
                        count += 1
                        lhs = _star_vec(cat, s, cat.mul(a, b, K, M, L), K, L)
                        rhs = cat.mul_vec(_star_label(cat, s, b, K, M), _star_label(cat, s, a, M, L),
                                          s.edge(L), s.edge(M), s.edge(K))
                        if lhs != rhs and bad is None:
                            bad = {"pair": [cat.format_label(a), cat.format_label(b)]}
    rep.add("anti-multiplicative on 2-cells", bad is None, count, bad)
    return _fixed(rep, cat, s)


def _fixed(rep: Report, cat, s: WeakInvolution) -> Report:
    fixed = sorted(F for F in cat.one_edges if s.edge(F) == F)
    rep.data["fixed_one_cells"] = fixed
    rep.data["scope"] = "2-cell checks cover the supplied assignments extended linearly and vertically"
    return rep.finish()


# ---------------------------------------------------------------------------
# adjunctions


@dataclass
class Adjunction:
    """``unit: I -> G F`` and ``counit: F G -> I`` for ``F: X -> Y`` and ``G: Y -> X``."""

    F: str
    G: str
    unit: Cell
    counit: Cell


def _inverse(perm: Sequence[int]) -> list[int]:
    out = [0] * len(perm)
    for n, p in enumerate(perm):
        out[p] = n
    return out


def _identity_edge(cat: TwoCategory, X: str) -> OneCell:
    if X not in cat.identities:
        raise QuiverError(f"no identity 1-cell at {X}")
    return cat.edge(cat.identities[X])


def check_adjunction(cat: TwoCategory, F: str, G: str, unit: Cell, counit: Cell) -> Report:
    """Both triangle identities, moving cells between bracketings as needed."""
    rep = Report(f"adjunction {F} -| {G}")
    cat.ensure_associator()
    f, g = cat.edge(F), cat.edge(G)
    X, Y = cat.one_edges[F]
    if cat.one_edges[G] != (Y, X):
        raise QuiverError(f"{G} does not run opposite to {F}")
    IX, IY = _identity_edge(cat, X), _identity_edge(cat, Y)
    gf, fg = cat.compose1(g, f), cat.compose1(f, g)
    if (unit.src, unit.tgt) != (IX, gf):
        raise QuiverError(f"unit must run {IX} -> {gf}")
    if (counit.src, counit.tgt) != (fg, IY):
        raise QuiverError(f"counit must run {fg} -> {IY}")

    # F -> F (G F) -> (F G) F -> F
    a = cat.lower(f, unit)
    perm = cat.transport(f, g, f)
    a = a.permuted(_inverse(perm), range(a.shape[1]), new_tgt=cat.compose1(fg, f))
    b = cat.upper(f, counit)
    first = cat.vcomp(b, Cell(a.src, b.src, a.entries))
    want = cat.identity(f)
    rep.add(f"(counit {F}) ∘ ({F} unit) = identity", first == want, 1,
            None if first == want else {"residual": first - want})
    rep.data["first_triangle"] = {"counit_whiskered": b, "unit_whiskered": a, "composite": first}

    # G -> (G F) G -> G (F G) -> G
    c = cat.upper(g, unit)
    perm = cat.transport(g, f, g)
    c = c.permuted(perm, range(c.shape[1]), new_tgt=cat.compose1(g, fg))
    d = cat.lower(g, counit)
    second = cat.vcomp(d, Cell(c.src, d.src, c.entries))
    want = cat.identity(g)
    rep.add(f"({G} counit) ∘ (unit {G}) = identity", second == want, 1,
            None if second == want else {"residual": second - want})
    rep.data["second_triangle"] = {"counit_whiskered": d, "unit_whiskered": c, "composite": second}
    return rep.finish()


# ---------------------------------------------------------------------------
# finitariness and fiat


def check_finitary(cat: TwoCategory) -> Report:
    """Distinct 1-edges are not isomorphic and each ``End(F)`` is local."""
    rep = Report("finitary")
    count, bad = 0, None
    for F in sorted(cat.one_edges):
        count += 1
        alg, _ = hom_algebra(_OnlyEdge(cat, F), *cat.one_edges[F])
        rad = algebra_radical(alg)
        if alg.dim - len(rad) != 1 and bad is None:
            bad = {"edge": F, "top_dim": alg.dim - len(rad)}
    rep.add("End(F) modulo its radical is one-dimensional", bad is None, count, bad)
    if bad is not None:
        return rep.finish()
    count, bad = 0, None
    for F, G in cat.parallel_pairs():
        if F == G:
            continue
        # composites G -> F -> G span an ideal of the local algebra End(G)
        alg, index = hom_algebra(_OnlyEdge(cat, F), *cat.one_edges[F])
        rad = algebra_radical(alg)
        for u in cat.basis(F, G):
            for v in cat.basis(G, F):
                count += 1
                vu = cat.mul(v, u, F, G, F)
                vec = [vu.get(lab, Fraction(0)) for (_, _, lab) in index]
                if rank(rad + [vec]) != rank(rad) and bad is None:
                    bad = {"edges": [F, G], "u": cat.format_label(u), "v": cat.format_label(v)}
    rep.add("distinct 1-edges are not isomorphic", bad is None, count, bad)
    return rep.finish()


class _OnlyEdge:
    def __init__(self, cat, F):
        self.cat = cat
        self.one_edges = {F: cat.one_edges[F]}

    def basis(self, F, G):
        return self.cat.basis(F, G)

    def unit(self, F):
        return self.cat.unit(F)

    def mul(self, a, b, F, G, H):
        return self.cat.mul(a, b, F, G, H)


def fiat_report(cat: TwoCategory, s: WeakInvolution, adjunctions: Sequence[Adjunction]) -> Report:
    """Finitary, involution, an adjunction between every ``F`` and ``F*``, and
    the ⋆-self-dual members of each left cell."""
    rep = Report(f"fiat: {getattr(cat, 'name', '2-category')}")
    rep.extend(check_finitary(cat), "finitary: ")
    inv = check_involution(cat, s)
    rep.extend(inv, "involution: ")
    done = {}
    for adj in adjunctions:
        r = check_adjunction(cat, adj.F, adj.G, adj.unit, adj.counit)
        rep.extend(r, f"adjunction {adj.F}, {adj.G}: ")
        done[(adj.F, adj.G)] = r.ok
    missing = []
    for F in sorted(cat.one_edges):
        if cat.is_identity(F):
            continue
        if not done.get((F, s.edge(F))):
            missing.append([F, s.edge(F)])
    rep.add("every F has an adjunction with F*", not missing, len(cat.one_edges), missing or None)
    part = cells(cat)
    per_cell = []
    for c in part.left:
        selfdual = [F for F in c if s.edge(F) == F]
        per_cell.append({"cell": c, "self_dual": selfdual})
    rep.data["left_cells"] = per_cell
    rep.data["observations"] = [
        f"cell {{{', '.join(c['cell'])}}} has no ⋆-self-dual member"
        for c in per_cell if not c["self_dual"]]
    return rep.finish()
