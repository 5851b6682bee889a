"""Finite 2-category presentations and extraction of their Gabriel 2-quiver.

Extraction follows the usual recipe: the vertical radical is computed per pair
of 0-cells, lifts of a basis of ``Rad / Rad²`` become 2-edges, the evaluation
functor ``Ψ`` sends a 2-path to the product of its lifts, its kernel (below the
nilpotency degree) gives the relations, and whiskering a lift by a 1-edge,
re-expressed through ``Ψ``, gives the drop table.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .drop import DropTable, QuiverTwoCategory, build_two_category, verify_drop
from .exactlin import Subspace, algebra_radical, nullspace, solve
from .pathcat import Cell, PathVector, add_vectors, enumerate_paths, path_key, scale_vector
from .quiver2 import LicitPresentation, OneCell, QuiverError, TwoQuiver, check_licit
from .quotient import AdmissibleIdeal, build_quotient
from .report import Report
from .twocat import TwoCategory, hom_algebra, verify_two_category

__all__ = [
    "EquivalentObjectsError",
    "GabrielResult",
    "TwoCatPresentation",
    "gabriel_quiver",
    "radical_power",
    "round_trip",
    "vertical_radical",
]


class EquivalentObjectsError(QuiverError):
    pass


class TwoCatPresentation(TwoCategory):
    """A finitary 2-category listed by bases and structure constants.

    ``bases[(F, G)]`` lists the basis labels of ``C(F, G)`` (labels are unique
    strings), ``units[F]`` is the identity 2-cell of ``F``, ``products[(a, b)]``
    is ``a ∘ b`` as a dict (absent means zero), and ``lower[(f, x)]`` /
    ``upper[(f, x)]`` are the whiskerings ``ι_f x`` and ``x ι_f`` for
    non-identity labels ``x`` and non-identity 1-edges ``f``.
    """

    def __init__(self, vertices, one_edges, identities, rewrites, bases, units, products,
                 lower, upper, generator_labels: Sequence[str] | None = None,
                 name: str = "presentation"):
        super().__init__(vertices, one_edges, identities, rewrites)
        self.name = name
        self.bases = {k: list(v) for k, v in bases.items()}
        self.units = dict(units)
        self.products = {k: {x: Fraction(c) for x, c in v.items() if c} for k, v in products.items()}
        self.lower_table = dict(lower)
        self.upper_table = dict(upper)
        self.generator_labels = set(generator_labels) if generator_labels is not None else None
        self.where: dict = {}
        for (F, G), labs in self.bases.items():
            if not self.parallel(F, G):
                raise QuiverError(f"basis given between non-parallel 1-edges {F}, {G}")
            for x in labs:
                if x in self.where:
                    raise QuiverError(f"basis label {x!r} used twice")
                self.where[x] = (F, G)
        for F, G in self.parallel_pairs():
            self.bases.setdefault((F, G), [])
        for F, u in self.units.items():
            if self.where.get(u) != (F, F):
                raise QuiverError(f"unit {u!r} is not a basis element of End({F})")
        for F in self.one_edges:
            if F not in self.units:
                raise QuiverError(f"1-edge {F} has no identity 2-cell")

    def basis(self, F, G):
        return self.bases[(F, G)]

    def unit(self, F):
        return self.units[F]

    def mul(self, a, b, F, G, H):
        if b == self.units.get(G) and G == F:
            return {a: Fraction(1)}
        if a == self.units.get(G) and G == H:
            return {b: Fraction(1)}
        return self.products.get((a, b), {})

    def generators(self, F, G):
        labs = [x for x in self.bases[(F, G)] if x != self.units.get(F)]
        if self.generator_labels is None:
            return labs
        return [x for x in labs if x in self.generator_labels]

    def _lower_edge(self, f, x, K, L):
        if (f, x) not in self.lower_table:
            raise QuiverError(f"presentation lacks the whiskering of {x} by {f} on the left")
        return self.lower_table[(f, x)]

    def _upper_edge(self, f, x, K, L):
        if (f, x) not in self.upper_table:
            raise QuiverError(f"presentation lacks the whiskering of {x} by {f} on the right")
        return self.upper_table[(f, x)]

    def licit(self) -> LicitPresentation:
        q = TwoQuiver(self.vertices, self.one_edges, self.identities, {})
        p = LicitPresentation(q, self.rewrites, fill_units=False)
        check_licit(p)
        return p


def _vec_mul(cat: TwoCategory, u: Mapping, v: Mapping, F, G, H) -> dict:
    return cat.mul_vec(u, v, F, G, H)


def _span(vectors: Sequence[Mapping], order) -> Subspace:
    sp = Subspace(order=order)
    for v in vectors:
        sp.add(v)
    return sp


def _label_order(cat: TwoCategory, F, G):
    pos = {x: n for n, x in enumerate(cat.basis(F, G))}
    return lambda x: pos[x]


def vertical_radical(cat: TwoCategory, X: str, Y: str) -> dict[tuple, list[dict]]:
    """Echelon bases of ``Rad C(F, G)`` for all 1-edges ``F, G: X -> Y``."""
    alg, index = hom_algebra(cat, X, Y)
    rad = algebra_radical(alg, require_discrete=True)
    edges = sorted(e for e, st in cat.one_edges.items() if st == (X, Y))
    blocks: dict = {(F, G): [] for F in edges for G in edges}
    for r in rad:
        parts: dict = {}
        for n, c in enumerate(r):
            if c:
                F, G, x = index[n]
                parts.setdefault((F, G), {})[x] = c
        for k, v in parts.items():
            blocks[k].append(v)
    out = {}
    for (F, G), vecs in blocks.items():
        out[(F, G)] = _span(vecs, _label_order(cat, F, G)).rows()
    return out


def _full_radical(cat: TwoCategory) -> dict[tuple, list[dict]]:
    rad = {}
    pairs = sorted({st for st in cat.one_edges.values()})
    for X, Y in pairs:
        rad.update(vertical_radical(cat, X, Y))
    return rad


def _products(cat: TwoCategory, left: dict, right: dict) -> dict[tuple, list[dict]]:
    """``span{a ∘ b}`` per pair with ``a`` from ``left`` and ``b`` from ``right``."""
    out = {}
    edges = sorted(cat.one_edges)
    for F, G in cat.parallel_pairs():
        sp = Subspace(order=_label_order(cat, F, G))
        for H in edges:
            if not cat.parallel(F, H):
                continue
            for b in right.get((F, H), []):
                for a in left.get((H, G), []):
                    sp.add(cat.mul_vec(a, b, F, H, G))
        out[(F, G)] = sp.rows()
    return out


def radical_power(cat: TwoCategory, k: int, rad: dict | None = None) -> dict[tuple, list[dict]]:
    rad = rad if rad is not None else _full_radical(cat)
    power = rad
    for _ in range(k - 1):
        power = _products(cat, power, rad)
    return power


@dataclass
class GabrielResult:
    quiver: TwoQuiver
    presentation: LicitPresentation
    lifts: dict                      # 2-edge id -> (src, tgt, vector over source labels)
    ideal: AdmissibleIdeal
    drops: DropTable
    radical_dims: dict = field(default_factory=dict)
    psi: dict = field(default_factory=dict)   # (F, G) -> {normal path: vector}

    def build(self, name: str = "extracted") -> QuiverTwoCategory:
        return build_two_category(self.quiver, self.presentation, self.ideal, self.drops, name)


def _check_reduced(cat: TwoCategory) -> None:
    for F, (X, Y) in cat.one_edges.items():
        if X == Y:
            continue
        for G, (Y2, X2) in cat.one_edges.items():
            if (Y2, X2) != (Y, X):
                continue
            iX, iY = cat.identities.get(X), cat.identities.get(Y)
            if iX and iY and cat.g(G, F) == (iX,) and cat.g(F, G) == (iY,):
                raise EquivalentObjectsError(f"0-cells {X} and {Y} are equivalent via {F}, {G}")


def _name_for(cat: TwoCategory, vec: Mapping, F: str, G: str, k: int, taken: set) -> str:
    if len(vec) == 1:
        (x, c), = vec.items()
        if c == 1:
            name = "∘".join(x) if isinstance(x, tuple) else str(x)
            if name and name not in taken and name not in cat.one_edges:
                return name
    name = f"r[{F},{G}]{k}"
    while name in taken:
        name += "'"
    return name


def gabriel_quiver(cat: TwoCategory, lifts: Mapping[str, tuple] | None = None) -> GabrielResult:
    """Extract the bound Gabriel 2-quiver and drop table of a finitary 2-category.

    ``lifts`` optionally prescribes the 2-edges as ``name -> (F, G, vector)``;
    they must form a basis of ``Rad / Rad²`` on every pair.
    """
    _check_reduced(cat)
    rad = _full_radical(cat)
    rad2 = _products(cat, rad, rad)
    chosen: dict = {}
    taken: set = set()
    dims = {}
    for F, G in cat.parallel_pairs():
        order = _label_order(cat, F, G)
        sp = _span(rad2[(F, G)], order)
        dims[(F, G)] = len(rad[(F, G)]) - len(rad2[(F, G)])
        if lifts is not None:
            mine = [(nm, v) for nm, (s, t, v) in lifts.items() if (s, t) == (F, G)]
            for nm, v in mine:
                v = {x: Fraction(c) for x, c in v.items() if c}
                inside = _span(rad[(F, G)], order)
                if not inside.contains(v) or not sp.add(v):
                    raise QuiverError(f"prescribed lift {nm} is not independent in Rad/Rad² on {F}->{G}")
                chosen[nm] = (F, G, v)
            if len(mine) != dims[(F, G)]:
                raise QuiverError(f"{len(mine)} lifts prescribed on {F}->{G}, need {dims[(F, G)]}")
            continue
        k = 0
        for r in rad[(F, G)]:
            if sp.add(r):
                nm = _name_for(cat, r, F, G, k, taken)
                taken.add(nm)
                chosen[nm] = (F, G, r)
                k += 1

    quiver = TwoQuiver(cat.vertices, cat.one_edges, cat.identities,
                       {nm: (F, G) for nm, (F, G, _) in chosen.items()})
    pres = LicitPresentation(quiver, cat.rewrites, fill_units=False)
    rep = check_licit(pres)
    if not rep.ok:
        raise QuiverError("1-composition table of the presentation is not licit")

    # nilpotency degree: least n with Rad^n = 0
    n, power = 1, rad
    while any(power.values()):
        n += 1
        if n > 64:
            raise ArithmeticError("radical does not appear to be nilpotent")
        power = _products(cat, power, rad)
    n = max(n, 2)

    # evaluation of 2-paths
    def evaluate(path: tuple, F: str) -> dict:
        vec = {cat.unit(F): Fraction(1)}
        cur = F
        for a in reversed(path):
            s, t, v = chosen[a]
            vec = cat.mul_vec(v, vec, F, s, t)
            cur = t
        return vec

    gens = []
    psi = {}
    for F, G in cat.parallel_pairs():
        paths = enumerate_paths(quiver, F, G, n - 1)
        labels = cat.basis(F, G)
        cols = [evaluate(pth, F) for pth in paths]
        mat = [[col.get(x, Fraction(0)) for col in cols] for x in labels]
        kernel = nullspace(mat) if paths else []
        if not labels:
            kernel = [[Fraction(int(i == j)) for i in range(len(paths))] for j in range(len(paths))]
        for kv in kernel:
            for pth, c in zip(paths, kv):
                if c and len(pth) < 2:
                    raise QuiverError(f"evaluation kernel meets degree {len(pth)} on {F}->{G}")
        ksp = _span([{pth: c for pth, c in zip(paths, kv) if c} for kv in kernel], path_key)
        gens.append((F, G, ksp))
        psi[(F, G)] = dict(zip(paths, cols))

    # minimal generating set, degree by degree
    chosen_gens: list[PathVector] = []
    candidates = []
    for F, G, ksp in gens:
        for row in ksp.rows():
            candidates.append((path_key(max(row, key=path_key)), F, G, row))
    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    current = build_quotient(quiver, pres, AdmissibleIdeal((), n))
    for _, F, G, row in candidates:
        if current.reduce_vec(F, G, row):
            chosen_gens.append(PathVector(F, G, row))
            current = build_quotient(quiver, pres, AdmissibleIdeal(tuple(chosen_gens), n))
    ideal = AdmissibleIdeal(tuple(chosen_gens), n)
    for F, G, ksp in gens:
        if len(current.spaces[(F, G)]) != len(ksp):
            raise ArithmeticError(f"relation closure on {F}->{G} differs from the evaluation kernel")

    # inverse of the evaluation on normal paths
    inverse: dict = {}
    for F, G in cat.parallel_pairs():
        normal = current.normal[(F, G)]
        labels = cat.basis(F, G)
        if len(normal) != len(labels):
            raise ArithmeticError(f"evaluation is not bijective on {F}->{G}")
        inverse[(F, G)] = (normal, [[psi[(F, G)][pth].get(x, Fraction(0)) for pth in normal]
                                    for x in labels])

    def pull_back(F: str, G: str, vec: Mapping) -> dict:
        normal, mat = inverse[(F, G)]
        labels = cat.basis(F, G)
        x = solve(mat, [vec.get(lab, Fraction(0)) for lab in labels]) if labels else []
        if x is None:
            raise ArithmeticError("vector outside the image of the evaluation")
        return {pth: c for pth, c in zip(normal, x) if c}

    def pull_cell(c: Cell) -> Cell:
        return Cell(c.src, c.tgt, tuple(
            tuple(pull_back(F, G, c.entries[j][i]) for i, F in enumerate(c.src.components))
            for j, G in enumerate(c.tgt.components)))

    drops = DropTable()
    for nm, (K, L, v) in chosen.items():
        vc = cat.vec_cell(v, K, L)
        for f in sorted(cat.one_edges):
            if cat.is_identity(f):
                continue
            if cat.one_edges[f][0] == cat.one_edges[K][1]:
                drops.lower[(f, nm)] = pull_cell(cat.lower(cat.edge(f), vc))
            if cat.one_edges[f][1] == cat.one_edges[K][0]:
                drops.upper[(f, nm)] = pull_cell(cat.upper(cat.edge(f), vc))
    return GabrielResult(quiver, pres, chosen, ideal, drops, dims, psi)


def round_trip(q: TwoQuiver, p: LicitPresentation, j: AdmissibleIdeal, d: DropTable,
               name: str = "round trip") -> Report:
    """Build, extract, and match the extracted 2-quiver against ``q``."""
    rep = Report(f"Gabriel round trip: {name}")
    if not p.certified:
        lic = check_licit(p)
        rep.add("licit", lic.ok, lic.triples_checked)
        if not lic.ok:
            return rep.finish()
    cat = build_two_category(q, p, j, d, name)
    res = gabriel_quiver(cat)
    eq = res.quiver
    rep.add("vertices match", tuple(sorted(eq.vertices)) == tuple(sorted(q.vertices)),
            len(q.vertices))
    rep.add("1-edges match", eq.one_edges == q.one_edges and eq.stationary == q.stationary,
            len(q.one_edges))
    two_map, bad = {}, []
    for F, G in cat.parallel_pairs():
        orig = q.two_edges_between(F, G)
        got = eq.two_edges_between(F, G)
        if len(orig) != len(got):
            bad.append({"pair": [F, G], "original": orig, "extracted": got})
            continue
        named = [g for g in got if g in orig]
        rest_o = [a for a in orig if a not in named]
        rest_g = [g for g in got if g not in named]
        for g in named:
            two_map[g] = g
        for g, a in zip(rest_g, rest_o):
            two_map[g] = a
    rep.add("2-edge counts match per pair", not bad, len(q.two_edges), bad or None)
    rep.add("2-edge bijection", len(two_map) == len(q.two_edges) == len(eq.two_edges) and
            sorted(two_map.values()) == sorted(q.two_edges), len(two_map))
    rebuilt = res.build(f"{name} (extracted)")
    rep.extend(verify_drop(rebuilt), "extracted: ")
    rep.extend(verify_two_category(rebuilt), "extracted: ")
    rep.data["isomorphism"] = {
        "vertices": {v: v for v in sorted(q.vertices)},
        "one_edges": {e: e for e in sorted(q.one_edges)},
        "two_edges": dict(sorted(two_map.items())),
    }
    rep.data["nilpotency_degree"] = res.ideal.nilpotency_degree
    rep.data["relations"] = len(res.ideal.generators)
    return rep.finish()
