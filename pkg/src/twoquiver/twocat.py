"""A small engine for finite linear 2-categories given by bases and whiskering.

Subclasses provide, for every ordered pair of parallel 1-edges, a basis of
2-cells (opaque hashable labels), the vertical structure constants, and the
whiskering of a basis 2-cell by a 1-edge on either side:

* ``lower_basis(F, x)`` is ``ι_F x`` (the cell written ``F_*(x)``),
* ``upper_basis(F, x)`` is ``x ι_F`` (the cell written ``F^*(x)``).

Everything else (whiskering by direct sums, horizontal composition, the
associativity transport, the axiom suite) lives here and is shared between
quiver 2-categories and imported presentations.

Block layout of composites.  For 1-cells ``F = ⊕F_i`` and ``G = ⊕G_j`` the
components of ``F ∘ G`` are enumerated with ``i`` outer, ``j`` inner and then
the summands of the rewrite ``F_i G_j``; the list is then stably sorted by edge
id.  Re-bracketing a triple composite permutes equal summands, and the
permutation used is chosen once per triple of 1-edges by
:meth:`TwoCategory.solve_associator`.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .exactlin import StructureConstants
from .pathcat import Cell, _vcomp, add_vectors, identity_cell, scale_vector
from .quiver2 import OneCell, QuiverError, compose_with_provenance, stable_sort_positions
from .report import Report

__all__ = [
    "AssociatorError",
    "HorizontalMismatch",
    "TwoCategory",
    "hom_algebra",
    "verify_two_category",
]


class HorizontalMismatch(ArithmeticError):
    """The two formulas for horizontal composition disagree."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class AssociatorError(ArithmeticError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class TwoCategory:
    """Base class; see the module docstring for the subclass contract."""

    name = "2-category"

    def __init__(self, vertices: Sequence[str], one_edges: Mapping[str, tuple],
                 identities: Mapping[str, str], rewrites: Mapping[tuple, tuple]):
        self.vertices = tuple(vertices)
        self.one_edges = dict(one_edges)
        self.identities = dict(identities)
        self.rewrites = {k: tuple(sorted(v)) for k, v in rewrites.items()}
        self._lower_cache: dict = {}
        self._upper_cache: dict = {}
        self._hcache: dict = {}
        self._assoc: dict | None = None
        self.associator_report: Report | None = None

    # ----- subclass contract -------------------------------------------------
    def basis(self, F: str, G: str) -> list:
        raise NotImplementedError

    def unit(self, F: str):
        raise NotImplementedError

    def mul(self, a, b, F: str, G: str, H: str) -> dict:
        """``a ∘ b`` for basis labels ``b: F -> G`` and ``a: G -> H``."""
        raise NotImplementedError

    def _lower_edge(self, f: str, x, K: str, L: str) -> Cell:
        raise NotImplementedError

    def _upper_edge(self, f: str, x, K: str, L: str) -> Cell:
        raise NotImplementedError

    def generators(self, F: str, G: str) -> list:
        """Basis labels used as generators for the sampled axiom checks."""
        u = self.unit(F) if F == G else None
        return [x for x in self.basis(F, G) if x != u]

    def format_label(self, x) -> str:
        return str(x)

    # ----- 1-cells -----------------------------------------------------------
    def parallel(self, F: str, G: str) -> bool:
        return self.one_edges[F] == self.one_edges[G]

    def parallel_pairs(self) -> list[tuple[str, str]]:
        es = sorted(self.one_edges)
        return [(F, G) for F in es for G in es if self.parallel(F, G)]

    def is_identity(self, F: str) -> bool:
        return F in self.identities.values()

    def g(self, p: str, q: str) -> tuple:
        return self.rewrites[(p, q)]

    def edge(self, F: str) -> OneCell:
        s, t = self.one_edges[F]
        return OneCell(s, t, (F,))

    def one_cell(self, *edges: str, src: str | None = None, tgt: str | None = None) -> OneCell:
        if edges:
            src, tgt = self.one_edges[edges[0]]
        if src is None or tgt is None:
            raise QuiverError("the zero 1-cell needs explicit endpoints")
        for e in edges:
            if self.one_edges[e] != (src, tgt):
                raise QuiverError(f"component {e} does not run {src} -> {tgt}")
        return OneCell(src, tgt, tuple(edges))

    def compose1(self, f: OneCell, g: OneCell) -> OneCell:
        """``f ∘ g`` (g first) in normal form."""
        if g.tgt != f.src:
            raise QuiverError(f"cannot compose 1-cells: {g} ends at {g.tgt}, {f} starts at {f.src}")
        comps = sorted(h for h, _ in compose_with_provenance(self.rewrites, f.components, g.components))
        return OneCell(g.src, f.tgt, tuple(comps))

    # ----- vertical structure ------------------------------------------------
    def cell(self, label, K: str, L: str, coeff=1) -> Cell:
        return Cell(self.edge(K), self.edge(L), (({label: Fraction(coeff)},),))

    def vec_cell(self, vec: Mapping, K: str, L: str) -> Cell:
        return Cell(self.edge(K), self.edge(L), ((dict(vec),),))

    def identity(self, f: OneCell) -> Cell:
        return identity_cell(f, unit=self.unit)

    def vcomp(self, a: Cell, b: Cell) -> Cell:
        return _vcomp(a, b, self.mul)

    def mul_vec(self, u: Mapping, v: Mapping, F: str, G: str, H: str) -> dict:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                out = add_vectors(out, scale_vector(self.mul(a, b, F, G, H), ca * cb))
        return out

    def hom_basis(self, f: OneCell, g: OneCell) -> list[Cell]:
        if (f.src, f.tgt) != (g.src, g.tgt):
            raise QuiverError("hom between non-parallel 1-cells")
        out = []
        for j, G in enumerate(g.components):
            for i, F in enumerate(f.components):
                for x in self.basis(F, G):
                    out.append(Cell.single(f, g, j, i, {x: Fraction(1)}))
        return out

    # ----- whiskering --------------------------------------------------------
    def lower_basis(self, f: str, x, K: str, L: str) -> Cell:
        """``ι_f x`` for a basis label ``x: K -> L``."""
        key = (f, x, K, L)
        hit = self._lower_cache.get(key)
        if hit is not None:
            return hit
        src = OneCell(self.one_edges[K][0], self.one_edges[f][1], self.g(f, K))
        tgt = OneCell(src.src, src.tgt, self.g(f, L))
        if K == L and x == self.unit(K):
            out = self.identity(src)
        elif self.is_identity(f):
            out = Cell(src, tgt, (({x: Fraction(1)},),))
        else:
            out = self._lower_edge(f, x, K, L)
            if (out.src, out.tgt) != (src, tgt):
                raise QuiverError(f"whiskering {f} * {self.format_label(x)} has wrong boundary")
        self._lower_cache[key] = out
        return out

    def upper_basis(self, f: str, x, K: str, L: str) -> Cell:
        """``x ι_f`` for a basis label ``x: K -> L``."""
        key = (f, x, K, L)
        hit = self._upper_cache.get(key)
        if hit is not None:
            return hit
        src = OneCell(self.one_edges[f][0], self.one_edges[K][1], self.g(K, f))
        tgt = OneCell(src.src, src.tgt, self.g(L, f))
        if K == L and x == self.unit(K):
            out = self.identity(src)
        elif self.is_identity(f):
            out = Cell(src, tgt, (({x: Fraction(1)},),))
        else:
            out = self._upper_edge(f, x, K, L)
            if (out.src, out.tgt) != (src, tgt):
                raise QuiverError(f"whiskering {self.format_label(x)} * {f} has wrong boundary")
        self._upper_cache[key] = out
        return out

    def _whisker_vec(self, basis_fn, f: str, vec: Mapping, K: str, L: str, src: OneCell,
                     tgt: OneCell) -> Cell:
        acc = None
        for x, c in vec.items():
            term = basis_fn(f, x, K, L).scaled(c)
            acc = term if acc is None else acc + term
        return acc if acc is not None else Cell.zero(src, tgt)

    def lower(self, F: OneCell, c: Cell) -> Cell:
        """``ι_F c``: whisker a 2-cell ``c: A -> B`` by ``F`` on the left."""
        A, B = c.src, c.tgt
        if A.tgt != F.src:
            raise QuiverError(f"cannot whisker: {F} does not start where {A} ends")
        s_tags = compose_with_provenance(self.rewrites, F.components, A.components)
        t_tags = compose_with_provenance(self.rewrites, F.components, B.components)
        spos = stable_sort_positions([h for h, _ in s_tags])
        tpos = stable_sort_positions([h for h, _ in t_tags])
        sidx = {tag: spos[n] for n, (_, tag) in enumerate(s_tags)}
        tidx = {tag: tpos[n] for n, (_, tag) in enumerate(t_tags)}
        src = OneCell(A.src, F.tgt, tuple(h for h, _ in s_tags))
        tgt = OneCell(A.src, F.tgt, tuple(h for h, _ in t_tags))
        grid = [[{} for _ in s_tags] for _ in t_tags]
        for m, f in enumerate(F.components):
            for i, a in enumerate(A.components):
                for j, b in enumerate(B.components):
                    e = c.entries[j][i]
                    if not e:
                        continue
                    blk = self._whisker_vec(self.lower_basis, f, e, a, b, None, None)
                    for k2, row in enumerate(blk.entries):
                        for k, v in enumerate(row):
                            if v:
                                cell = grid[tidx[(m, j, k2)]][sidx[(m, i, k)]]
                                grid[tidx[(m, j, k2)]][sidx[(m, i, k)]] = add_vectors(cell, v)
        return Cell(src, tgt, tuple(tuple(r) for r in grid))

    def upper(self, G: OneCell, c: Cell) -> Cell:
        """``c ι_G``: whisker a 2-cell ``c: A -> B`` by ``G`` on the right."""
        A, B = c.src, c.tgt
        if G.tgt != A.src:
            raise QuiverError(f"cannot whisker: {A} does not start where {G} ends")
        s_tags = compose_with_provenance(self.rewrites, A.components, G.components)
        t_tags = compose_with_provenance(self.rewrites, B.components, G.components)
        spos = stable_sort_positions([h for h, _ in s_tags])
        tpos = stable_sort_positions([h for h, _ in t_tags])
        sidx = {tag: spos[n] for n, (_, tag) in enumerate(s_tags)}
        tidx = {tag: tpos[n] for n, (_, tag) in enumerate(t_tags)}
        src = OneCell(G.src, A.tgt, tuple(h for h, _ in s_tags))
        tgt = OneCell(G.src, A.tgt, tuple(h for h, _ in t_tags))
        grid = [[{} for _ in s_tags] for _ in t_tags]
        for i, a in enumerate(A.components):
            for j, b in enumerate(B.components):
                e = c.entries[j][i]
                if not e:
                    continue
                for n, gn in enumerate(G.components):
                    blk = self._whisker_vec(self.upper_basis, gn, e, a, b, None, None)
                    for k2, row in enumerate(blk.entries):
                        for k, v in enumerate(row):
                            if v:
                                cell = grid[tidx[(j, n, k2)]][sidx[(i, n, k)]]
                                grid[tidx[(j, n, k2)]][sidx[(i, n, k)]] = add_vectors(cell, v)
        return Cell(src, tgt, tuple(tuple(r) for r in grid))

    def hcomp_pair(self, a: Cell, b: Cell) -> tuple[Cell, Cell]:
        """Both whiskering formulas for ``a b`` (a: F -> F~ after b: G -> G~)."""
        first = self.vcomp(self.upper(b.tgt, a), self.lower(a.src, b))
        second = self.vcomp(self.lower(a.tgt, b), self.upper(b.src, a))
        return first, second

    def hcomp(self, a: Cell, b: Cell) -> Cell:
        """Horizontal composite ``a b``; raises :class:`HorizontalMismatch` when
        the two whiskering formulas disagree."""
        first, second = self.hcomp_pair(a, b)
        if first != second:
            raise HorizontalMismatch("horizontal composition formulas disagree",
                                     {"a": a, "b": b, "via lower first": first,
                                      "via upper first": second})
        return first

    # ----- re-bracketing -----------------------------------------------------
    def _edge_triple_lists(self, f: str, g: str, h: str) -> tuple[list, list]:
        left = [t for s in self.g(f, g) for t in self.g(s, h)]
        right = [t for u in self.g(g, h) for t in self.g(f, u)]
        return left, right

    def _triple_layout(self, F: Sequence[str], G: Sequence[str], H: Sequence[str],
                       left: bool) -> list[tuple]:
        """Tags ``(i, j, l, p)`` of a triple composite in its sorted order."""
        items = []
        count: dict = {}
        if left:
            fg = compose_with_provenance(self.rewrites, F, G)
            fg_sorted = [fg[n] for n in sorted(range(len(fg)), key=lambda n: fg[n][0])]
            for s, (i, j, _) in fg_sorted:
                for l, hh in enumerate(H):
                    for t in self.g(s, hh):
                        p = count.get((i, j, l), 0)
                        count[(i, j, l)] = p + 1
                        items.append((t, (i, j, l, p)))
        else:
            gh = compose_with_provenance(self.rewrites, G, H)
            gh_sorted = [gh[n] for n in sorted(range(len(gh)), key=lambda n: gh[n][0])]
            for i, ff in enumerate(F):
                for u, (j, l, _) in gh_sorted:
                    for t in self.g(ff, u):
                        p = count.get((i, j, l), 0)
                        count[(i, j, l)] = p + 1
                        items.append((t, (i, j, l, p)))
        order = sorted(range(len(items)), key=lambda n: items[n][0])
        return [items[n][1] for n in order]

    def default_matching(self, f: str, g: str, h: str) -> tuple:
        left, right = self._edge_triple_lists(f, g, h)
        seen: dict = {}
        slots: dict = {}
        for n, t in enumerate(right):
            slots.setdefault(t, []).append(n)
        out = []
        for t in left:
            k = seen.get(t, 0)
            seen[t] = k + 1
            out.append(slots[t][k])
        return tuple(out)

    def matchings(self, f: str, g: str, h: str) -> list[tuple]:
        """All label-preserving bijections between the two bracketings, default first."""
        left, right = self._edge_triple_lists(f, g, h)
        if sorted(left) != sorted(right):
            raise QuiverError(f"rewrites are not associative on ({f}, {g}, {h})")
        groups_l: dict = {}
        groups_r: dict = {}
        for n, t in enumerate(left):
            groups_l.setdefault(t, []).append(n)
        for n, t in enumerate(right):
            groups_r.setdefault(t, []).append(n)
        labels = sorted(groups_l)
        choices = [list(permutations(groups_r[t])) for t in labels]
        out = []
        for combo in product(*choices):
            m = [0] * len(left)
            for t, perm in zip(labels, combo):
                for src, dst in zip(groups_l[t], perm):
                    m[src] = dst
            out.append(tuple(m))
        d = self.default_matching(f, g, h)
        out.remove(d)
        return [d] + out

    def matching(self, f: str, g: str, h: str) -> tuple:
        if self._assoc is not None and (f, g, h) in self._assoc:
            return self._assoc[(f, g, h)]
        return self.default_matching(f, g, h)

    def transport(self, F: OneCell, G: OneCell, H: OneCell, overrides: Mapping | None = None) -> list[int]:
        """Position map from ``(F G) H`` to ``F (G H)``: ``out[pos_left] = pos_right``."""
        Fc, Gc, Hc = F.components, G.components, H.components
        left = self._triple_layout(Fc, Gc, Hc, True)
        right = self._triple_layout(Fc, Gc, Hc, False)
        rpos = {tag: n for n, tag in enumerate(right)}
        out = []
        for i, j, l, p in left:
            key = (Fc[i], Gc[j], Hc[l])
            tau = overrides[key] if overrides and key in overrides else self.matching(*key)
            out.append(rpos[(i, j, l, tau[p])])
        return out

    def rebracket(self, c: Cell, src3: tuple, tgt3: tuple, overrides=None) -> Cell:
        """Move a cell between ``(FG)H`` composites into the ``F(GH)`` layout."""
        ps = self.transport(*src3, overrides=overrides)
        pt = self.transport(*tgt3, overrides=overrides)
        return c.permuted(pt, ps)

    def atoms(self, F: str, G: str) -> list:
        out = list(self.generators(F, G))
        if F == G:
            out.insert(0, self.unit(F))
        return out

    def atom_cells(self) -> list[tuple]:
        """``(label, K, L, cell)`` for every generator and identity 2-cell."""
        out = []
        for K, L in self.parallel_pairs():
            for x in self.atoms(K, L):
                out.append((x, K, L, self.cell(x, K, L)))
        return out

    def hcomp_cached(self, a: tuple, b: tuple) -> Cell:
        key = (a[:3], b[:3])
        hit = self._hcache.get(key)
        if hit is None:
            hit = self.hcomp(a[3], b[3])
            self._hcache[key] = hit
        return hit

    def _assoc_pair(self, x, y, z) -> tuple[Cell, Cell]:
        xy = self.hcomp_cached(x, y)
        yz = self.hcomp_cached(y, z)
        return self.hcomp(xy, z[3]), self.hcomp(x[3], yz)

    def solve_associator(self) -> Report:
        """Choose, per triple of composable 1-edges, the matching of equal
        summands that makes horizontal composition associative on all triples
        of atoms (generators and identity 2-cells)."""
        rep = Report("associator")
        atoms = self.atom_cells()
        triples = []
        for x in atoms:
            for y in atoms:
                if self.one_edges[y[1]][1] != self.one_edges[x[1]][0]:
                    continue
                for z in atoms:
                    if self.one_edges[z[1]][1] != self.one_edges[y[1]][0]:
                        continue
                    triples.append((x, y, z))
        variables: dict = {}
        constraints: dict = {}
        for x, y, z in triples:
            s = (x[1], y[1], z[1])
            t = (x[2], y[2], z[2])
            for v in (s, t):
                if v not in variables:
                    variables[v] = self.matchings(*v)
            left, right = self._assoc_pair(x, y, z)
            constraints.setdefault((s, t), []).append((left, right))
        domains = {v: list(ms) for v, ms in variables.items()}

        def ok(s, t, ms, mt, pairs) -> bool:
            ov = {s: ms, t: mt}
            for left, right in pairs:
                src3 = tuple(self.edge(e) for e in s)
                tgt3 = tuple(self.edge(e) for e in t)
                if self.rebracket(left, src3, tgt3, ov) != right:
                    return False
            return True

        # unary constraints
        binary: dict = {}
        for (s, t), pairs in constraints.items():
            if s == t:
                domains[s] = [m for m in domains[s] if ok(s, s, m, m, pairs)]
            else:
                binary[(s, t)] = pairs
        allowed: dict = {}
        for (s, t), pairs in binary.items():
            allowed[(s, t)] = {(ms, mt) for ms in domains[s] for mt in domains[t]
                               if ok(s, t, ms, mt, pairs)}
        # arc consistency
        changed = True
        while changed:
            changed = False
            for (s, t), al in allowed.items():
                ds = [m for m in domains[s] if any((m, mt) in al for mt in domains[t])]
                dt = [m for m in domains[t] if any((ms, m) in al for ms in domains[s])]
                if len(ds) != len(domains[s]) or len(dt) != len(domains[t]):
                    domains[s], domains[t] = ds, dt
                    changed = True
        empty = [v for v, d in domains.items() if not d]
        order = sorted(variables, key=lambda v: (len(domains[v]), v))
        neighbours: dict = {}
        for (s, t) in allowed:
            neighbours.setdefault(s, []).append((s, t))
            neighbours.setdefault(t, []).append((s, t))
        assignment: dict = {}

        def consistent(v) -> bool:
            for s, t in neighbours.get(v, []):
                if s in assignment and t in assignment:
                    if (assignment[s], assignment[t]) not in allowed[(s, t)]:
                        return False
            return True

        # forced choices first, then backtrack over the genuinely open ones
        forced = [v for v in order if len(domains[v]) == 1]
        for v in forced:
            assignment[v] = domains[v][0]
        open_vars = [v for v in order if len(domains[v]) > 1]

        def search(k: int) -> bool:
            if k == len(open_vars):
                return True
            v = open_vars[k]
            for m in domains[v]:
                assignment[v] = m
                if consistent(v) and search(k + 1):
                    return True
                del assignment[v]
            return False

        solved = not empty and all(consistent(v) for v in forced) and search(0)
        nontrivial = 0
        if solved:
            self._assoc = dict(assignment)
            nontrivial = sum(1 for v, m in assignment.items() if m != self.default_matching(*v))
        else:
            self._assoc = {}
        witness = None
        if not solved:
            # report the first atom triple that fails under the default matching
            for x, y, z in triples:
                left, right = self._assoc_pair(x, y, z)
                src3 = tuple(self.edge(e) for e in (x[1], y[1], z[1]))
                tgt3 = tuple(self.edge(e) for e in (x[2], y[2], z[2]))
                if self.rebracket(left, src3, tgt3) != right:
                    witness = {"triple": [self.format_label(x[0]), self.format_label(y[0]),
                                          self.format_label(z[0])],
                               "(xy)z": left, "x(yz)": right}
                    break
        rep.add("horizontal associativity", solved, len(triples), witness,
                note=f"{nontrivial} re-bracketings permute equal summands" if solved else
                "no matching of equal summands makes the atom triples associative")
        self.associator_report = rep.finish()
        return rep

    def ensure_associator(self) -> None:
        if self._assoc is None:
            self.solve_associator()


def hom_algebra(cat: TwoCategory, X: str, Y: str) -> tuple[StructureConstants, list[tuple]]:
    """The algebra ``⊕ C(F, G)`` over 1-edges ``F, G: X -> Y``.

    Returns the structure constants and the index ``[(F, G, label), ...]``.
    """
    edges = sorted(e for e, st in cat.one_edges.items() if st == (X, Y))
    index = [(F, G, x) for F in edges for G in edges for x in cat.basis(F, G)]
    pos = {t: n for n, t in enumerate(index)}
    n = len(index)
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, (G, H, a) in enumerate(index):
        for j, (F, G2, b) in enumerate(index):
            if G2 != G:
                continue
            for lab, c in cat.mul(a, b, F, G, H).items():
                table[i][j][pos[(F, H, lab)]] = c
    unit = [0] * n
    idem = []
    for F in edges:
        e = [0] * n
        e[pos[(F, F, cat.unit(F))]] = 1
        unit[pos[(F, F, cat.unit(F))]] = 1
        idem.append(e)
    return StructureConstants.build(n, table, unit=unit, idempotents=idem), index


def _sample(seq: list, k: int) -> list:
    if len(seq) <= k:
        return seq
    step = len(seq) / k
    return [seq[int(n * step)] for n in range(k)]


def verify_two_category(cat: TwoCategory, *, interchange: bool = True) -> Report:
    """The 2-category axiom suite on exhaustive generator-level samples."""
    rep = Report(f"2-category axioms: {cat.name}")
    pairs = cat.parallel_pairs()

    # vertical associativity on all basis triples
    count, bad = 0, None
    homs = {(F, G): cat.basis(F, G) for F, G in pairs}
    edges = sorted(cat.one_edges)
    for F, G in pairs:
        for H in edges:
            if not cat.parallel(G, H):
                continue
            for K in edges:
                if not cat.parallel(H, K):
                    continue
                for c in homs[(F, G)]:
                    for b in homs[(G, H)]:
                        bc = cat.mul(b, c, F, G, H)
                        for a in homs[(H, K)]:
                            count += 1
                            lhs = cat.mul_vec({a: 1}, bc, F, H, K)
                            rhs = cat.mul_vec(cat.mul(a, b, G, H, K), {c: 1}, F, G, K)
                            if lhs != rhs and bad is None:
                                bad = {"triple": [cat.format_label(a), cat.format_label(b),
                                                  cat.format_label(c)], "(ab)c": rhs, "a(bc)": lhs}
    rep.add("vertical associativity", bad is None, count, bad)

    count, bad = 0, None
    for F, G in pairs:
        for x in homs[(F, G)]:
            count += 1
            one = {x: Fraction(1)}
            if cat.mul(cat.unit(G), x, F, G, G) != one or cat.mul(x, cat.unit(F), F, F, G) != one:
                bad = bad or {"label": cat.format_label(x), "pair": [F, G]}
    rep.add("vertical units", bad is None, count, bad)

    atoms = cat.atom_cells()
    try:
        hpairs = [(x, y) for x in atoms for y in atoms
                  if cat.one_edges[y[1]][1] == cat.one_edges[x[1]][0]]
    except KeyError as exc:
        rep.error = f"missing data: {exc}"
        return rep.finish()

    # the two horizontal formulas agree (the drop compatibility axiom)
    count, bad = 0, None
    for x, y in hpairs:
        count += 1
        try:
            cat.hcomp_cached(x, y)
        except HorizontalMismatch as exc:
            if bad is None:
                bad = {"pair": [cat.format_label(x[0]), cat.format_label(y[0])], **exc.witness}
    rep.add("horizontal formulas agree", bad is None, count, bad)
    if bad is not None:
        rep.add("horizontal associativity", False, 0, note="skipped: horizontal composition undefined")
        return rep.finish()

    # whiskering respects vertical composition
    count, bad = 0, None
    for F, G in pairs:
        for H in edges:
            if not cat.parallel(G, H):
                continue
            for b in homs[(F, G)]:
                for a in homs[(G, H)]:
                    ab = cat.mul(a, b, F, G, H)
                    for f in edges:
                        for side in ("lower", "upper"):
                            if side == "lower":
                                if cat.one_edges[f][0] != cat.one_edges[F][1]:
                                    continue
                                fn = cat.lower_basis
                            else:
                                if cat.one_edges[f][1] != cat.one_edges[F][0]:
                                    continue
                                fn = cat.upper_basis
                            count += 1
                            lhs = cat._whisker_vec(fn, f, ab, F, H, None, None) if ab else None
                            rhs = cat.vcomp(fn(f, a, G, H), fn(f, b, F, G))
                            if (lhs is None and not rhs.is_zero) or (lhs is not None and lhs != rhs):
                                if bad is None:
                                    bad = {"side": side, "edge": f,
                                           "pair": [cat.format_label(a), cat.format_label(b)]}
    rep.add("whiskering is vertically functorial", bad is None, count, bad)

    # horizontal units
    count, bad = 0, None
    for x in atoms:
        F = x[1]
        s, t = cat.one_edges[F]
        for v, side in ((t, "left"), (s, "right")):
            idv = cat.identities.get(v)
            if idv is None:
                continue
            count += 1
            u = (cat.unit(idv), idv, idv, cat.cell(cat.unit(idv), idv, idv))
            got = cat.hcomp_cached(u, x) if side == "left" else cat.hcomp_cached(x, u)
            if got != x[3] and bad is None:
                bad = {"label": cat.format_label(x[0]), "side": side, "got": got}
    rep.add("horizontal units", bad is None, count, bad)

    count, bad = 0, None
    for F in edges:
        for G in edges:
            if cat.one_edges[G][1] != cat.one_edges[F][0]:
                continue
            count += 1
            got = cat.hcomp(cat.identity(cat.edge(F)), cat.identity(cat.edge(G)))
            want = cat.identity(cat.compose1(cat.edge(F), cat.edge(G)))
            if got != want and bad is None:
                bad = {"pair": [F, G], "got": got}
    rep.add("identity composites", bad is None, count, bad)

    # bilinearity spot checks on parallel atoms
    count, bad = 0, None
    par: dict = {}
    for a in atoms:
        par.setdefault((a[1], a[2]), []).append(a)
    for x, y in _sample(hpairs, 200):
        for x2 in par[(x[1], x[2])][:2]:
            count += 1
            lhs = cat.hcomp(x[3].scaled(2) + x2[3].scaled(Fraction(-1, 3)), y[3])
            rhs = cat.hcomp_cached(x, y).scaled(2) + cat.hcomp_cached(x2, y).scaled(Fraction(-1, 3))
            if lhs != rhs and bad is None:
                bad = {"pair": [cat.format_label(x[0]), cat.format_label(y[0])]}
    rep.add("bilinearity", bad is None, count, bad)

    cat.solve_associator()
    rep.extend(cat.associator_report)

    if interchange:
        count, bad = 0, None
        vpairs = []
        for b in atoms:
            for a in atoms:
                if a[1] == b[2]:
                    vpairs.append((a, b, cat.vcomp(a[3], b[3])))
        for a, b, ab in vpairs:
            for a2, b2, ab2 in vpairs:
                if cat.one_edges[b2[1]][1] != cat.one_edges[b[1]][0]:
                    continue
                count += 1
                lhs = cat.hcomp(ab, ab2)
                rhs = cat.vcomp(cat.hcomp_cached(a, a2), cat.hcomp_cached(b, b2))
                if lhs != rhs and bad is None:
                    bad = {"quadruple": [cat.format_label(t[0]) for t in (a, b, a2, b2)],
                           "lhs": lhs, "rhs": rhs}
        rep.add("interchange law", bad is None, count, bad)
    return rep.finish()
