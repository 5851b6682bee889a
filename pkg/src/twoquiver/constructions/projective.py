"""Projective bimodules over a basic algebra, computed by exact linear algebra.

The algebra is ``A = K Γ / K`` for a finite quiver ``Γ``.  A path ``p: a -> b``
is an element of ``e_b A e_a``, so ``q ∘ p`` (``p`` first) is the product ``q p``.
The indecomposable 1-cells are ``A`` itself (the identity, named ``I``) and
``F_ab = A e_a ⊗ e_b A``.  Every bimodule here is generated by one element, and
a homomorphism is stored as the image of that generator.

``F_ab ⊗_A F_cd`` splits as one copy of ``F_ad`` for each basis path ``m`` of
``e_b A e_c``; the copy for ``m`` is generated by ``(e_a ⊗ m) ⊗ (e_c ⊗ e_d)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..exactlin import Subspace, format_fraction, nullspace, rref, solve
from ..gabriel import TwoCatPresentation, gabriel_quiver
from ..pathcat import Cell, add_vectors, path_key, scale_vector
from ..quiver2 import OneCell, QuiverError

__all__ = [
    "AlgebraPresentation",
    "a2_algebra",
    "cyclic_kronecker_algebra",
    "format_relation",
    "projective_semicategory",
    "projective_two_category",
    "semicategory_lifts",
]

Word = tuple  # (source vertex, target vertex, arrows in application order)


def _word_key(w: Word):
    return (len(w[2]), w[0], w[1], w[2])


@dataclass
class AlgebraPresentation:
    """A bound 1-quiver ``Γ`` with relations; ``nilpotency_degree`` may be
    omitted for acyclic quivers (all paths are then finite)."""

    vertices: Sequence[str]
    arrows: Mapping[str, tuple]
    relations: Sequence[Mapping] = ()
    nilpotency_degree: int | None = None
    _spaces: dict = field(default_factory=dict, init=False, repr=False)
    _basis: dict = field(default_factory=dict, init=False, repr=False)
    _mul: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        self.arrows = dict(self.arrows)
        for x, (s, t) in self.arrows.items():
            if s not in self.vertices or t not in self.vertices:
                raise QuiverError(f"arrow {x} has an unknown endpoint")
        self._check_connected()
        n = self.nilpotency_degree
        if n is None:
            n = self._longest_path() + 1
        self.N = max(n, 1)
        self._close()

    # ----- structure ---------------------------------------------------------
    def _check_connected(self):
        if not self.vertices:
            raise QuiverError("the algebra has no vertices")
        adj = {v: set() for v in self.vertices}
        for s, t in self.arrows.values():
            adj[s].add(t)
            adj[t].add(s)
        seen, todo = {self.vertices[0]}, [self.vertices[0]]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(self.vertices):
            raise QuiverError("the quiver of the algebra is disconnected")

    def _longest_path(self) -> int:
        # longest path in an acyclic quiver, or an error for a cycle
        state: dict = {}
        best: dict = {}

        def visit(v):
            if state.get(v) == 1:
                raise QuiverError("the quiver has an oriented cycle: give a nilpotency degree")
            if state.get(v) == 2:
                return best[v]
            state[v] = 1
            best[v] = max([visit(t) + 1 for s, t in self.arrows.values() if s == v], default=0)
            state[v] = 2
            return best[v]

        return max(visit(v) for v in self.vertices)

    def words(self, max_len: int) -> list[Word]:
        out = [(v, v, ()) for v in self.vertices]
        layer = list(out)
        for _ in range(max_len):
            nxt = []
            for s, t, p in layer:
                for x in sorted(self.arrows):
                    a, b = self.arrows[x]
                    if a == t:
                        nxt.append((s, b, p + (x,)))
            out.extend(nxt)
            layer = nxt
        return out

    def _close(self):
        N = self.N
        for a in self.vertices:
            for b in self.vertices:
                self._spaces[(a, b)] = Subspace(order=_word_key)
        queue = []

        def push(vec):
            vec = {w: c for w, c in vec.items() if len(w[2]) <= N and c}
            if not vec:
                return
            w0 = next(iter(vec))
            sp = self._spaces[(w0[0], w0[1])]
            r = sp.reduce(vec)
            if r and sp.add(r):
                queue.append(r)

        for rel in self.relations:
            vec = {}
            for path, c in rel.items():
                w = self._word_of(tuple(path))
                vec[w] = vec.get(w, Fraction(0)) + Fraction(c)
            ends = {(w[0], w[1]) for w in vec}
            if len(ends) != 1:
                raise QuiverError("a relation mixes paths with different endpoints")
            if any(len(w[2]) < 2 for w in vec if vec[w]):
                raise QuiverError("relations must live in path degree at least 2")
            push(vec)
        while queue:
            v = queue.pop()
            s, t = next(iter(v))[:2]
            for x, (a, b) in sorted(self.arrows.items()):
                if a == t:
                    push({(s, b, w[2] + (x,)): c for w, c in v.items()})
                if b == s:
                    push({(a, t, (x,) + w[2]): c for w, c in v.items()})
        for w in self.words(N):
            if len(w[2]) == N and self._spaces[(w[0], w[1])].reduce({w: Fraction(1)}):
                raise QuiverError(f"paths of length {N} are not all in the ideal; the algebra "
                                  "is infinite-dimensional or the nilpotency degree is too small")
        for a, b in self._spaces:
            self._basis[(a, b)] = []
        piv = {k: set(sp.pivots) for k, sp in self._spaces.items()}
        for w in self.words(N - 1):
            if w not in piv[(w[0], w[1])]:
                self._basis[(w[0], w[1])].append(w)

    def _word_of(self, path: tuple) -> Word:
        if not path:
            raise QuiverError("use idempotent words for stationary paths")
        s = self.arrows[path[0]][0]
        t = s
        for x in path:
            a, b = self.arrows[x]
            if a != t:
                raise QuiverError(f"path {path} is not composable")
            t = b
        return (s, t, tuple(path))

    # ----- arithmetic --------------------------------------------------------
    def idempotent(self, v: str) -> Word:
        return (v, v, ())

    def basis(self, a: str, b: str) -> list[Word]:
        """Basis of ``e_b A e_a``: normal paths ``a -> b``."""
        return self._basis[(a, b)]

    @property
    def dim(self) -> int:
        return sum(len(v) for v in self._basis.values())

    def all_basis(self) -> list[Word]:
        return sorted((w for v in self._basis.values() for w in v), key=_word_key)

    def reduce(self, vec: Mapping) -> dict:
        out: dict = {}
        for w, c in vec.items():
            if c and len(w[2]) < self.N:
                out[w] = out.get(w, Fraction(0)) + c
        groups: dict = {}
        for w, c in out.items():
            groups.setdefault((w[0], w[1]), {})[w] = c
        res = {}
        for k, g in groups.items():
            res.update(self._spaces[k].reduce(g))
        return {w: c for w, c in res.items() if c}

    def mul(self, p: Word, q: Word) -> dict:
        """``p ∘ q`` with ``q`` applied first."""
        key = (p, q)
        hit = self._mul.get(key)
        if hit is None:
            if q[1] != p[0]:
                hit = {}
            else:
                hit = self.reduce({(q[0], p[1], q[2] + p[2]): Fraction(1)})
            self._mul[key] = hit
        return hit

    def mul_vec(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for p, c in u.items():
            for q, d in v.items():
                for w, e in self.mul(p, q).items():
                    out[w] = out.get(w, Fraction(0)) + c * d * e
        return {w: c for w, c in out.items() if c}

    def word_name(self, w: Word) -> str:
        return w[0] if not w[2] else "∘".join(reversed(w[2]))


def a2_algebra() -> AlgebraPresentation:
    """Path algebra of ``e --x--> f``."""
    return AlgebraPresentation(("e", "f"), {"x": ("e", "f")})


def cyclic_kronecker_algebra() -> AlgebraPresentation:
    """``e --x--> f --y--> e`` with ``x y = y x = 0``."""
    return AlgebraPresentation(("e", "f"), {"x": ("e", "f"), "y": ("f", "e")},
                               [{("x", "y"): 1}, {("y", "x"): 1}], nilpotency_degree=2)


# ---------------------------------------------------------------------------
# bimodules

IDENTITY = "I"


class _Bimodules:
    """Indecomposable bimodules ``"I"`` (= A) and ``("F", a, b)`` with element arithmetic."""

    def __init__(self, alg: AlgebraPresentation):
        self.alg = alg

    # basis elements: words for A, pairs (u, v) for F_ab
    def basis(self, X) -> list:
        alg = self.alg
        if X == IDENTITY:
            return alg.all_basis()
        _, a, b = X
        us = [w for w in alg.all_basis() if w[0] == a]
        vs = [w for w in alg.all_basis() if w[1] == b]
        return [(u, v) for u in us for v in vs]

    def generator(self, X) -> dict:
        if X == IDENTITY:
            return {self.alg.idempotent(v): Fraction(1) for v in self.alg.vertices}
        _, a, b = X
        return {(self.alg.idempotent(a), self.alg.idempotent(b)): Fraction(1)}

    def left(self, X, w: Word, elem: Mapping) -> dict:
        """``w · elem``."""
        alg = self.alg
        out: dict = {}
        for m, c in elem.items():
            if X == IDENTITY:
                for r, d in alg.mul(w, m).items():
                    out[r] = out.get(r, Fraction(0)) + c * d
            else:
                u, v = m
                for r, d in alg.mul(w, u).items():
                    out[(r, v)] = out.get((r, v), Fraction(0)) + c * d
        return {k: c for k, c in out.items() if c}

    def right(self, X, elem: Mapping, w: Word) -> dict:
        """``elem · w``."""
        alg = self.alg
        out: dict = {}
        for m, c in elem.items():
            if X == IDENTITY:
                for r, d in alg.mul(m, w).items():
                    out[r] = out.get(r, Fraction(0)) + c * d
            else:
                u, v = m
                for r, d in alg.mul(v, w).items():
                    out[(u, r)] = out.get((u, r), Fraction(0)) + c * d
        return {k: c for k, c in out.items() if c}

    def apply(self, X, Y, image: Mapping, elem: Mapping) -> dict:
        """Value on ``elem ∈ X`` of the homomorphism ``X -> Y`` sending the generator to ``image``."""
        out: dict = {}
        for m, c in elem.items():
            if X == IDENTITY:
                val = self.left(Y, m, image)
            else:
                u, v = m
                val = self.right(Y, self.left(Y, u, image), v)
            out = add_vectors(out, scale_vector(val, c))
        return out

    # ----- hom spaces ----------------------------------------------------------
    def hom_images(self, X, Y) -> list[dict]:
        """Generator images of a basis of ``Hom(X, Y)``."""
        alg = self.alg
        if X != IDENTITY:
            _, a, b = X
            e_a, e_b = alg.idempotent(a), alg.idempotent(b)
            out = []
            for m in self.basis(Y):
                one = {m: Fraction(1)}
                if self.right(Y, self.left(Y, e_a, one), e_b) == one:
                    out.append(one)
            return out
        # central elements of Y
        basis = self.basis(Y)
        pos = {m: n for n, m in enumerate(basis)}
        rows = []
        acting = [alg.idempotent(v) for v in alg.vertices]
        acting += [alg._word_of((x,)) for x in sorted(alg.arrows)]
        for w in acting:
            blocks = [[Fraction(0)] * len(basis) for _ in basis]
            for n, m in enumerate(basis):
                one = {m: Fraction(1)}
                diff = add_vectors(self.left(Y, w, one), scale_vector(self.right(Y, one, w), -1))
                for k, c in diff.items():
                    blocks[pos[k]][n] += c
            rows.extend(blocks)
        null = nullspace(rows) if basis else []
        if null:
            m, _ = rref(null)
            null = [r for r in m.to_rows() if any(r)]
        return [{basis[n]: c for n, c in enumerate(v) if c} for v in null]

    def coords(self, X, Y, images: list[dict], elem: Mapping) -> list[Fraction]:
        if not elem:
            return [Fraction(0)] * len(images)
        keys = sorted({k for im in images for k in im} | set(elem), key=repr)
        mat = [[im.get(k, Fraction(0)) for im in images] for k in keys]
        x = solve(mat, [elem.get(k, Fraction(0)) for k in keys]) if images else None
        if x is None:
            raise ArithmeticError(f"element is not the image of a homomorphism {X} -> {Y}")
        return x

    # ----- tensor products -------------------------------------------------------
    def decompose(self, X, Y):
        """Summands of ``X ⊗_A Y`` with their generators as sums of pure tensors,
        and the map sending a pure tensor to ``{(summand, basis element): coeff}``."""
        alg = self.alg
        if X == IDENTITY and Y == IDENTITY:
            gen = {(p, q): Fraction(1) for p in self.generator(X) for q in self.generator(Y)}

            def embed(x, y):
                return {(0, w): c for w, c in alg.mul(x, y).items()}
            return [IDENTITY], [gen], embed
        if X == IDENTITY:
            gen = {(p, q): c for p in self.generator(X) for q, c in self.generator(Y).items()}

            def embed(x, y):
                return {(0, m): c for m, c in self.left(Y, x, {y: Fraction(1)}).items()}
            return [Y], [gen], embed
        if Y == IDENTITY:
            gen = {(p, q): c for p, c in self.generator(X).items() for q in self.generator(Y)}

            def embed(x, y):
                return {(0, m): c for m, c in self.right(X, {x: Fraction(1)}, y).items()}
            return [X], [gen], embed
        _, a, b = X
        _, c, d = Y
        mids = alg.basis(c, b)          # e_b A e_c
        idx = {m: k for k, m in enumerate(mids)}
        summands = [("F", a, d)] * len(mids)
        gens = [{((alg.idempotent(a), m), (alg.idempotent(c), alg.idempotent(d))): Fraction(1)}
                for m in mids]

        def embed(x, y):
            (u, v), (u2, v2) = x, y
            return {(idx[m], (u, v2)): coeff for m, coeff in alg.mul(v, u2).items()}
        return summands, gens, embed


def _name(X) -> str:
    return IDENTITY if X == IDENTITY else f"F_{X[1]}{X[2]}"


def _fmt_elem(alg: AlgebraPresentation, X, elem: Mapping) -> str:
    def one(m):
        if X == IDENTITY:
            return alg.word_name(m)
        return f"{alg.word_name(m[0])}⊗{alg.word_name(m[1])}"
    parts = []
    for m in sorted(elem, key=lambda m: one(m)):
        c = elem[m]
        s = one(m)
        if c == 1:
            parts.append(s)
        elif c == -1:
            parts.append("-" + s)
        else:
            parts.append(f"{format_fraction(c)}·{s}")
    return "+".join(parts).replace("+-", "-")


class ProjectiveCategory(TwoCatPresentation):
    """A :class:`TwoCatPresentation` that remembers its bimodule data."""

    bimodules: _Bimodules
    images: dict
    objects: dict


def _build(alg: AlgebraPresentation, with_identity: bool, name: str) -> ProjectiveCategory:
    B = _Bimodules(alg)
    objs = [("F", a, b) for a in alg.vertices for b in alg.vertices]
    if with_identity:
        objs = [IDENTITY] + objs
    names = {X: _name(X) for X in objs}
    by_name = {v: k for k, v in names.items()}
    one_edges = {names[X]: ("*", "*") for X in objs}
    identities = {"*": IDENTITY} if with_identity else {}

    decomp = {}
    rewrites = {}
    for X in objs:
        for Y in objs:
            summands, gens, embed = B.decompose(X, Y)
            order = sorted(range(len(summands)), key=lambda k: names[summands[k]])
            pos = {k: n for n, k in enumerate(order)}     # stable: equal names keep their order
            decomp[(X, Y)] = (summands, gens, embed, pos)
            rewrites[(names[X], names[Y])] = tuple(names[summands[k]] for k in order)

    images: dict = {}
    bases: dict = {}
    units: dict = {}
    label_of: dict = {}
    for X in objs:
        for Y in objs:
            ims = B.hom_images(X, Y)
            labs = []
            for im in ims:
                local = _fmt_elem(alg, Y, im)
                if X == Y and im == B.generator(X):
                    lab = f"ι_{names[X]}"
                    units[names[X]] = lab
                else:
                    lab = f"{names[X]}→{names[Y]}:{local}"
                labs.append(lab)
                label_of[lab] = (X, Y, im)
            images[(X, Y)] = ims
            bases[(names[X], names[Y])] = labs
    for X in objs:
        if names[X] not in units:
            raise ArithmeticError(f"identity of {names[X]} is not a basis element")

    def vec_of(X, Y, elem) -> dict:
        x = B.coords(X, Y, images[(X, Y)], elem)
        labs = bases[(names[X], names[Y])]
        return {labs[n]: c for n, c in enumerate(x) if c}

    products = {}
    for X in objs:
        for Y in objs:
            for Z in objs:
                for lb in bases[(names[X], names[Y])]:
                    for la in bases[(names[Y], names[Z])]:
                        ib, ia = label_of[lb][2], label_of[la][2]
                        val = B.apply(Y, Z, ia, ib)
                        v = vec_of(X, Z, val)
                        if v:
                            products[(la, lb)] = v

    def whisker(f, K, L, image, lower: bool) -> Cell:
        if lower:
            sK, gK, _, posK = decomp[(f, K)]
            sL, _, embL, posL = decomp[(f, L)]
        else:
            sK, gK, _, posK = decomp[(K, f)]
            sL, _, embL, posL = decomp[(L, f)]
        src = OneCell("*", "*", tuple(sorted(names[s] for s in sK)))
        tgt = OneCell("*", "*", tuple(sorted(names[s] for s in sL)))
        grid = [[{} for _ in sK] for _ in sL]
        for i, gen in enumerate(gK):
            acc: dict = {}
            for (xb, yb), c in gen.items():
                if lower:
                    for y2, d in B.apply(K, L, image, {yb: Fraction(1)}).items():
                        acc = add_vectors(acc, scale_vector(embL(xb, y2), c * d))
                else:
                    for x2, d in B.apply(K, L, image, {xb: Fraction(1)}).items():
                        acc = add_vectors(acc, scale_vector(embL(x2, yb), c * d))
            per: dict = {}
            for (k, m), c in acc.items():
                per.setdefault(k, {})[m] = c
            for k, elem in per.items():
                grid[posL[k]][posK[i]] = vec_of(sK[i], sL[k], elem)
        return Cell(src, tgt, tuple(tuple(r) for r in grid))

    lower, upper = {}, {}
    for f in objs:
        if f == IDENTITY:
            continue
        for lab, (K, L, im) in label_of.items():
            if K == L and im == B.generator(K):
                continue
            lower[(names[f], lab)] = whisker(f, K, L, im, True)
            upper[(names[f], lab)] = whisker(f, K, L, im, False)

    cat = ProjectiveCategory(("*",), one_edges, identities, rewrites, bases, units, products,
                             lower, upper, name=name)
    cat.bimodules = B
    cat.images = {lab: im for lab, (_, _, im) in label_of.items()}
    cat.objects = by_name
    cat.algebra = alg
    return cat


def projective_two_category(alg: AlgebraPresentation, name: str = "C_A",
                            certify: bool = True) -> ProjectiveCategory:
    """Identity bimodule ``A`` plus all ``A e ⊗ f A``, with every structure map
    computed on generators.  With ``certify`` the full axiom suite must pass."""
    cat = _build(alg, True, name)
    if certify:
        _certify(cat)
    return cat


def projective_bimodule_semicategory(alg: AlgebraPresentation, name: str = "S_A",
                                     certify: bool = True) -> ProjectiveCategory:
    """As :func:`projective_two_category` without the identity 1-cell."""
    cat = _build(alg, False, name)
    if certify:
        _certify(cat)
    return cat


def _certify(cat) -> None:
    from ..twocat import verify_two_category

    rep = verify_two_category(cat)
    cat.certificate = rep
    if not rep.ok:
        raise ArithmeticError(f"{cat.name} fails the 2-category axioms: "
                              f"{[c.name for c in rep.failures()]}")


def semicategory_lifts(cat: ProjectiveCategory) -> dict:
    """2-edges ``α_{g,x}: F_ge -> F_gf`` (generator to ``e_g ⊗ x``) and
    ``α_{x,g}: F_fg -> F_eg`` (generator to ``x ⊗ e_g``) for arrows ``x: e -> f``."""
    alg = cat.algebra
    lifts = {}
    for x, (e, f) in sorted(alg.arrows.items()):
        xw = alg._word_of((x,))
        for g in alg.vertices:
            eg = alg.idempotent(g)
            for nm, K, L, im in ((f"α_{{{g},{x}}}", ("F", g, e), ("F", g, f), {(eg, xw): 1}),
                                 (f"α_{{{x},{g}}}", ("F", f, g), ("F", e, g), {(xw, eg): 1})):
                labs = cat.bases[(_name(K), _name(L))]
                vec = cat.bimodules.coords(K, L, [cat.images[lab] for lab in labs],
                                           {k: Fraction(v) for k, v in im.items()})
                lifts[nm] = (_name(K), _name(L), {labs[n]: c for n, c in enumerate(vec) if c})
    return lifts


def projective_semicategory(alg: AlgebraPresentation, name: str = "S_A"):
    """``(quiver, presentation, ideal, drops)`` of the semicategory of projective bimodules,
    with 2-edges named after the arrows they come from."""
    cat = projective_bimodule_semicategory(alg, name)
    res = gabriel_quiver(cat, semicategory_lifts(cat))
    return res.quiver, res.presentation, res.ideal, res.drops


def format_relation(vec: Mapping) -> str:
    """``p = q`` for a two-term relation ``c p - c q``, else ``Σ c p = 0``.

    Paths are tuples in composition order and print as ``a∘b``.
    """
    items = sorted(((p, c) for p, c in vec.items() if c), key=lambda t: path_key(t[0]))
    if len(items) == 2 and items[0][1] == -items[1][1]:
        return f"{'∘'.join(items[0][0])} = {'∘'.join(items[1][0])}"
    parts = []
    for p, c in items:
        s = "∘".join(p)
        parts.append(s if c == 1 else f"-{s}" if c == -1 else f"{format_fraction(c)}·{s}")
    return " + ".join(parts).replace("+ -", "- ") + " = 0"
