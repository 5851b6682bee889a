"""Hand transcriptions of the worked examples.

These builders are the single place where the printed tables are typed in.
The JSON fixture files under ``data/`` are generated from them and loaded
through the presentation file format; a test keeps the two in sync.
"""
from __future__ import annotations

from fractions import Fraction

from ..drop import DropTable
from ..gabriel import TwoCatPresentation
from ..pathcat import Cell, PathVector
from ..quiver2 import LicitPresentation, OneCell, TwoQuiver
from ..quotient import AdmissibleIdeal

# ---------------------------------------------------------------------------
# The fiat example M: one 0-cell, 1-edges I (stationary), P, Q.

M_TWO_EDGES = {
    "alpha": ("P", "Q"),
    "beta": ("Q", "P"),
    "betat": ("Q", "P"),
    "gamma": ("P", "I"),
    "eta": ("I", "Q"),
}

# relations as {path: coefficient}; paths in composition order ("a.b" = a after b)
M_RELATIONS = [
    {"beta.alpha": 1},
    {"alpha.beta": 1},
    {"gamma.beta": 1, "gamma.betat": -1},
    {"beta.eta": 1, "betat.eta": -1},
    {"beta.eta.gamma": 1, "betat.alpha": -1},
    {"eta.gamma.beta": 1, "alpha.betat": -1},
    {"gamma.beta.eta": 1},
]

M_NILPOTENCY = 4

# drop table: entry is a list of terms; "i:X" is the identity of the summand X
M_LOWER = {
    "alpha": {"P": ["i:P"], "Q": ["i:Q"]},
    "beta": {"P": ["i:Q"], "Q": ["i:P"]},
    "betat": {"P": ["-alpha", "betat", "eta.gamma"], "Q": ["-alpha", "betat", "eta.gamma"]},
    "gamma": {"P": ["i:P", "betat"], "Q": ["i:Q", "-alpha", "eta.gamma"]},
    "eta": {"P": ["i:P", "-alpha", "eta.gamma"], "Q": ["i:Q", "betat"]},
}
M_UPPER = {
    "alpha": {"P": ["alpha", "beta"], "Q": ["alpha", "beta"]},
    "beta": {"P": ["alpha", "beta"], "Q": ["alpha", "beta"]},
    "betat": {"P": ["i:Q"], "Q": ["i:P"]},
    "gamma": {"P": ["i:P", "beta"], "Q": ["i:Q", "alpha"]},
    "eta": {"P": ["i:P", "alpha"], "Q": ["i:Q", "beta"]},
}

# the weak involution on 2-edges
M_STAR_TWO = {
    "alpha": ["-alpha", "eta.gamma"],
    "beta": ["betat"],
    "betat": ["beta"],
    "gamma": ["eta"],
    "eta": ["gamma"],
}


def _path(s: str) -> tuple:
    return tuple(s.split(".")) if s else ()


def _placed_cell(q: TwoQuiver, src: tuple, tgt: tuple, terms: list[str]) -> Cell:
    """Place each term at (target summand, source summand) read off its ends.

    Only valid when no summand repeats, which holds for every entry of M's table.
    """
    S = OneCell("X", "X", src)
    T = OneCell("X", "X", tgt)
    if len(set(S.components)) != len(S.components) or len(set(T.components)) != len(T.components):
        raise ValueError("term placement needs distinct summands")
    grid = [[{} for _ in S.components] for _ in T.components]
    for term in terms:
        coeff = Fraction(1)
        if term.startswith("-"):
            coeff, term = Fraction(-1), term[1:]
        if term.startswith("i:"):
            s = t = term[2:]
            path = ()
        else:
            path = _path(term)
            s, t = q.two_edges[path[-1]][0], q.two_edges[path[0]][1]
        j, i = T.components.index(t), S.components.index(s)
        grid[j][i][path] = grid[j][i].get(path, Fraction(0)) + coeff
    return Cell(S, T, tuple(tuple(r) for r in grid))


def m_quiver() -> TwoQuiver:
    return TwoQuiver(("X",), {"I": ("X", "X"), "P": ("X", "X"), "Q": ("X", "X")},
                     {"X": "I"}, M_TWO_EDGES)


def m_bundle():
    """``(quiver, licit presentation, ideal, drops)`` for M."""
    q = m_quiver()
    p = LicitPresentation(q, {(a, b): ("P", "Q") for a in "PQ" for b in "PQ"})
    rels = []
    for rel in M_RELATIONS:
        terms = {_path(k): Fraction(v) for k, v in rel.items()}
        first = next(iter(terms))
        rels.append(PathVector(q.two_edges[first[-1]][0], q.two_edges[first[0]][1], terms))
    j = AdmissibleIdeal(tuple(rels), M_NILPOTENCY)
    d = DropTable()
    for a, (K, L) in M_TWO_EDGES.items():
        for F in "PQ":
            d.lower[(F, a)] = _placed_cell(q, p.g(F, K), p.g(F, L), M_LOWER[a][F])
            d.upper[(F, a)] = _placed_cell(q, p.g(K, F), p.g(L, F), M_UPPER[a][F])
    return q, p, j, d


def m_involution() -> dict:
    """The weak involution of M as plain data."""
    star = {}
    for a, terms in M_STAR_TWO.items():
        vec = {}
        for t in terms:
            c = -1 if t.startswith("-") else 1
            vec[_path(t.lstrip("-"))] = Fraction(c)
        star[a] = vec
    return {"vertices": {"X": "X"}, "one_edges": {"I": "I", "P": "Q", "Q": "P"}, "two_edges": star}


def m_adjunction_cells():
    """Unit ``I -> P ⊕ Q`` and counit ``P ⊕ Q -> I`` of the adjunction between P and Q."""
    I = OneCell("X", "X", ("I",))
    PQ = OneCell("X", "X", ("P", "Q"))
    unit = Cell(I, PQ, (({("beta", "eta"): Fraction(1)},), ({("eta",): Fraction(1)},)))
    counit = Cell(PQ, I, (({("gamma",): Fraction(1)}, {("gamma", "beta"): Fraction(-1)}),))
    return unit, counit


# ---------------------------------------------------------------------------
# C_V: projective bimodules over the cyclic Kronecker algebra.

CV_EDGES = ("P1", "P2", "Q1", "Q2")
CV_COMPOSE = {          # row ∘ column
    "P1": {"P1": "P1", "P2": "Q2", "Q1": "P1", "Q2": "Q2"},
    "P2": {"P1": "Q1", "P2": "P2", "Q1": "Q1", "Q2": "P2"},
    "Q1": {"P1": "Q1", "P2": "P2", "Q1": "Q1", "Q2": "P2"},
    "Q2": {"P1": "P1", "P2": "Q2", "Q1": "P1", "Q2": "Q2"},
}


def cv_generators() -> dict[str, tuple[str, str]]:
    gens = {}
    for i in (1, 2):
        for j in (1, 2):
            gens[f"alpha{i}{j}"] = (f"P{i}", f"Q{j}")
            gens[f"beta{i}{j}"] = (f"Q{i}", f"P{j}")
        gens[f"gamma{i}"] = (f"P{i}", "V")
        gens[f"delta{i}"] = (f"Q{i}", "V")
        gens[f"zeta{i}"] = ("V", f"P{i}")
        gens[f"eta{i}"] = ("V", f"Q{i}")
    return gens


def _cv_products() -> dict:
    """Vertical composition ``a ∘ b`` on the generators (zero when absent)."""
    pr = {}
    idx = (1, 2)
    for i in idx:
        for j in idx:
            for k in idx:
                if k != i:
                    pr[(f"alpha{j}{k}", f"beta{i}{j}")] = f"eta{k}.delta{i}"
                    pr[(f"beta{j}{k}", f"alpha{i}{j}")] = f"zeta{k}.gamma{i}"
            pr[(f"gamma{j}", f"beta{i}{j}")] = f"delta{i}"
            pr[(f"beta{i}{j}", f"eta{i}")] = f"zeta{j}"
            pr[(f"eta{j}", f"gamma{i}")] = f"alpha{i}{j}"
            if j != i:
                pr[(f"zeta{j}", f"gamma{i}")] = f"zeta{j}.gamma{i}"
                pr[(f"eta{j}", f"delta{i}")] = f"eta{j}.delta{i}"
    return pr


# columns: (iota_P1)_*, (iota_P1)^*, (iota_Q1)_*, (iota_Q1)^*; "0" is a zero 2-cell
CV_HORIZONTAL = {
    "alpha11": ("id_P1", "alpha11", "id_Q1", "alpha11"),
    "alpha12": ("alpha12", "id_P1", "beta12", "0"),
    "alpha21": ("beta21", "0", "alpha21", "id_Q1"),
    "alpha22": ("0", "beta11", "0", "beta11"),
    "beta11": ("0", "beta11", "0", "beta11"),
    "beta12": ("alpha12", "id_Q1", "beta12", "0"),
    "beta21": ("beta21", "0", "alpha21", "id_P1"),
    "beta22": ("id_Q2", "alpha11", "id_P2", "alpha11"),
    "gamma1": ("id_P1", "id_P1", "id_Q1", "alpha11"),
    "gamma2": ("beta21", "beta11", "alpha21", "id_Q1"),
    "delta1": ("0", "beta11", "0", "0"),
    "delta2": ("beta21", "0", "alpha21", "alpha11"),
    "zeta1": ("0", "0", "0", "beta11"),
    "zeta2": ("alpha12", "alpha11", "beta12", "0"),
    "eta1": ("id_P1", "alpha11", "id_Q1", "id_Q1"),
    "eta2": ("alpha12", "id_P1", "beta12", "beta11"),
}


def _swap(label: str) -> str:
    """The symmetry exchanging the indices 1 and 2."""
    tr = str.maketrans("12", "21")
    return ".".join(part.translate(tr) if part not in ("V", "id_V") else part
                    for part in label.split("."))


def cv_presentation(name: str = "C_V") -> TwoCatPresentation:
    gens = cv_generators()
    edges = {"V": ("*", "*")}
    edges.update({e: ("*", "*") for e in CV_EDGES})
    rewrites = {}
    for a in edges:
        for b in edges:
            if a == "V":
                rewrites[(a, b)] = (b,)
            elif b == "V":
                rewrites[(a, b)] = (a,)
            else:
                rewrites[(a, b)] = (CV_COMPOSE[a][b],)
    products_named = _cv_products()
    where = dict(gens)
    for (a, b), c in products_named.items():
        where.setdefault(c, (where[b][0], where[a][1]))
    units = {e: f"id_{e}" for e in edges}
    for e, u in units.items():
        where[u] = (e, e)
    bases: dict = {}
    for lab, (s, t) in sorted(where.items()):
        bases.setdefault((s, t), []).append(lab)
    products = {k: {v: 1} for k, v in products_named.items()}

    def one(F, lab, src, tgt):
        S, T = OneCell("*", "*", (src,)), OneCell("*", "*", (tgt,))
        if lab == "0":
            return Cell.zero(S, T)
        if where[lab] != (src, tgt):
            raise ValueError(f"table entry {lab} does not run {src} -> {tgt}")
        return Cell(S, T, (({lab: Fraction(1)},),))

    lower, upper = {}, {}
    for x, (K, L) in gens.items():
        for F, (lo, up) in (("P1", (0, 1)), ("Q1", (2, 3))):
            row = CV_HORIZONTAL[x]
            lower[(F, x)] = one(F, row[lo], rewrites[(F, K)][0], rewrites[(F, L)][0])
            upper[(F, x)] = one(F, row[up], rewrites[(K, F)][0], rewrites[(L, F)][0])
            # the same entries with indices 1 and 2 exchanged
            F2, x2 = _swap(F), _swap(x)
            K2, L2 = gens[x2]
            lo_lab = row[lo] if row[lo] == "0" else _swap(row[lo])
            up_lab = row[up] if row[up] == "0" else _swap(row[up])
            lower[(F2, x2)] = one(F2, lo_lab, rewrites[(F2, K2)][0], rewrites[(F2, L2)][0])
            upper[(F2, x2)] = one(F2, up_lab, rewrites[(K2, F2)][0], rewrites[(L2, F2)][0])
    pres = TwoCatPresentation(("*",), edges, {"*": "V"}, rewrites, bases, units, products,
                              lower, upper, generator_labels=list(gens), name=name)
    # whiskering of composite basis elements follows from multiplicativity
    for (a, b), c in products_named.items():
        if c in gens:
            continue
        K, M = where[b]
        L = where[a][1]
        for F in CV_EDGES:
            lo = pres.vcomp(pres.lower_basis(F, a, M, L), pres.lower_basis(F, b, K, M))
            pres.lower_table.setdefault((F, c), lo)
            up = pres.vcomp(pres.upper_basis(F, a, M, L), pres.upper_basis(F, b, K, M))
            pres.upper_table.setdefault((F, c), up)
    return pres
