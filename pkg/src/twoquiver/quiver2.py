"""2-quivers, bound 2-quivers and the arithmetic of 1-cells.

Composition convention throughout the package: ``f ∘ g`` means "g first, then f",
so ``compose_one_cells(p, f, g)`` needs ``tgt(g) == src(f)``.  1-cells are formal
direct sums of 1-edges stored as sorted tuples of edge ids; the empty tuple is the
zero 1-cell.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

__all__ = [
    "LicitError",
    "LicitFormError",
    "LicitPresentation",
    "LicitReport",
    "OneCell",
    "QuiverError",
    "TwoQuiver",
    "check_licit",
    "compose_one_cells",
    "compose_with_provenance",
    "stable_sort_positions",
    "two_level_acyclic",
]


class QuiverError(ValueError):
    pass


class LicitFormError(QuiverError):
    """A rewrite target is not a formal sum of 1-edges."""


class LicitError(QuiverError):
    def __init__(self, kind: str, pair, message: str):
        super().__init__(message)
        self.kind = kind
        self.pair = pair


@dataclass(frozen=True)
class TwoQuiver:
    vertices: tuple
    one_edges: Mapping[str, tuple]          # id -> (src vertex, tgt vertex)
    stationary: Mapping[str, str]           # vertex -> loop id (may be partial)
    two_edges: Mapping[str, tuple]          # id -> (src 1-edge, tgt 1-edge)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "one_edges", {k: tuple(v) for k, v in self.one_edges.items()})
        object.__setattr__(self, "stationary", dict(self.stationary))
        object.__setattr__(self, "two_edges", {k: tuple(v) for k, v in self.two_edges.items()})
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise QuiverError("duplicate vertex")
        for e, (s, t) in self.one_edges.items():
            if s not in vs or t not in vs:
                raise QuiverError(f"1-edge {e} has unknown endpoint")
        if set(self.one_edges) & set(self.two_edges):
            raise QuiverError("1-edge and 2-edge ids overlap")
        for x, e in self.stationary.items():
            if x not in vs:
                raise QuiverError(f"stationary edge declared at unknown vertex {x}")
            if e not in self.one_edges:
                raise QuiverError(f"stationary edge {e} is not a 1-edge")
            if self.one_edges[e] != (x, x):
                raise QuiverError(f"stationary edge {e} is not a loop at {x}")
        if len(set(self.stationary.values())) != len(self.stationary):
            raise QuiverError("one 1-edge is stationary at two vertices")
        for a, (f, g) in self.two_edges.items():
            if f not in self.one_edges or g not in self.one_edges:
                raise QuiverError(f"2-edge {a} has unknown endpoint")
            if self.one_edges[f] != self.one_edges[g]:
                raise QuiverError(f"2-edge {a} joins non-parallel 1-edges {f}, {g}")

    def src(self, edge: str) -> str:
        return self.one_edges[edge][0]

    def tgt(self, edge: str) -> str:
        return self.one_edges[edge][1]

    def is_stationary(self, edge: str) -> bool:
        return edge in self.stationary.values()

    def edges_between(self, x: str, y: str) -> list[str]:
        return sorted(e for e, st in self.one_edges.items() if st == (x, y))

    def two_edges_between(self, f: str, g: str) -> list[str]:
        return sorted(a for a, st in self.two_edges.items() if st == (f, g))

    def out_two_edges(self, f: str) -> list[str]:
        return sorted(a for a, (s, _) in self.two_edges.items() if s == f)

    def in_two_edges(self, g: str) -> list[str]:
        return sorted(a for a, (_, t) in self.two_edges.items() if t == g)

    def with_two_edges(self, two_edges: Mapping[str, tuple]) -> "TwoQuiver":
        return TwoQuiver(self.vertices, self.one_edges, self.stationary, two_edges)


@dataclass(frozen=True)
class OneCell:
    src: str
    tgt: str
    components: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    @classmethod
    def of(cls, quiver: TwoQuiver, *edges: str, src: str | None = None, tgt: str | None = None):
        if edges:
            src, tgt = quiver.one_edges[edges[0]]
        if src is None or tgt is None:
            raise QuiverError("the zero 1-cell needs explicit endpoints")
        for e in edges:
            if quiver.one_edges[e] != (src, tgt):
                raise QuiverError(f"component {e} does not run {src} -> {tgt}")
        return cls(src, tgt, tuple(edges))

    @property
    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "OneCell") -> "OneCell":
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise QuiverError("direct sum of non-parallel 1-cells")
        return OneCell(self.src, self.tgt, self.components + other.components)

    def __str__(self) -> str:
        return " ⊕ ".join(self.components) if self.components else f"0[{self.src}->{self.tgt}]"


def stable_sort_positions(labels: Sequence[str]) -> list[int]:
    """``pos[i]`` is where item ``i`` lands after a stable sort of ``labels``."""
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    pos = [0] * len(labels)
    for new, old in enumerate(order):
        pos[old] = new
    return pos


def compose_with_provenance(rewrites: Mapping[tuple, tuple], left: Sequence[str],
                            right: Sequence[str]) -> list[tuple[str, tuple]]:
    """Unsorted components of ``left ∘ right`` tagged with ``(i, j, k)``.

    ``i`` indexes ``left``, ``j`` indexes ``right`` and ``k`` the position inside
    ``g(left[i], right[j])``.  The left factor is the outer loop; every block
    layout in the package relies on this order followed by a stable sort.
    """
    out = []
    for i, p in enumerate(left):
        for j, q in enumerate(right):
            for k, h in enumerate(rewrites[(p, q)]):
                out.append((h, (i, j, k)))
    return out


@dataclass
class LicitReport:
    ok: bool
    triples_checked: int
    failures: list = field(default_factory=list)   # (p, q, r, left side, right side)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "triples_checked": self.triples_checked,
            "failures": [
                {"triple": [p, q, r], "(pq)r": list(a), "p(qr)": list(b)}
                for p, q, r, a, b in self.failures
            ],
        }


class LicitPresentation:
    """A 2-quiver bound by rewrites ``p q -> g(p, q)`` on composable 1-edges.

    Composition is refused until :func:`check_licit` has certified the rewrites.
    """

    def __init__(self, quiver: TwoQuiver, rewrites: Mapping[tuple, Iterable[str]],
                 fill_units: bool = True):
        self.quiver = quiver
        rw = {}
        for (p, q), target in rewrites.items():
            if isinstance(target, str) or not all(isinstance(h, str) for h in target):
                raise LicitFormError(f"rewrite target for {p}{q} is not a sum of edges: {target!r}")
            rw[(p, q)] = tuple(sorted(target))
        if fill_units:
            for x, ix in quiver.stationary.items():
                for f, (s, t) in quiver.one_edges.items():
                    if t == x:
                        rw.setdefault((ix, f), (f,))
                    if s == x:
                        rw.setdefault((f, ix), (f,))
        self.rewrites = rw
        self.certified = False

    def composable_pairs(self) -> list[tuple[str, str]]:
        q = self.quiver
        return [(p, r) for p in sorted(q.one_edges) for r in sorted(q.one_edges)
                if q.tgt(r) == q.src(p)]

    def g(self, p: str, q: str) -> tuple:
        return self.rewrites[(p, q)]

    def compose_lists(self, left: Sequence[str], right: Sequence[str]) -> tuple:
        return tuple(sorted(h for h, _ in compose_with_provenance(self.rewrites, left, right)))

    def __repr__(self) -> str:
        return f"LicitPresentation({len(self.rewrites)} rewrites, certified={self.certified})"


def check_licit(p: LicitPresentation) -> LicitReport:
    """Certify a rewrite system; structural defects raise :class:`LicitError`."""
    q = p.quiver
    for (a, b), target in p.rewrites.items():
        if a not in q.one_edges or b not in q.one_edges:
            raise LicitError("unknown-edge", (a, b), f"rewrite {a}{b} mentions an unknown 1-edge")
        if q.tgt(b) != q.src(a):
            raise LicitError("not-composable", (a, b), f"rewrite given for non-composable pair {a}{b}")
        for h in target:
            if h not in q.one_edges:
                raise LicitFormError(f"rewrite target {h!r} of {a}{b} is not a 1-edge")
            if q.one_edges[h] != (q.src(b), q.tgt(a)):
                raise LicitError("endpoint", (a, b),
                                 f"rewrite {a}{b} -> {h}: {h} does not run {q.src(b)} -> {q.tgt(a)}")
    for a, b in p.composable_pairs():
        if (a, b) not in p.rewrites:
            raise LicitError("missing", (a, b), f"missing rewrite for composable pair ({a}, {b})")
    for x, ix in q.stationary.items():
        for f, (s, t) in q.one_edges.items():
            if t == x and p.rewrites[(ix, f)] != (f,):
                raise LicitError("unit", (ix, f), f"unit relation {ix}{f} = {f} missing")
            if s == x and p.rewrites[(f, ix)] != (f,):
                raise LicitError("unit", (f, ix), f"unit relation {f}{ix} = {f} missing")

    failures = []
    count = 0
    edges = sorted(q.one_edges)
    for a, b, c in product(edges, repeat=3):
        if q.tgt(b) != q.src(a) or q.tgt(c) != q.src(b):
            continue
        count += 1
        left = tuple(sorted(h for s in p.g(a, b) for h in p.g(s, c)))
        right = tuple(sorted(h for t in p.g(b, c) for h in p.g(a, t)))
        if left != right:
            failures.append((a, b, c, left, right))
    p.certified = not failures
    return LicitReport(not failures, count, failures)


def compose_one_cells(p: LicitPresentation, f: OneCell, g: OneCell) -> OneCell:
    """Normal form of ``f ∘ g`` (g first)."""
    if not p.certified:
        raise QuiverError("presentation has not been certified licit")
    if g.tgt != f.src:
        raise QuiverError(f"cannot compose: tgt(g)={g.tgt} but src(f)={f.src}")
    return OneCell(g.src, f.tgt, p.compose_lists(f.components, g.components))


def two_level_acyclic(q: TwoQuiver) -> tuple[bool, list[str]]:
    """Whether the graph (1-edges, 2-edges) has no directed cycle.

    On failure the witness is a list of 2-edge ids in application order,
    rotated to start at its smallest id.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {e: WHITE for e in q.one_edges}
    out = {e: q.out_two_edges(e) for e in q.one_edges}
    stack_edges: list[str] = []
    stack_nodes: list[str] = []

    def visit(node):
        colour[node] = GREY
        stack_nodes.append(node)
        for a in out[node]:
            nxt = q.two_edges[a][1]
            stack_edges.append(a)
            if colour[nxt] == GREY:
                start = stack_nodes.index(nxt)
                return stack_edges[start:]
            if colour[nxt] == WHITE:
                found = visit(nxt)
                if found:
                    return found
            stack_edges.pop()
        stack_nodes.pop()
        colour[node] = BLACK
        return None

    for e in sorted(q.one_edges):
        if colour[e] == WHITE:
            cyc = visit(e)
            if cyc:
                k = cyc.index(min(cyc))
                return False, cyc[k:] + cyc[:k]
    return True, []
