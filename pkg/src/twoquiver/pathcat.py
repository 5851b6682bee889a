"""The path 1½-category of a bound 2-quiver.

A 2-path is a tuple of 2-edge ids in composition order: ``("beta", "alpha")``
is ``beta ∘ alpha``, alpha applied first.  The empty tuple is the stationary
path; which 1-edge it sits on is always known from context.  Linear
combinations of 2-paths are plain ``dict``s ``path -> Fraction``.

2-cells are :class:`Cell` objects: a matrix of such dicts indexed by
``(target component, source component)``.  The same class carries the 2-cells of
every category in the package; only the multiplication of basis labels changes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .quiver2 import OneCell, QuiverError, TwoQuiver

__all__ = [
    "Cell",
    "PathVector",
    "TwoPath",
    "add_vectors",
    "concat_mul",
    "degree_split",
    "enumerate_paths",
    "identity_cell",
    "in_edge_ideal",
    "path_key",
    "path_source",
    "path_target",
    "scale_vector",
    "vertical_compose",
]

TwoPath = tuple


def path_key(path: Sequence[str]):
    """Length-lexicographic order on paths."""
    return (len(path), tuple(path))


def path_source(q: TwoQuiver, path: Sequence[str], default: str | None = None) -> str:
    if not path:
        if default is None:
            raise QuiverError("the stationary path has no intrinsic source")
        return default
    return q.two_edges[path[-1]][0]


def path_target(q: TwoQuiver, path: Sequence[str], default: str | None = None) -> str:
    if not path:
        if default is None:
            raise QuiverError("the stationary path has no intrinsic target")
        return default
    return q.two_edges[path[0]][1]


def check_path(q: TwoQuiver, path: Sequence[str], src: str, tgt: str) -> None:
    if not path:
        if src != tgt:
            raise QuiverError(f"stationary path cannot run {src} -> {tgt}")
        return
    cur = src
    for a in reversed(path):
        if a not in q.two_edges:
            raise QuiverError(f"unknown 2-edge {a!r}")
        s, t = q.two_edges[a]
        if s != cur:
            raise QuiverError(f"2-path {'∘'.join(path)} is not composable at {a}")
        cur = t
    if cur != tgt:
        raise QuiverError(f"2-path {'∘'.join(path)} ends at {cur}, expected {tgt}")


def add_vectors(*vs: Mapping) -> dict:
    out: dict = {}
    for v in vs:
        for k, c in v.items():
            nv = out.get(k, Fraction(0)) + c
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def scale_vector(v: Mapping, c) -> dict:
    c = Fraction(c)
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def concat_mul(a: tuple, b: tuple, *_ctx) -> dict:
    """Free multiplication of paths: ``a ∘ b`` is concatenation."""
    return {a + b: Fraction(1)}


@dataclass(frozen=True)
class PathVector:
    """A linear combination of 2-paths between two fixed 1-edges."""

    src: str
    tgt: str
    terms: Mapping

    def __post_init__(self):
        object.__setattr__(self, "terms",
                           {tuple(p): Fraction(c) for p, c in self.terms.items() if Fraction(c)})

    @classmethod
    def path(cls, q: TwoQuiver, *edges: str, src: str | None = None, coeff=1) -> "PathVector":
        if edges:
            s, t = path_source(q, edges), path_target(q, edges)
        else:
            s = t = src
        check_path(q, edges, s, t)
        return cls(s, t, {tuple(edges): coeff})

    def validate(self, q: TwoQuiver) -> None:
        if q.one_edges.get(self.src) != q.one_edges.get(self.tgt):
            raise QuiverError(f"path vector joins non-parallel 1-edges {self.src}, {self.tgt}")
        for p in self.terms:
            check_path(q, p, self.src, self.tgt)

    def __add__(self, other: "PathVector") -> "PathVector":
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise QuiverError("adding path vectors with different endpoints")
        return PathVector(self.src, self.tgt, add_vectors(self.terms, other.terms))

    def __sub__(self, other: "PathVector") -> "PathVector":
        return self + other.scaled(-1)

    def scaled(self, c) -> "PathVector":
        return PathVector(self.src, self.tgt, scale_vector(self.terms, c))

    def compose(self, other: "PathVector") -> "PathVector":
        """``self ∘ other`` in the free path category."""
        if other.tgt != self.src:
            raise QuiverError("path vectors are not composable")
        out: dict = {}
        for p, c in self.terms.items():
            for r, d in other.terms.items():
                out = add_vectors(out, {p + r: c * d})
        return PathVector(other.src, self.tgt, out)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(p) for p in self.terms}


@dataclass(frozen=True)
class Cell:
    """A 2-cell ``src -> tgt``; ``entries[j][i]`` maps ``src[i]`` to ``tgt[j]``."""

    src: OneCell
    tgt: OneCell
    entries: tuple

    def __post_init__(self):
        if (self.src.src, self.src.tgt) != (self.tgt.src, self.tgt.tgt):
            raise QuiverError("2-cell between non-parallel 1-cells")
        ent = tuple(tuple({k: c for k, c in e.items() if c} for e in row) for row in self.entries)
        if len(ent) != len(self.tgt.components) or any(len(r) != len(self.src.components) for r in ent):
            raise QuiverError(
                f"entry grid {len(ent)}x{len(ent[0]) if ent else 0} does not match "
                f"{len(self.tgt.components)}x{len(self.src.components)}")
        object.__setattr__(self, "entries", ent)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.tgt.components), len(self.src.components)

    def entry(self, j: int, i: int) -> dict:
        return self.entries[j][i]

    @property
    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def __add__(self, other: "Cell") -> "Cell":
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise QuiverError("adding 2-cells with different boundaries")
        return Cell(self.src, self.tgt, tuple(
            tuple(add_vectors(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "Cell") -> "Cell":
        return self + other.scaled(-1)

    def scaled(self, c) -> "Cell":
        return Cell(self.src, self.tgt,
                    tuple(tuple(scale_vector(e, c) for e in row) for row in self.entries))

    def permuted(self, tgt_pos: Sequence[int], src_pos: Sequence[int],
                 new_src: OneCell | None = None, new_tgt: OneCell | None = None) -> "Cell":
        """Move entry ``(j, i)`` to ``(tgt_pos[j], src_pos[i])``."""
        n_t, n_s = self.shape
        grid = [[{} for _ in range(n_s)] for _ in range(n_t)]
        for j in range(n_t):
            for i in range(n_s):
                grid[tgt_pos[j]][src_pos[i]] = self.entries[j][i]
        return Cell(new_src or self.src, new_tgt or self.tgt, tuple(tuple(r) for r in grid))

    @classmethod
    def zero(cls, src: OneCell, tgt: OneCell) -> "Cell":
        return cls(src, tgt, tuple(tuple({} for _ in src.components) for _ in tgt.components))

    @classmethod
    def single(cls, src: OneCell, tgt: OneCell, j: int, i: int, vec: Mapping) -> "Cell":
        grid = [[{} for _ in src.components] for _ in tgt.components]
        grid[j][i] = dict(vec)
        return cls(src, tgt, tuple(tuple(r) for r in grid))


def _vcomp(a: Cell, b: Cell, mul: Callable) -> Cell:
    if a.src != b.tgt:
        raise QuiverError(f"vertical composition mismatch: {a.src} vs {b.tgt}")
    mid = a.src.components
    rows = []
    for j, tj in enumerate(a.tgt.components):
        row = []
        for i, si in enumerate(b.src.components):
            acc: dict = {}
            for k, mk in enumerate(mid):
                x, y = a.entries[j][k], b.entries[k][i]
                if not x or not y:
                    continue
                for la, ca in x.items():
                    for lb, cb in y.items():
                        for lab, c in mul(la, lb, si, mk, tj).items():
                            nv = acc.get(lab, Fraction(0)) + ca * cb * c
                            if nv:
                                acc[lab] = nv
                            else:
                                acc.pop(lab, None)
            row.append(acc)
        rows.append(tuple(row))
    return Cell(b.src, a.tgt, tuple(rows))


def vertical_compose(a: Cell, b: Cell, mul: Callable = concat_mul) -> Cell:
    """``a ∘ b`` (b first): matrix product with path concatenation as scalar product."""
    return _vcomp(a, b, mul)


def identity_cell(f: OneCell, unit=()) -> Cell:
    """Diagonal matrix of stationary paths; ``unit`` may be a callable edge -> label."""
    n = len(f.components)
    lab = unit if callable(unit) else (lambda e: unit)
    return Cell(f, f, tuple(
        tuple({lab(f.components[j]): Fraction(1)} if i == j else {} for i in range(n))
        for j in range(n)))


def enumerate_paths(q: TwoQuiver, src: str, tgt: str, max_len: int | None) -> list[tuple]:
    """All 2-paths ``src -> tgt`` of length at most ``max_len``, length-lex ordered."""
    if max_len is None:
        raise ValueError("an explicit length bound is required")
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    found = []
    layer = [((), src)]          # (path, current 1-edge at the top)
    for length in range(max_len + 1):
        for p, cur in layer:
            if cur == tgt:
                found.append(p)
        if length == max_len:
            break
        nxt = []
        for p, cur in layer:
            for a in q.out_two_edges(cur):
                nxt.append(((a,) + p, q.two_edges[a][1]))
        layer = nxt
    return sorted(found, key=path_key)


def all_paths(q: TwoQuiver, max_len: int) -> dict[tuple, list[tuple]]:
    """Paths of length <= max_len for every ordered pair of parallel 1-edges."""
    out = {}
    for f in sorted(q.one_edges):
        for g in sorted(q.one_edges):
            if q.one_edges[f] == q.one_edges[g]:
                out[(f, g)] = enumerate_paths(q, f, g, max_len)
    return out


def degree_split(v: PathVector) -> dict[int, PathVector]:
    parts: dict[int, dict] = {}
    for p, c in v.terms.items():
        parts.setdefault(len(p), {})[p] = c
    return {d: PathVector(v.src, v.tgt, t) for d, t in sorted(parts.items())}


def in_edge_ideal(v: PathVector) -> bool:
    """Membership in the edge ideal: no stationary component."""
    return () not in v.terms
