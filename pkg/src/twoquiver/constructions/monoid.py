"""Ordered monoids and the 2-categories they induce.

An ordered monoid ``M`` gives a one-object 2-category with a 1-edge ``F_x``
per element, ``F_x F_y = F_{xy}``, and a one-dimensional space of 2-cells
``F_x -> F_y`` exactly when ``x <= y``.  As a bound 2-quiver the 2-edges are the
cover pairs of the order and all converging paths are identified.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Hashable, Sequence

from ..drop import DropTable
from ..pathcat import Cell, PathVector
from ..quiver2 import LicitPresentation, OneCell, QuiverError, TwoQuiver
from ..quotient import AdmissibleIdeal

__all__ = [
    "MonoidError",
    "OrderedMonoid",
    "catalan_monoid",
    "cover_chains",
    "monoid_two_category",
]


class MonoidError(QuiverError):
    pass


@dataclass
class OrderedMonoid:
    """``table[(x, y)] = x y`` and ``leq(x, y)`` for ``x <= y``; checked on construction."""

    elements: Sequence[Hashable]
    table: dict
    unit: Hashable
    leq_pairs: frozenset
    names: dict

    @classmethod
    def build(cls, elements: Sequence, mul: Callable, unit, leq: Callable,
              name: Callable = str) -> "OrderedMonoid":
        elements = list(elements)
        table = {(x, y): mul(x, y) for x in elements for y in elements}
        pairs = frozenset((x, y) for x in elements for y in elements if leq(x, y))
        m = cls(elements, table, unit, pairs, {x: name(x) for x in elements})
        m.validate()
        return m

    def mul(self, x, y):
        return self.table[(x, y)]

    def leq(self, x, y) -> bool:
        return (x, y) in self.leq_pairs

    def validate(self) -> None:
        E = self.elements
        S = set(E)
        if len(self.names) != len(set(self.names.values())):
            raise MonoidError("element names are not distinct")
        for x in E:
            for y in E:
                if self.table[(x, y)] not in S:
                    raise MonoidError(f"product {x}·{y} leaves the monoid")
        for x, y, z in product(E, repeat=3):
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise MonoidError(f"multiplication is not associative on ({x}, {y}, {z})")
        for x in E:
            if self.mul(self.unit, x) != x or self.mul(x, self.unit) != x:
                raise MonoidError(f"{self.unit} is not a unit")
        for x in E:
            if not self.leq(x, x):
                raise MonoidError(f"order is not reflexive at {x}")
        for x, y in self.leq_pairs:
            if x != y and self.leq(y, x):
                raise MonoidError(f"order is not antisymmetric on {x}, {y}")
            for z in E:
                if self.leq(y, z) and not self.leq(x, z):
                    raise MonoidError(f"order is not transitive on {x}, {y}, {z}")
                if not self.leq(self.mul(x, z), self.mul(y, z)) or not self.leq(self.mul(z, x), self.mul(z, y)):
                    raise MonoidError(f"order is not compatible with multiplication on {x} <= {y}, {z}")

    def covers(self) -> list[tuple]:
        out = []
        for x, y in sorted(self.leq_pairs, key=lambda p: (self.names[p[0]], self.names[p[1]])):
            if x == y:
                continue
            if not any(z not in (x, y) and self.leq(x, z) and self.leq(z, y) for z in self.elements):
                out.append((x, y))
        return out

    def height(self) -> int:
        """Number of cover steps in the longest chain."""
        best: dict = {}
        order = sorted(self.elements, key=lambda x: sum(1 for y in self.elements if self.leq(y, x)))
        cov = self.covers()
        for y in order:
            best[y] = max([best[x] + 1 for x, z in cov if z == y], default=0)
        return max(best.values(), default=0)


def catalan_monoid(n: int, leq: Callable | None = None) -> OrderedMonoid:
    """Order-preserving, order-decreasing maps of ``{1..n}`` under composition
    ``(f g)(i) = f(g(i))``, ordered pointwise unless ``leq`` is supplied."""
    if n < 1:
        raise MonoidError("n must be at least 1")
    maps = []
    for f in product(range(1, n + 1), repeat=n):
        if all(f[i] <= i + 1 for i in range(n)) and all(f[i] <= f[i + 1] for i in range(n - 1)):
            maps.append(f)
    unit = tuple(range(1, n + 1))
    leq = leq or (lambda f, g: all(a <= b for a, b in zip(f, g)))
    return OrderedMonoid.build(maps, lambda f, g: tuple(f[g[i] - 1] for i in range(n)), unit, leq,
                               name=lambda f: "".join(map(str, f)))


def _edge(m: OrderedMonoid, x) -> str:
    return f"F_{m.names[x]}"


def _two_edge(m: OrderedMonoid, x, y) -> str:
    return f"ε_{m.names[x]},{m.names[y]}"


def cover_chains(m: OrderedMonoid, x, y, limit: int = 2) -> list[tuple]:
    """Up to ``limit`` cover chains ``x -> y`` as 2-paths in composition order."""
    cov = m.covers()
    out = []
    queue = deque([(x, ())])
    while queue and len(out) < limit:
        cur, path = queue.popleft()
        if cur == y:
            out.append(path)
            continue
        for a, b in cov:
            if a == cur and m.leq(b, y):
                queue.append((b, (_two_edge(m, a, b),) + path))
    return out


def _all_chains(m: OrderedMonoid, x, y) -> list[tuple]:
    return cover_chains(m, x, y, limit=10 ** 6)


def monoid_two_category(m: OrderedMonoid, chain: int = 0):
    """``(quiver, presentation, ideal, drops)`` for an ordered monoid.

    ``chain`` picks which cover chain realises each drop entry (the first one
    found, or a later one where it exists); the result must not depend on it.
    """
    m.validate()
    edges = {_edge(m, x): ("*", "*") for x in m.elements}
    two = {_two_edge(m, x, y): (_edge(m, x), _edge(m, y)) for x, y in m.covers()}
    q = TwoQuiver(("*",), edges, {"*": _edge(m, m.unit)}, two)
    p = LicitPresentation(q, {(_edge(m, x), _edge(m, y)): (_edge(m, m.mul(x, y)),)
                              for x in m.elements for y in m.elements})
    gens = []
    for x, y in sorted(m.leq_pairs, key=lambda p: (m.names[p[0]], m.names[p[1]])):
        paths = _all_chains(m, x, y)
        for other in paths[1:]:
            gens.append(PathVector(_edge(m, x), _edge(m, y),
                                   {other: Fraction(1), paths[0]: Fraction(-1)}))
    ideal = AdmissibleIdeal(tuple(gens), max(m.height() + 1, 2))

    def entry(a, b) -> Cell:
        src, tgt = OneCell("*", "*", (_edge(m, a),)), OneCell("*", "*", (_edge(m, b),))
        if a == b:
            return Cell(src, tgt, (({(): Fraction(1)},),))
        chains = cover_chains(m, a, b, limit=chain + 1)
        path = chains[min(chain, len(chains) - 1)]
        return Cell(src, tgt, (({path: Fraction(1)},),))

    d = DropTable()
    for x, y in m.covers():
        a = _two_edge(m, x, y)
        for z in m.elements:
            if z == m.unit:
                continue
            d.lower[(_edge(m, z), a)] = entry(m.mul(z, x), m.mul(z, y))
            d.upper[(_edge(m, z), a)] = entry(m.mul(x, z), m.mul(y, z))
    return q, p, ideal, d
