"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Dense matrices are
plain lists of rows; :class:`Matrix` is a thin immutable wrapper used at the
public surface.  :class:`Subspace` is the sparse, incrementally maintained
echelon basis that the quotient machinery reduces against.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

__all__ = [
    "Fraction",
    "FieldNotSplitError",
    "NonAssociativeError",
    "Matrix",
    "Subspace",
    "StructureConstants",
    "algebra_radical",
    "as_fraction",
    "format_fraction",
    "membership",
    "nullspace",
    "rank",
    "rref",
    "solve",
]


class FieldNotSplitError(ArithmeticError):
    """The radical quotient is not discrete over the rationals."""


class NonAssociativeError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(as_fraction(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum((a[i][k] * b[k][j] for k in range(self.cols)), Fraction(0))
                for j in range(other.cols)] for i in range(self.rows)]
        return Matrix.from_rows(out, other.cols)

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
                                self.rows)


def _rows_of(m) -> tuple[list[list[Fraction]], int]:
    if isinstance(m, Matrix):
        return m.to_rows(), m.cols
    rows = [[as_fraction(x) for x in r] for r in m]
    return rows, (len(rows[0]) if rows else 0)


def _echelon(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivots)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (zero rows kept at the bottom) and pivot columns."""
    rows, ncols = _rows_of(m)
    rows, pivots = _echelon(rows, ncols)
    return Matrix.from_rows(rows, ncols), pivots


def rank(m) -> int:
    rows, ncols = _rows_of(m)
    return len(_echelon(rows, ncols)[1])


def membership(space, v: Sequence) -> tuple[bool, list[Fraction]]:
    """Decide whether ``v`` lies in the row space of the echelon matrix ``space``.

    Returns ``(True, coordinates)`` or ``(False, residual)``, the residual being
    ``v`` minus its projection along the pivot columns.
    """
    rows, ncols = _rows_of(space)
    v = [as_fraction(x) for x in v]
    if rows and len(v) != ncols:
        raise ValueError(f"vector has length {len(v)}, space has {ncols} columns")
    rows = [r for r in rows if any(r)]
    coords: list[Fraction] = []
    residual = list(v)
    for r in rows:
        c = next(i for i, x in enumerate(r) if x)
        if r[c] != 1 or any(o[c] for o in rows if o is not r):
            raise ValueError("space is not in reduced echelon form")
        k = residual[c]
        coords.append(k)
        if k:
            residual = [x - k * y for x, y in zip(residual, r)]
    if any(residual):
        return False, residual
    return True, coords


def nullspace(m) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    rows, ncols = _rows_of(m)
    rows, pivots = _echelon(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -rows[r][free]
        basis.append(x)
    return basis


def solve(m, b: Sequence) -> list[Fraction] | None:
    """One solution of ``m x = b`` or ``None`` when inconsistent."""
    rows, ncols = _rows_of(m)
    aug = [r + [as_fraction(y)] for r, y in zip(rows, b)]
    aug, pivots = _echelon(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = aug[r][ncols]
    return x


class Subspace:
    """Sparse reduced-echelon basis over an ordered set of keys.

    Vectors are mappings ``key -> Fraction``.  The pivot of each basis row is its
    *largest* key under ``order``, so :meth:`reduce` rewrites a vector in terms of
    the smallest keys possible.  This is what makes quotient normal forms prefer
    short paths.
    """

    def __init__(self, order: Callable[[Hashable], object] | None = None):
        self._order = order or (lambda k: k)
        self._rows: dict[Hashable, dict[Hashable, Fraction]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows, key=self._order)

    def rows(self) -> list[dict]:
        return [dict(self._rows[p]) for p in self.pivots]

    def _lead(self, v: Mapping) -> Hashable:
        return max(v, key=self._order)

    def reduce(self, v: Mapping) -> dict:
        out = {k: Fraction(c) for k, c in v.items() if c}
        # rows are fully reduced: no row mentions another row's pivot, so one pass suffices
        for k in [k for k in out if k in self._rows]:
            c = out[k]
            for kk, cc in self._rows[k].items():
                nv = out.get(kk, Fraction(0)) - c * cc
                if nv:
                    out[kk] = nv
                else:
                    out.pop(kk, None)
        return out

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        w = self.reduce(v)
        if not w:
            return False
        lead = self._lead(w)
        c = w[lead]
        w = {k: x / c for k, x in w.items()}
        for p, row in self._rows.items():
            f = row.get(lead)
            if f:
                for k, x in w.items():
                    nv = row.get(k, Fraction(0)) - f * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self._rows[lead] = w
        return True

    def copy(self) -> "Subspace":
        s = Subspace(self._order)
        s._rows = {p: dict(r) for p, r in self._rows.items()}
        return s


@dataclass(frozen=True)
class StructureConstants:
    """A finite-dimensional algebra: ``b_i b_j = sum_k table[i][j][k] b_k``."""

    dim: int
    table: tuple
    unit: tuple | None = None
    idempotents: tuple | None = None

    @classmethod
    def build(cls, dim: int, table, unit=None, idempotents=None) -> "StructureConstants":
        t = tuple(tuple(tuple(as_fraction(x) for x in table[i][j]) for j in range(dim))
                  for i in range(dim))
        u = None if unit is None else tuple(as_fraction(x) for x in unit)
        idem = None
        if idempotents is not None:
            idem = tuple(tuple(as_fraction(x) for x in e) for e in idempotents)
        sc = cls(dim, t, u, idem)
        if u is not None:
            for j in range(dim):
                ej = [Fraction(int(k == j)) for k in range(dim)]
                if sc.mul(u, ej) != ej or sc.mul(ej, u) != ej:
                    raise ValueError("declared unit is not a two-sided unit")
        return sc

    def mul(self, x: Sequence, y: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, t in enumerate(ti[j]):
                    if t:
                        out[k] += c * t
        return out

    def basis_vector(self, i: int) -> list[Fraction]:
        return [Fraction(int(k == i)) for k in range(self.dim)]

    def associativity_failure(self):
        """First basis triple violating associativity, or None."""
        e = [self.basis_vector(i) for i in range(self.dim)]
        prods = [[self.mul(e[i], e[j]) for j in range(self.dim)] for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if self.mul(prods[i][j], e[k]) != self.mul(e[i], prods[j][k]):
                        return (i, j, k)
        return None

    def left_matrix(self, x: Sequence) -> list[list[Fraction]]:
        """Matrix of y -> x y acting on column coordinate vectors."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]


def _span_products(a: StructureConstants, left: list, right: list) -> list[list[Fraction]]:
    rows = [a.mul(x, y) for x in left for y in right]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    ech, piv = _echelon(rows, a.dim)
    return ech[:len(piv)]


def _in_span(basis: list, v: Sequence) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(basis + [list(v)]) == rank(basis)


def algebra_radical(a: StructureConstants, *, require_discrete: bool = False) -> list[list[Fraction]]:
    """Jacobson radical of an associative algebra over Q, as an echelon basis.

    Uses the trace form ``(x, y) -> tr(L_{xy})`` (valid in characteristic 0) and
    then checks, rather than assumes, that the result is a nilpotent two-sided
    ideal.  With ``require_discrete`` the quotient must be a product of copies of
    Q; otherwise :class:`FieldNotSplitError` is raised.
    """
    bad = a.associativity_failure()
    if bad is not None:
        raise NonAssociativeError(f"basis triple {bad} is not associative")
    n = a.dim
    traces = [sum(a.table[k][m][m] for m in range(n)) for k in range(n)]
    gram = [[sum(a.table[i][j][k] * traces[k] for k in range(n)) for j in range(n)]
            for i in range(n)]
    # x lies in the radical iff sum_i x_i gram[i][j] = 0 for every j
    transposed = [[gram[i][j] for i in range(n)] for j in range(n)]
    null = nullspace(transposed) if n else []
    if null:
        rad, piv = _echelon(null, n)
        rad = rad[:len(piv)]
    else:
        rad = []

    basis = [a.basis_vector(i) for i in range(n)]
    for r in rad:
        for b in basis:
            if not _in_span(rad, a.mul(r, b)) or not _in_span(rad, a.mul(b, r)):
                raise ArithmeticError("trace-form radical is not an ideal; characteristic issue?")
    power = rad
    for _ in range(n + 1):
        if not power:
            break
        power = _span_products(a, power, rad)
    if power:
        raise ArithmeticError("trace-form radical is not nilpotent")

    if require_discrete:
        _check_discrete_quotient(a, rad)
    return rad


def _check_discrete_quotient(a: StructureConstants, rad: list) -> None:
    n = a.dim
    q = n - len(rad)
    if q == 0:
        return
    if a.idempotents is not None:
        idem = [list(e) for e in a.idempotents]
        for i, e in enumerate(idem):
            for j, f in enumerate(idem):
                want = e if i == j else [Fraction(0)] * n
                if a.mul(e, f) != want:
                    raise ValueError("declared idempotents are not orthogonal idempotents")
        if rank(rad + idem) != n or len(idem) != q:
            raise FieldNotSplitError(
                f"quotient by the radical has dimension {q} but {len(idem)} idempotents are declared")
        return
    # complement basis: standard vectors not in the radical span
    comp = []
    cur = list(rad)
    for i in range(n):
        e = a.basis_vector(i)
        if not _in_span(cur, e):
            comp.append(e)
            cur.append(e)
    for x in comp:
        for y in comp:
            d = [u - v for u, v in zip(a.mul(x, y), a.mul(y, x))]
            if not _in_span(rad, d):
                raise FieldNotSplitError("radical quotient is not commutative, hence not discrete")
    _check_split_commutative(a, rad, comp)


def _check_split_commutative(a: StructureConstants, rad: list, comp: list) -> None:
    """A commutative semisimple quotient is discrete iff every element acts
    diagonalisably with rational eigenvalues."""
    import sympy

    full = rad + comp
    q = len(comp)
    # coordinates of a vector in the basis rad + comp, keep the comp part
    tr = [[full[j][i] for j in range(len(full))] for i in range(a.dim)]

    def quotient_coords(v):
        x = solve(tr, v)
        return x[len(rad):]

    for x in comp:
        cols = [quotient_coords(a.mul(x, y)) for y in comp]
        mat = sympy.Matrix(q, q, lambda i, j: sympy.Rational(cols[j][i].numerator, cols[j][i].denominator))
        lam = sympy.Symbol("lam")
        poly = sympy.Poly(mat.charpoly(lam).as_expr(), lam, domain="QQ")
        _, factors = poly.factor_list()
        if any(f.degree() > 1 for f, _ in factors):
            raise FieldNotSplitError("radical quotient contains a non-split field extension")
        for f, mult in factors:
            root = -f.all_coeffs()[1] / f.all_coeffs()[0]
            if q - (mat - root * sympy.eye(q)).rank() != mult:
                raise FieldNotSplitError("radical quotient element is not diagonalisable")
