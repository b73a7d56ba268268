"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``{index: Fraction}`` with no stored zeros.  Every
subspace is carried in reduced row echelon form, so bases (and therefore the
cocycle representatives built from them) are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Vector = dict  # {int: Fraction}


def as_fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def clean(v: Mapping[int, object]) -> Vector:
    out = {}
    for k, c in v.items():
        c = as_fraction(c)
        if c:
            out[k] = c
    return out


def axpy(y: Vector, a: Fraction, x: Mapping[int, Fraction]) -> None:
    """In place ``y += a * x``."""
    if not a:
        return
    for k, c in x.items():
        s = y.get(k, 0) + a * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scale(v: Mapping[int, Fraction], a) -> Vector:
    a = as_fraction(a)
    if not a:
        return {}
    return {k: a * c for k, c in v.items()}


def add(u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
    out = dict(u)
    axpy(out, Fraction(1), v)
    return out


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # {(r, c): Fraction}

    def __post_init__(self):
        entries = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = as_fraction(v)
            if v:
                entries[(r, c)] = v
        self.entries = entries

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        return cls(n, m, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[Mapping[int, Fraction]]):
        columns = list(columns)
        ent = {(r, j): v for j, col in enumerate(columns) for r, v in col.items()}
        return cls(nrows, len(columns), ent)

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    def row_vectors(self) -> list:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column_vectors(self) -> list:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def apply(self, v: Mapping[int, Fraction]) -> Vector:
        cols = self.column_vectors()
        out: Vector = {}
        for j, a in v.items():
            axpy(out, a, cols[j])
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = [self.apply(c) for c in other.column_vectors()]
        return SparseMatrix.from_columns(self.rows, cols)

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = ent.get(k, 0) - v
        return SparseMatrix(self.rows, self.cols, ent)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = ent.get(k, 0) + v
        return SparseMatrix(self.rows, self.cols, ent)

    def scaled(self, a) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, {k: a * v for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    The pivot of a vector is its smallest index.  ``rows[p]`` is the unique
    basis vector with pivot ``p``; it has a 1 at ``p`` and zeros at every other
    pivot, so the basis is the RREF of the span regardless of insertion order.
    """

    def __init__(self, ambient_dim: int, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.ambient_dim = ambient_dim
        self.rows: dict = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Mapping[int, Fraction]) -> Vector:
        """Residual of ``v`` after eliminating every pivot coordinate."""
        r = dict(v)
        for p in [p for p in r if p in self.rows]:
            c = r.get(p)
            if c:
                axpy(r, -c, self.rows[p])
        return r

    def add(self, v: Mapping[int, Fraction]) -> bool:
        r = self.reduce(clean(v))
        if not r:
            return False
        p = min(r)
        r = scale(r, 1 / r[p])
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def coefficients(self, v: Mapping[int, Fraction]):
        """Coordinates of ``v`` against the echelon rows, or None if outside."""
        coeffs = {p: v[p] for p in self.rows if p in v}
        r = dict(v)
        for p, c in coeffs.items():
            axpy(r, -c, self.rows[p])
        if r:
            return None
        return coeffs

    def basis(self) -> "SubspaceBasis":
        return SubspaceBasis(self.ambient_dim, tuple(self.rows[p] for p in sorted(self.rows)))


@dataclass(frozen=True)
class SubspaceBasis:
    ambient_dim: int
    vectors: tuple = ()

    def __post_init__(self):
        piv = [min(v) for v in self.vectors]
        if any(a >= b for a, b in zip(piv, piv[1:])):
            raise ValueError("pivots must be strictly increasing")
        for v, p in zip(self.vectors, piv):
            if v[p] != 1 or any(k >= self.ambient_dim or k < 0 for k in v):
                raise ValueError("not a reduced echelon basis")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def pivots(self) -> tuple:
        return tuple(min(v) for v in self.vectors)

    def echelon(self) -> Echelon:
        e = Echelon(self.ambient_dim)
        e.rows = {min(v): dict(v) for v in self.vectors}
        return e

    def __len__(self):
        return len(self.vectors)


def echelonize(ambient_dim: int, vectors: Iterable[Mapping[int, Fraction]]) -> SubspaceBasis:
    return Echelon(ambient_dim, vectors).basis()


def rank(m: SparseMatrix) -> int:
    """Rank via Gaussian elimination with Markowitz pivot selection."""
    rows = [r for r in m.row_vectors() if r]
    col_count: dict = {}
    for r in rows:
        for c in r:
            col_count[c] = col_count.get(c, 0) + 1
    rk = 0
    while rows:
        best = None
        for i, r in enumerate(rows):
            rl = len(r) - 1
            for c in r:
                cost = rl * (col_count[c] - 1)
                if best is None or cost < best[0]:
                    best = (cost, i, c)
                    if cost == 0:
                        break
            if best[0] == 0:
                break
        _, i, c = best
        pivot_row = rows.pop(i)
        for k in pivot_row:
            col_count[k] -= 1
        inv = 1 / pivot_row[c]
        remaining = []
        for r in rows:
            a = r.get(c)
            if a:
                for k in r:
                    col_count[k] -= 1
                axpy(r, -a * inv, pivot_row)
                for k in r:
                    col_count[k] = col_count.get(k, 0) + 1
            if r:
                remaining.append(r)
        rows = remaining
        rk += 1
    return rk


def kernel_basis(m: SparseMatrix) -> SubspaceBasis:
    """Echelonized basis of ``{x : m x = 0}``."""
    e = Echelon(m.cols, m.row_vectors())
    pivots = set(e.rows)
    kern = []
    for f in range(m.cols):
        if f in pivots:
            continue
        v = {f: Fraction(1)}
        for p, row in e.rows.items():
            c = row.get(f)
            if c:
                v[p] = -c
        kern.append(v)
    return echelonize(m.cols, kern)


def image_basis(m: SparseMatrix) -> SubspaceBasis:
    return echelonize(m.rows, m.column_vectors())


def membership(v: Mapping[int, Fraction], s: SubspaceBasis):
    """Coefficients of ``v`` on ``s.vectors`` (a list), or None if ``v`` is outside the span."""
    if any(k >= s.ambient_dim or k < 0 for k in v):
        raise ValueError(f"vector has coordinates outside ambient dimension {s.ambient_dim}")
    v = clean(v)
    e = s.echelon()
    coeffs = e.coefficients(v)
    if coeffs is None:
        return None
    return [coeffs.get(p, Fraction(0)) for p in s.pivots]


def quotient_dim(ambient_dim: int, sub: SubspaceBasis) -> int:
    return ambient_dim - len(sub.vectors)


def span_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("dimension mismatch")
    return echelonize(a.ambient_dim, list(a.vectors) + list(b.vectors))


def intersection_dim(a: SubspaceBasis, b: SubspaceBasis) -> int:
    return a.dim + b.dim - span_sum(a, b).dim


def intersect_coordinates(s: SubspaceBasis, keep: Iterable[int]) -> SubspaceBasis:
    """Basis of ``span(s)`` intersected with the coordinate subspace on ``keep``.

    Coordinates outside ``keep`` are moved to the front so that echelon rows
    pivoting inside ``keep`` are exactly those vanishing on the rest.
    """
    keep = set(keep)
    order = sorted(range(s.ambient_dim), key=lambda k: (k in keep, k))
    pos = {k: i for i, k in enumerate(order)}
    e = Echelon(s.ambient_dim, ({pos[k]: c for k, c in v.items()} for v in s.vectors))
    inside = [row for p, row in e.rows.items() if order[p] in keep]
    return echelonize(s.ambient_dim, ({order[k]: c for k, c in row.items()} for row in inside))


def solve(m: SparseMatrix, v: Mapping[int, Fraction]):
    """One solution ``x`` of ``m x = v`` as a dict, or None when inconsistent."""
    # Augment each row with the right-hand side in an extra column.
    aug = m.row_vectors()
    for r, c in v.items():
        aug[r][m.cols] = as_fraction(c)
    e = Echelon(m.cols + 1, aug)
    if m.cols in e.rows:
        return None
    x = {}
    for p, row in e.rows.items():
        c = row.get(m.cols)
        if c:
            x[p] = c
    return x
