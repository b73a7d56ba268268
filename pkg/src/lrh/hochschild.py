"""Hochschild cochains of S with values in U, via the Koszul resolution.

Cochains in position q are U-valued functions on q-fold wedges of the
variables, stored as ``Cochain`` objects.  The differential is

    (delta phi)(v_0 ^ ... ^ v_q) = sum_j (-1)^j [v_j, phi(... v_j omitted ...)]

which gives delta(u) = [x,u] x̂ + [y,u] ŷ and
delta(a x̂ + b ŷ) = ([x,b] - [y,a]) x̂∧ŷ, and delta(u) = [x,u] for k[x].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable

from . import ratmat
from .pbw import ArrangementAlgebra, commutator
from .ratmat import Echelon, SparseMatrix, SubspaceBasis
from .slices import (
    Cochain,
    NotStable,
    SliceBasis,
    SliceKey,
    StabilizationCertificate,
    basis,
    from_vector,
    stabilize,
    to_vector,
)

HochschildCochain = Cochain

VARIABLES = {2: ("x", "y"), 1: ("x",)}


def top_position(algebra) -> int:
    return algebra.nvars


def delta(c: Cochain) -> Cochain:
    alg = c.algebra
    names = VARIABLES[alg.nvars]
    q = c.q
    if q >= top_position(alg):
        return Cochain(alg, q + 1)
    gens = {v: alg.gen(v) for v in names}
    out: dict = {}
    for w, u in c.components.items():
        for v in names:
            if v in w:
                continue
            target = tuple(sorted(w + (v,), key=names.index))
            j = target.index(v)
            term = commutator(gens[v], u)
            if j % 2:
                term = -term
            out[target] = out[target] + term if target in out else term
    return Cochain(alg, q + 1, out)


def is_cocycle(c: Cochain) -> bool:
    return not delta(c)


class TruncatedSlab:
    """One internal-degree slab in positions q-1, q, q+1 of a cochain complex,
    cut at E-degree ``top``.

    Sub-levels k <= top give the cocycles Z(k) with E-degree at most k and the
    boundaries B(k) = delta(C^{q-1}_{<= top}) ∩ C^q_{<= k}: the extra room
    ``top - k`` is the slack that lets E-lowering boundaries in.
    """

    def __init__(self, algebra, q: int, i: int, top: int, differential: Callable = delta,
                 complex_id: str = "hochschild-koszul", top_q: int | None = None):
        self.algebra = algebra
        self.q = q
        self.i = i
        self.top = top
        self.differential = differential
        self.complex_id = complex_id
        self.top_q = top_position(algebra) if top_q is None else top_q
        self.basis = basis(SliceKey(complex_id, q, i, top), algebra)
        self._cache: dict = {}

    def _images(self, src: SliceBasis, tgt: SliceBasis) -> list:
        out = []
        for n in range(len(src)):
            out.append(to_vector(self.differential(src.element(n)), tgt))
        return out

    @cached_property
    def next_basis(self):
        if self.q >= self.top_q:
            return None
        return basis(SliceKey(self.complex_id, self.q + 1, self.i, self.top), self.algebra)

    @cached_property
    def outgoing(self) -> list:
        """delta of each basis element, as vectors in the next position."""
        if self.next_basis is None:
            return [{} for _ in range(len(self.basis))]
        return self._images(self.basis, self.next_basis)

    @cached_property
    def boundary_space(self) -> SubspaceBasis:
        if self.q == 0:
            return SubspaceBasis(len(self.basis))
        prev = basis(SliceKey(self.complex_id, self.q - 1, self.i, self.top), self.algebra)
        return ratmat.echelonize(len(self.basis), self._images(prev, self.basis))

    def cocycles(self, k: int) -> SubspaceBasis:
        key = ("Z", k)
        if key not in self._cache:
            idx = self.basis.level(k)
            rows = len(self.next_basis) if self.next_basis is not None else 0
            m = SparseMatrix.from_columns(rows, [self.outgoing[n] for n in idx])
            ker = ratmat.kernel_basis(m)
            self._cache[key] = ratmat.echelonize(
                len(self.basis), ({idx[j]: c for j, c in v.items()} for v in ker.vectors)
            )
        return self._cache[key]

    def boundaries(self, k: int) -> SubspaceBasis:
        key = ("B", k)
        if key not in self._cache:
            self._cache[key] = ratmat.intersect_coordinates(self.boundary_space, self.basis.level(k))
        return self._cache[key]

    def representatives(self, k: int) -> list:
        """Canonical cocycle vectors whose classes form a basis of Z(k)/B(k)."""
        key = ("R", k)
        if key not in self._cache:
            b = self.boundaries(k)
            both = Echelon(len(self.basis), list(b.vectors) + list(self.cocycles(k).vectors))
            bpiv = set(b.pivots)
            self._cache[key] = [both.rows[p] for p in sorted(both.rows) if p not in bpiv]
        return self._cache[key]

    def dim(self, k: int) -> int:
        return self.cocycles(k).dim - self.boundaries(k).dim

    def class_coordinates(self, v: dict, k: int):
        """Coordinates of the class of cocycle ``v`` on ``representatives(k)``.

        Returns None when ``v`` is not a cocycle of E-degree at most k.
        """
        r = self.boundaries(k).echelon().reduce(v)
        reps = self.representatives(k)
        coords = [r.get(min(rep), Fraction(0)) for rep in reps]
        for c, rep in zip(coords, reps):
            ratmat.axpy(r, -c, rep)
        if r:
            return None
        return coords

    def is_boundary(self, v: dict, k: int | None = None) -> bool:
        k = self.top if k is None else k
        return ratmat.membership(v, self.boundaries(k)) is not None

    def to_vector(self, c: Cochain) -> dict:
        return to_vector(c, self.basis)

    def from_vector(self, v: dict) -> Cochain:
        return from_vector(v, self.basis)


@dataclass
class CohomologyReport:
    q: int
    i: int
    dim: int
    representatives: list
    certificate: StabilizationCertificate
    e_bound: int = 0
    slack: int = 0

    def __post_init__(self):
        for r in self.representatives:
            if not is_cocycle(r):
                raise ValueError(f"representative {r} is not a cocycle")

    def to_json(self):
        return {
            "q": self.q,
            "i": self.i,
            "dim": self.dim,
            "e_bound": self.e_bound,
            "slack": self.slack,
            "representatives": [str(r) for r in self.representatives],
            "stabilization": self.certificate.to_json(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), ensure_ascii=False)


@dataclass
class Truncation:
    e_bound: int = 6
    slack: int = 3
    max_e_bound: int | None = None
    window: int = 3


def cohomology(q: int, i: int, algebra: ArrangementAlgebra, trunc: Truncation | None = None) -> CohomologyReport:
    """dim H^q(S,U)_i with representatives, stabilized over the E-bound."""
    trunc = trunc or Truncation()
    slabs = {}

    def compute(n, sigma):
        slabs[n] = TruncatedSlab(algebra, q, i, n + sigma)
        return slabs[n].dim(n)

    d, cert = stabilize(compute, (trunc.e_bound, trunc.slack), trunc.max_e_bound, trunc.window)
    n_stable = cert.trace[-trunc.window][0]
    slab = slabs[n_stable]
    reps = [slab.from_vector(v) for v in slab.representatives(n_stable)]
    if not slab.basis.dim:
        cert = StabilizationCertificate(verdict="stable", window=trunc.window)
    return CohomologyReport(q, i, d, reps, cert, n_stable, trunc.slack)


def classes_independent(q: int, i: int, cochains: list, algebra=None,
                        trunc: Truncation | None = None) -> bool:
    """True iff no nonzero rational combination of the cocycles is a boundary."""
    if not cochains:
        return True
    algebra = algebra or cochains[0].algebra
    trunc = trunc or Truncation()
    for c in cochains:
        if not is_cocycle(c):
            raise ValueError(f"{c} is not a cocycle")
    n = max(trunc.e_bound, max(c.e_degree() for c in cochains))
    slab = TruncatedSlab(algebra, q, i, n + trunc.slack)
    coords = [slab.class_coordinates(slab.to_vector(c), n) for c in cochains]
    m = SparseMatrix.from_columns(slab.dim(n), ({r: v for r, v in enumerate(col) if v} for col in coords))
    return ratmat.rank(m) == len(cochains)


__all__ = [
    "CohomologyReport",
    "HochschildCochain",
    "NotStable",
    "TruncatedSlab",
    "Truncation",
    "classes_independent",
    "cohomology",
    "delta",
    "is_cocycle",
]
