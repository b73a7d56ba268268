"""Lie-Rinehart cohomology of (S, Der A) = S{D, E} with eulerian coefficients.

The Chevalley-Eilenberg complex of the rank-2 algebra with basis D, E, in
internal degree j, reads

    N_j  ->  N_{j+d} D̂ ⊕ N_j Ê  ->  N_{j+d} D̂∧Ê        (d = l - 2)

    d0(n)          = D n ⊗ D̂ + E n ⊗ Ê
    d1(n D̂ + m Ê)  = (D m - E n + d n) ⊗ D̂∧Ê

since [D, E] = -d D.  Coefficient spaces are truncated: each N_j carries
outer coordinates and an inner subspace (see lifting.CohomologySpace).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ratmat
from .ratmat import SparseMatrix, SubspaceBasis


@dataclass
class EulerianModuleData:
    ell: int
    dims: dict  # j -> dim of outer N_j
    inner: dict  # j -> SubspaceBasis of N_j
    nabla_D: dict  # j -> SparseMatrix N_j -> N_{j+d}
    nabla_E: dict  # j -> SparseMatrix N_j -> N_j
    name: str = ""

    @property
    def d(self):
        return self.ell - 2

    def check_eulerian(self) -> bool:
        return all(m == SparseMatrix.identity(self.dims[j]).scaled(Fraction(j)) for j, m in self.nabla_E.items())


@dataclass
class LrReport:
    dims: tuple
    provenance: str
    kernel: int = 0
    cokernel: int = 0

    def to_json(self):
        return {"dims": list(self.dims), "provenance": self.provenance}


def _kernel_on(m: SparseMatrix, sub: SubspaceBasis) -> int:
    cols = [m.apply(v) for v in sub.vectors]
    return len(cols) - ratmat.rank(SparseMatrix.from_columns(m.rows, cols))


def lr_dims_shortcut(m: EulerianModuleData) -> LrReport:
    """H^0 = ker, H^1 = ker + coker, H^2 = coker of D: N_0 -> N_d."""
    nd = m.nabla_D[0]
    k = _kernel_on(nd, m.inner[0])
    target = m.inner[m.d]
    c = target.dim - ratmat.intersection_dim(target, ratmat.image_basis(nd))
    return LrReport((k, k + c, c), "shortcut", k, c)


class WindowTooSmall(ValueError):
    pass


def ce_matrices(m: EulerianModuleData, j: int):
    """The two CE differentials in degree j, on outer coordinates.

    C^1 coordinates: N_{j+d} (the D̂ slot) first, then N_j (the Ê slot).
    """
    d = m.d
    for deg in (j, j + d):
        if deg not in m.dims:
            raise WindowTooSmall(f"degree {deg} missing from module window")
    if j not in m.nabla_D or j not in m.nabla_E or j + d not in m.nabla_E:
        raise WindowTooSmall(f"actions in degree {j} missing")
    a, b = m.dims[j + d], m.dims[j]
    nd, ne_j, ne_jd = m.nabla_D[j], m.nabla_E[j], m.nabla_E[j + d]
    d0 = {}
    for (r, c), v in nd.entries.items():
        d0[(r, c)] = v
    for (r, c), v in ne_j.entries.items():
        d0[(a + r, c)] = v
    d0m = SparseMatrix(a + b, b, d0)
    d1 = {}
    for (r, c), v in ne_jd.entries.items():
        d1[(r, c)] = d1.get((r, c), 0) - v
    for r in range(a):
        d1[(r, r)] = d1.get((r, r), 0) + d
    for (r, c), v in nd.entries.items():
        d1[(r, a + c)] = d1.get((r, a + c), 0) + v
    d1m = SparseMatrix(a, a + b, d1)
    return d0m, d1m


def _shift(sub: SubspaceBasis, offset: int, ambient: int) -> list:
    return [{k + offset: c for k, c in v.items()} for v in sub.vectors]


def ce_full_dims(m: EulerianModuleData, j: int) -> tuple:
    """Cohomology of the degree-j CE subcomplex.

    Cocycles are taken on the inner subspaces, coboundaries come from outer
    sources.
    """
    d0, d1 = ce_matrices(m, j)
    a, b = m.dims[j + m.d], m.dims[j]
    inner0 = m.inner[j]
    inner1 = ratmat.echelonize(a + b, _shift(m.inner[j + m.d], 0, a + b) + _shift(m.inner[j], a, a + b))
    inner2 = m.inner[j + m.d]
    h0 = _kernel_on(d0, inner0)
    cols = [d1.apply(v) for v in inner1.vectors]
    z1 = ratmat.kernel_basis(SparseMatrix.from_columns(a, cols))
    z1_vecs = []
    for v in z1.vectors:
        out: dict = {}
        for k, c in v.items():
            ratmat.axpy(out, c, inner1.vectors[k])
        z1_vecs.append(out)
    z1_space = ratmat.echelonize(a + b, z1_vecs)
    h1 = z1_space.dim - ratmat.intersection_dim(z1_space, ratmat.image_basis(d0))
    h2 = inner2.dim - ratmat.intersection_dim(inner2, ratmat.image_basis(d1))
    return (h0, h1, h2)


def euler_homotopy_check(m: EulerianModuleData, j: int) -> bool:
    """s d + d s = j on the degree-j CE complex, with s(f) = f(E ∧ -)."""
    if j == 0:
        raise ValueError("the contraction is a homotopy to j*id, trivial at j = 0")
    d0, d1 = ce_matrices(m, j)
    a, b = m.dims[j + m.d], m.dims[j]
    # s1: C^1 -> C^0 picks the Ê slot; s2: C^2 -> C^1 sends p to -p D̂
    s1 = SparseMatrix(b, a + b, {(r, a + r): 1 for r in range(b)})
    s2 = SparseMatrix(a + b, a, {(r, r): -1 for r in range(a)})
    ok0 = s1 @ d0 == SparseMatrix.identity(b).scaled(Fraction(j))
    ok1 = d0 @ s1 + s2 @ d1 == SparseMatrix.identity(a + b).scaled(Fraction(j))
    ok2 = d1 @ s2 == SparseMatrix.identity(a).scaled(Fraction(j))
    return ok0 and ok1 and ok2


__all__ = [
    "EulerianModuleData",
    "LrReport",
    "WindowTooSmall",
    "ce_full_dims",
    "ce_matrices",
    "euler_homotopy_check",
    "lr_dims_shortcut",
]
