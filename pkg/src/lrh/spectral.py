"""The E2 page H^p_S(L, H^q(S,U)) and the Hilbert series of HH(U).

Row q of the page is the Lie-Rinehart cohomology of the eulerian module
H^q(S,U), which only depends on nabla_D: H^q(S,U)_0 -> H^q(S,U)_{l-2}.

For three lines the degeneration question reduces to dim HH^3(U) (only
d2: E2^{0,2} -> E2^{2,1} can be nonzero).  A lower bound for it comes from
the degree-zero part of the complex U ⊗ Λ V_U^* with V_U = span(x, y, D, E).
Its d2 on u ⊗ x̂∧ŷ involves an operator not defined here, but only in the
x̂∧ŷ∧D̂ slot; dropping that coordinate (the projection pi) gives a
computable lower bound dim pi(Z^3) / pi(B^3).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import ratmat
from .hochschild import TruncatedSlab, Truncation
from .lifting import build_lifting, cohomology_space, nabla_between
from .lrce import EulerianModuleData, lr_dims_shortcut
from .pbw import ArrangementAlgebra, commutator
from .ratmat import SparseMatrix
from .slices import Cochain, StabilizationCertificate, labels_at, stabilize


# Coefficient modules H^q(S,U) -------------------------------------------


def hochschild_module(algebra: ArrangementAlgebra, q: int, degrees, n: int, sigma: int,
                      with_euler: bool = True) -> EulerianModuleData:
    """Truncated H^q(S,U) on ``degrees`` and their shifts by l-2, with the
    actions of D (from each degree in ``degrees``) and of E."""
    d = algebra.d_deg
    degrees = sorted(set(degrees))
    window = sorted(set(degrees) | {j + d for j in degrees})
    spaces = {j: cohomology_space(algebra, q, j, n, sigma) for j in window}
    lift_d = build_lifting("D", algebra)
    nabla_d = {j: nabla_between(lift_d, spaces[j], spaces[j + d]).matrix for j in degrees}
    nabla_e = {}
    if with_euler:
        lift_e = build_lifting("E", algebra)
        nabla_e = {j: nabla_between(lift_e, s, s).matrix for j, s in spaces.items()}
    return EulerianModuleData(
        ell=algebra.ell,
        dims={j: s.dim for j, s in spaces.items()},
        inner={j: s.inner() for j, s in spaces.items()},
        nabla_D=nabla_d,
        nabla_E=nabla_e,
        name=f"H^{q}(S,U)",
    )


@dataclass
class E2Table:
    ell: int
    slopes: tuple
    grid: list  # grid[q][p]
    certificates: list  # certificates[q][p]

    def anti_diagonals(self) -> list:
        out = [0] * 5
        for q, row in enumerate(self.grid):
            for p, v in enumerate(row):
                out[p + q] += v
        return out

    def to_json(self):
        return {
            "l": self.ell,
            "slopes": [str(t) for t in self.slopes],
            "E2": self.grid,
            "certificates": [[c.to_json() for c in row] for row in self.certificates],
        }

    def csv_rows(self):
        yield ("p", "q", "dim")
        for q, row in enumerate(self.grid):
            for p, v in enumerate(row):
                yield (p, q, v)


def e2_row(slopes, q: int, trunc: Truncation):
    algebra = ArrangementAlgebra(slopes)

    def compute(n, sigma):
        m = hochschild_module(algebra, q, [0], n, sigma, with_euler=False)
        return lr_dims_shortcut(m).dims

    return stabilize(compute, (trunc.e_bound, trunc.slack), trunc.max_e_bound, trunc.window)


def e2_table(algebra: ArrangementAlgebra, trunc: Truncation | None = None, jobs: int = 1) -> E2Table:
    trunc = trunc or Truncation()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(e2_row, [algebra.slopes] * 3, range(3), [trunc] * 3))
    else:
        rows = [e2_row(algebra.slopes, q, trunc) for q in range(3)]
    grid = [list(dims) for dims, _ in rows]
    certs = [[cert] * 3 for _, cert in rows]
    return E2Table(algebra.ell, algebra.slopes, grid, certs)


# Hilbert series -----------------------------------------------------------


class InconsistentBound(RuntimeError):
    pass


@dataclass
class HilbertReport:
    series: list
    verdict: str  # degenerate | non-degenerate | assumed-degenerate
    e2_total_degree3: int
    hh3: int | None

    @property
    def degenerate(self) -> bool:
        return self.verdict != "non-degenerate"


def _trim(series):
    out = list(series)
    while len(out) > 4 and out[-1] == 0:
        out.pop()
    return out


def hilbert_series(table: E2Table, hh3: int | None = None) -> HilbertReport:
    """Anti-diagonal sums of the page, corrected by the rank of d2^{0,2}.

    ``hh3`` is dim HH^3 or a lower bound for it.  When it reaches the E2
    total in degree 3 the only possible differential vanishes.  With ``hh3``
    None the series is reported under the degeneration hypothesis.
    """
    diag = table.anti_diagonals()
    s3 = diag[3]
    if hh3 is None:
        return HilbertReport(_trim(diag), "assumed-degenerate", s3, None)
    if hh3 > s3:
        raise InconsistentBound(f"HH^3 bound {hh3} exceeds the E2 total {s3}")
    if hh3 == s3:
        return HilbertReport(_trim(diag), "degenerate", s3, hh3)
    # d2^{0,2}: E2^{0,2} -> E2^{2,1} of rank s3 - hh3 removes that much from
    # total degrees 2 and 3
    r = s3 - hh3
    e02 = table.grid[2][0] if len(table.grid) > 2 else 0
    if r > min(e02, table.grid[1][2]):
        raise InconsistentBound(f"d2 would need rank {r}")
    diag[2] -= r
    diag[3] -= r
    return HilbertReport(_trim(diag), "non-degenerate", s3, hh3)


# The complex U ⊗ Λ V_U^* in degree zero (three lines) ---------------------


def _require_three_lines(algebra):
    if algebra.ell != 3:
        raise ValueError("the complex on V_U is only available for three lines")


def x_differential(c: Cochain) -> Cochain:
    """d2 and d3 of U ⊗ Λ V_U^*.

    d2 on u ⊗ x̂∧ŷ is returned without its x̂∧ŷ∧D̂ component, which involves
    an operator of the earlier computation that is not reproduced here.
    """
    alg = c.algebra
    _require_three_lines(alg)
    t = alg.slopes[1]
    x, y, D, E = (alg.gen(g) for g in "xyDE")
    fy = alg.from_polynomial(alg.F.diff(1))
    out: dict = {}

    def put(label, val):
        out[label] = out[label] + val if label in out else val

    for w, u in c.components.items():
        if c.q == 2:
            if w == ("x", "y"):
                put(("x", "y", "E"), commutator(E, u) - u * 2)
            elif w == ("x", "E"):
                put(("x", "y", "E"), -commutator(y, u))
                put(("x", "D", "E"), -commutator(D, u))
                put(("y", "D", "E"), u * y * t)
            elif w == ("y", "E"):
                put(("x", "y", "E"), commutator(x, u))
                put(("y", "D", "E"), fy * u - commutator(y, u) - commutator(D, u))
            elif w == ("x", "D"):
                put(("x", "y", "D"), -commutator(y, u))
                put(("x", "D", "E"), commutator(E, u) - u * 2)
            elif w == ("y", "D"):
                put(("x", "y", "D"), commutator(x, u))
                put(("y", "D", "E"), commutator(E, u) - u * 2)
            elif w == ("D", "E"):
                put(("x", "D", "E"), commutator(x, u))
                put(("y", "D", "E"), commutator(y, u))
        elif c.q == 3:
            top = ("x", "y", "D", "E")
            if w == ("x", "y", "D"):
                put(top, u * 3 - commutator(E, u))
            elif w == ("x", "y", "E"):
                put(top, commutator(D, u) - fy * u + commutator(y, u))
            elif w == ("x", "D", "E"):
                put(top, -commutator(y, u))
            elif w == ("y", "D", "E"):
                put(top, commutator(x, u))
        elif c.q > 3:
            pass
        else:
            raise ValueError("only positions 2 and 3 carry displayed differentials")
    return Cochain(alg, c.q + 1, out)


def x_slab(algebra, top: int) -> TruncatedSlab:
    return TruncatedSlab(algebra, 3, 0, top, differential=x_differential,
                         complex_id="x-complex", top_q=4)


DROPPED = ("x", "y", "D")


def _project(slab: TruncatedSlab, vectors) -> list:
    keep = {n for n, (_, w) in enumerate(slab.basis.monomials) if w != DROPPED}
    return [{k: c for k, c in v.items() if k in keep} for v in vectors]


def hh3_bound_at(algebra, n: int, sigma: int) -> int:
    slab = x_slab(algebra, n + sigma)
    dim = len(slab.basis)
    pz = _project(slab, slab.cocycles(n).vectors)
    pb = ratmat.echelonize(dim, _project(slab, slab.boundary_space.vectors))
    both = ratmat.echelonize(dim, list(pb.vectors) + pz)
    return both.dim - pb.dim


def hh3_lower_bound(algebra, trunc: Truncation | None = None):
    _require_three_lines(algebra)
    trunc = trunc or Truncation()
    return stabilize(lambda n, s: hh3_bound_at(algebra, n, s),
                     (trunc.e_bound, trunc.slack), trunc.max_e_bound, trunc.window)


def x_cocycle_check(algebra, top: int = 2) -> bool:
    """d3 d2 = 0 on every basis 2-cochain without an x̂∧ŷ slot."""
    for label in labels_at("x-complex", 2):
        if label == ("x", "y"):
            continue
        slab = TruncatedSlab(algebra, 2, 0, top, differential=x_differential,
                             complex_id="x-complex", top_q=4)
        for n, (_, w) in enumerate(slab.basis.monomials):
            if w == label and x_differential(x_differential(slab.basis.element(n))):
                return False
    return True


def printed_x_cocycles(algebra) -> dict:
    """The cocycles omega_2, omega_3, omega_4 as displayed for three lines."""
    _require_three_lines(algebra)
    p = algebra.parse
    t = algebra.slopes[1]
    tf = str(t)
    w2 = Cochain(algebra, 3, {
        ("x", "D", "E"): p("D^2 - 2 y D E + y^2 (E^2 - E)"),
        ("y", "D", "E"): p(f"({tf}) * (2 y D E + y (y + ({tf}) x) E + y^2 (E - E^2))"),
    })
    w3 = Cochain(algebra, 3, {("y", "D", "E"): p("D^2")})
    w4 = Cochain(algebra, 3, {("y", "D", "E"): p("x D")})
    return {"omega2": w2, "omega3": w3, "omega4": w4}


def solve_omega1(algebra, n: int = 4) -> Cochain:
    """A degree-zero 3-cocycle with x̂∧ŷ∧Ê component D^2 and no x̂∧ŷ∧D̂
    component, of smallest possible E-degree."""
    for level in range(n + 1):
        slab = x_slab(algebra, level)
        target = slab.basis.index[((0, 0, 2, 0), ("x", "y", "E"))]
        # no x̂∧ŷ∧D̂ part and nothing but D^2 in the x̂∧ŷ∧Ê slot
        excluded = {k for k, (_, w) in enumerate(slab.basis.monomials)
                    if w == DROPPED or (w == ("x", "y", "E") and k != target)}
        z = slab.cocycles(level)
        z = ratmat.intersect_coordinates(z, set(range(len(slab.basis))) - excluded)
        for v in z.vectors:
            if v.get(target):
                return slab.from_vector(ratmat.scale(v, 1 / v[target]))
    raise ValueError("no cocycle with the requested leading term")


def x_classes_independent(algebra, cochains, n: int = 4, sigma: int = 3) -> bool:
    """Independence of the classes modulo pi(B^3) (hence also modulo B^3)."""
    n = max([n] + [c.e_degree() for c in cochains])
    slab = x_slab(algebra, n + sigma)
    dim = len(slab.basis)
    pb = ratmat.echelonize(dim, _project(slab, slab.boundary_space.vectors))
    vecs = _project(slab, [slab.to_vector(c) for c in cochains])
    return ratmat.echelonize(dim, list(pb.vectors) + vecs).dim == pb.dim + len(cochains)


# Outer derivations --------------------------------------------------------


def _derivation_apply(algebra, images: dict, u):
    """Extend generator images to a derivation, applied to a PBW element."""
    out = algebra.zero()
    for key, coeff in u.terms.items():
        letters = [g for g, e in zip(algebra.generators, key) for _ in range(e)]
        for k, g in enumerate(letters):
            if not images[g]:
                continue
            left = algebra.normalize(letters[:k])
            right = algebra.normalize(letters[k + 1:])
            out = out + left * images[g] * right * coeff
    return out


def _relations(algebra):
    x, y, D, E = (algebra.gen(g) for g in "xyDE")
    F = algebra.from_polynomial(algebra.F)
    d = algebra.d_deg
    return [
        (y, x, algebra.zero()),
        (D, x, algebra.zero()),
        (D, y, F),
        (E, x, x),
        (E, y, y),
        (E, D, D * d),
    ]


@dataclass
class OuterDerivationReport:
    count: int
    well_defined: list
    abelian: bool
    independent: bool
    names: list = field(default_factory=list)

    @property
    def ok(self):
        return all(self.well_defined) and self.abelian and self.independent and self.count == 3

    def to_json(self):
        return {"count": self.count, "abelian": self.abelian, "independent": self.independent,
                "well_defined": self.well_defined, "lines": self.names}


def line_derivations(algebra):
    """For each line f: x, y and the others, the assignment
    x, y -> 0, D -> (F/f) d f/dy, E -> 1."""
    from .poly import Polynomial

    out = {}
    lines = [Polynomial(2, {(1, 0): 1})] + [Polynomial(2, {(0, 1): 1, (1, 0): t}) for t in algebra.slopes]
    for f in lines:
        fd = Polynomial.constant(2)
        for g in lines[1:]:
            if g != f:
                fd = fd * g
        images = {
            "x": algebra.zero(),
            "y": algebra.zero(),
            "D": algebra.from_polynomial(fd * f.diff(1)),
            "E": algebra.one(),
        }
        out[str(f)] = images
    return out


def outer_derivation_check(algebra, e_bound: int = 6) -> OuterDerivationReport:
    ders = line_derivations(algebra)
    gens = {g: algebra.gen(g) for g in algebra.generators}
    well = []
    for images in ders.values():
        ok = True
        for a, b, r in _relations(algebra):
            lhs = (commutator(_derivation_apply(algebra, images, a), b)
                   + commutator(a, _derivation_apply(algebra, images, b)))
            if lhs != _derivation_apply(algebra, images, r):
                ok = False
        well.append(ok)
    abelian = True
    names = list(ders)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            for g in algebra.generators:
                ab = _derivation_apply(algebra, ders[a], ders[b][g])
                ba = _derivation_apply(algebra, ders[b], ders[a][g])
                if ab != ba:
                    abelian = False
    # Each derivation has internal degree 0, so an inner derivation equal to a
    # combination is ad(u) with u in U_0 = k[E].  Unknowns: the combination
    # coefficients, then the coefficients of 1, E, ..., E^e_bound.
    nl = len(names)
    columns = []
    for a in names:
        columns.append({g: -ders[a][g] for g in algebra.generators})
    for m in range(e_bound + 1):
        em = algebra.monomial((0, 0, 0, m))
        columns.append({g: commutator(em, gens[g]) for g in algebra.generators})
    index: dict = {}
    cols = []
    for col in columns:
        v = {}
        for g, u in col.items():
            for key, c in u.terms.items():
                r = index.setdefault((g, key), len(index))
                v[r] = c
        cols.append(v)
    ker = ratmat.kernel_basis(SparseMatrix.from_columns(len(index), cols))
    independent = all(not any(k < nl for k in v) for v in ker.vectors)
    return OuterDerivationReport(len(names), well, abelian, independent, names)


# Full three-lines report --------------------------------------------------


@dataclass
class ThreeLinesReport:
    table: E2Table
    hh3_bound: int
    hh3_certificate: StabilizationCertificate
    hilbert: HilbertReport
    outer: OuterDerivationReport

    def to_json(self):
        return {
            "l": self.table.ell,
            "t": str(self.table.slopes[1]),
            "E2": self.table.grid,
            "hilbert": self.hilbert.series,
            "hh3_lower_bound": self.hh3_bound,
            "degenerate": self.hilbert.verdict == "degenerate",
            "outer_derivations": {"count": self.outer.count, "abelian": self.outer.abelian,
                                  "independent": self.outer.independent},
            "certificates": {
                "E2": [row[0].to_json() for row in self.table.certificates],
                "hh3": self.hh3_certificate.to_json(),
            },
        }


def three_lines_report(t, trunc: Truncation | None = None, jobs: int = 1) -> ThreeLinesReport:
    algebra = ArrangementAlgebra.three_lines(t)
    table = e2_table(algebra, trunc, jobs)
    bound, cert = hh3_lower_bound(algebra, trunc)
    return ThreeLinesReport(table, bound, cert, hilbert_series(table, bound), outer_derivation_check(algebra))


__all__ = [
    "E2Table",
    "HilbertReport",
    "InconsistentBound",
    "OuterDerivationReport",
    "ThreeLinesReport",
    "e2_table",
    "hh3_lower_bound",
    "hilbert_series",
    "hochschild_module",
    "outer_derivation_check",
    "printed_x_cocycles",
    "solve_omega1",
    "three_lines_report",
    "x_classes_independent",
    "x_cocycle_check",
    "x_differential",
]
