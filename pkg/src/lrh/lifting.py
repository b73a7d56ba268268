"""Liftings of derivations to the Koszul resolution and the induced action on
Hochschild cohomology.

For a derivation theta of S that is the restriction of an element of U (D, E
in the arrangement algebra, y in A_h), a lifting is a chain endomorphism
theta_q of the Koszul resolution P_q = S^e (x) Λ^q W over theta^e on S^e.  It
is stored on the free generators: ``values[q][w]`` is a list of
``(BiTensor, w')`` pairs with theta_q(1|1 (x) w) = sum bt (x) w'.

The sharp operator on a cochain phi is

    sharp(phi)(w) = theta phi(w) - phi(w) theta - phi(theta_q(1|1 (x) w))

and commutes with delta; the induced maps on cohomology are the nabla maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import ratmat
from .hochschild import VARIABLES, TruncatedSlab, Truncation, delta
from .pbw import bimodule_eval, commutator
from .poly import BiTensor, Polynomial, difference_quotients
from .ratmat import SparseMatrix, SubspaceBasis
from .slices import Cochain, NotStable, StabilizationCertificate, stabilize


@dataclass
class LiftingData:
    theta: str
    algebra: object
    values: dict  # {q: {label: [(BiTensor, label)]}}

    def on(self, q: int, label: tuple) -> list:
        return self.values.get(q, {}).get(label, [])

    def derivation(self):
        return self.algebra.derivation(self.theta)


def _labels(nvars, q):
    return [tuple(c) for c in combinations(VARIABLES[nvars], q)]


def build_lifting(theta: str, algebra, check: bool = True) -> LiftingData:
    n = algebra.nvars
    one = BiTensor.one(n)
    values: dict = {q: {w: [] for w in _labels(n, q)} for q in range(n + 1)}
    if theta == "E":
        for q in range(n + 1):
            for w in _labels(n, q):
                if q:
                    values[q][w] = [(one * q, w)]
    elif theta == "D":
        dx, dy = difference_quotients(algebra.F)
        values[1][("y",)] = [(dy, ("y",)), (dx, ("x",))]
        values[2][("x", "y")] = [(dy, ("x", "y"))]
    elif theta == "y":
        dx, _ = difference_quotients(algebra.h)
        values[1][("x",)] = [(dx, ("x",))]
    else:
        raise ValueError(f"no lifting for {theta!r}")
    lift = LiftingData(theta, algebra, values)
    if check and not lifting_identities_hold(lift):
        raise AssertionError(f"lifting of {theta} is not a chain map")
    return lift


# The Koszul resolution over S^e ------------------------------------------


def _var_tensor(nvars, v) -> BiTensor:
    """v|1 - 1|v."""
    p = Polynomial.variable(nvars, VARIABLES[nvars].index(v))
    one = Polynomial.constant(nvars)
    return BiTensor.pure(p, one) - BiTensor.pure(one, p)


def _add_into(out: dict, label, bt):
    out[label] = out[label] + bt if label in out else bt


def koszul_boundary(nvars, elem: dict) -> dict:
    """b on sum_w bt_w (x) w:  b(1|1 (x) v_0^...^v_{q-1}) = sum_j (-1)^j (v_j|1 - 1|v_j) (x) (omit j)."""
    out: dict = {}
    for w, bt in elem.items():
        for j, v in enumerate(w):
            term = bt * _var_tensor(nvars, v)
            _add_into(out, w[:j] + w[j + 1:], term if j % 2 == 0 else -term)
    return {w: bt for w, bt in out.items() if bt}


def apply_lifting(lift: LiftingData, q: int, elem: dict) -> dict:
    der = lift.derivation()
    out: dict = {}
    for w, bt in elem.items():
        _add_into(out, w, bt.apply_derivation(der))
        for bt2, w2 in lift.on(q, w):
            _add_into(out, w2, bt * bt2)
    return {w: bt for w, bt in out.items() if bt}


def lifting_identities_hold(lift: LiftingData) -> bool:
    n = lift.algebra.nvars
    one = BiTensor.one(n)
    # augmentation: the multiplication map kills theta_0(1|1)
    theta0 = apply_lifting(lift, 0, {(): one})
    if theta0.get((), BiTensor(n)).multiplied():
        return False
    for q in range(1, n + 1):
        for w in _labels(n, q):
            gen = {w: one}
            lhs = koszul_boundary(n, apply_lifting(lift, q, gen))
            rhs = apply_lifting(lift, q - 1, koszul_boundary(n, gen))
            diff = dict(lhs)
            for k, bt in rhs.items():
                _add_into(diff, k, -bt)
            if any(bt for bt in diff.values()):
                return False
    return True


# Sharp operators -----------------------------------------------------------


def sharp(lift: LiftingData, c: Cochain) -> Cochain:
    alg = c.algebra
    theta = alg.gen(lift.theta)
    out: dict = {}
    for w in _labels(alg.nvars, c.q):
        u = c[w]
        val = commutator(theta, u)
        for bt, w2 in lift.on(c.q, w):
            val = val - bimodule_eval(bt, c[w2])
        if val:
            out[w] = val
    return Cochain(alg, c.q, out)


def chain_map_check(lift: LiftingData, q: int, i: int, e_bound: int = 2) -> bool:
    """delta(sharp(b)) == sharp(delta(b)) for every slab basis cochain b."""
    slab = TruncatedSlab(lift.algebra, q, i, e_bound)
    for n in range(len(slab.basis)):
        b = slab.basis.element(n)
        if delta(sharp(lift, b)) != sharp(lift, delta(b)):
            return False
    return True


# nabla on truncated cohomology --------------------------------------------


class MembershipFailure(RuntimeError):
    pass


@dataclass
class CohomologySpace:
    """Truncated H^q(S,U)_i: outer classes at level N + sigma, inner ones at N.

    ``inner`` is the subspace spanned by classes with E-degree at most N,
    written in the outer coordinates.  Maps are applied to outer classes and
    read in the target's outer coordinates; kernels are taken on the inner
    subspace and cokernels of the inner target modulo the full image.
    """

    slab: TruncatedSlab
    n: int
    sigma: int

    @property
    def outer_level(self):
        return self.n + self.sigma

    @property
    def outer(self) -> list:
        return self.slab.representatives(self.outer_level)

    @property
    def dim(self) -> int:
        return len(self.outer)

    def coordinates(self, v: dict) -> list:
        coords = self.slab.class_coordinates(v, self.outer_level)
        if coords is None:
            raise MembershipFailure(f"not a cocycle in H^{self.slab.q}_{self.slab.i} at level {self.outer_level}")
        return coords

    def inner(self) -> SubspaceBasis:
        vecs = []
        for rep in self.slab.representatives(self.n):
            vecs.append({j: c for j, c in enumerate(self.coordinates(rep)) if c})
        return ratmat.echelonize(self.dim, vecs)

    def cochain(self, coords) -> Cochain:
        v: dict = {}
        for c, rep in zip(coords, self.outer):
            ratmat.axpy(v, Fraction(c), rep)
        return self.slab.from_vector(v)


def cohomology_space(algebra, q: int, i: int, n: int, sigma: int) -> CohomologySpace:
    return CohomologySpace(TruncatedSlab(algebra, q, i, n + 2 * sigma), n, sigma)


@dataclass
class NablaMatrix:
    theta: str
    q: int
    source_degree: int
    target_degree: int
    matrix: SparseMatrix
    source_inner: SubspaceBasis
    target_inner: SubspaceBasis
    e_bound: int = 0
    slack: int = 0
    source: CohomologySpace | None = None
    target: CohomologySpace | None = None

    def kernel_dim(self) -> int:
        cols = [self.matrix.apply(v) for v in self.source_inner.vectors]
        return len(cols) - ratmat.rank(SparseMatrix.from_columns(self.matrix.rows, cols))

    def image(self) -> SubspaceBasis:
        return ratmat.image_basis(self.matrix)

    def cokernel_dim(self) -> int:
        return self.target_inner.dim - ratmat.intersection_dim(self.target_inner, self.image())

    def ker_coker(self) -> tuple:
        return self.kernel_dim(), self.cokernel_dim()

    def to_json(self):
        return {
            "theta": self.theta,
            "q": self.q,
            "source_degree": self.source_degree,
            "target_degree": self.target_degree,
            "matrix": [[str(x) for x in row] for row in self.matrix.to_dense()],
            "kernel_dim": self.kernel_dim(),
            "cokernel_dim": self.cokernel_dim(),
            "e_bound": self.e_bound,
            "slack": self.slack,
        }


def theta_degree(algebra, theta: str) -> int:
    return algebra.d_deg if theta == "D" else 0


def nabla_between(lift: LiftingData, src: CohomologySpace, tgt: CohomologySpace) -> NablaMatrix:
    cols = []
    for rep in src.outer:
        image = sharp(lift, src.slab.from_vector(rep))
        coords = tgt.coordinates(tgt.slab.to_vector(image))
        cols.append({j: c for j, c in enumerate(coords) if c})
    m = SparseMatrix.from_columns(tgt.dim, cols)
    return NablaMatrix(lift.theta, src.slab.q, src.slab.i, tgt.slab.i, m, src.inner(), tgt.inner(),
                       src.n, src.sigma, src, tgt)


def nabla(theta: str, q: int, i: int, algebra, n: int = 6, sigma: int = 3, retries: int = 3) -> NablaMatrix:
    """The map on H^q(S,U)_i induced by theta; retries with a larger
    truncation when an image class cannot be located."""
    lift = build_lifting(theta, algebra)
    d = theta_degree(algebra, theta)
    for attempt in range(retries + 1):
        try:
            src = cohomology_space(algebra, q, i, n, sigma)
            tgt = src if d == 0 else cohomology_space(algebra, q, i + d, n, sigma)
            return nabla_between(lift, src, tgt)
        except MembershipFailure:
            if attempt == retries:
                raise
            n, sigma = n + 2, sigma + 2
    raise AssertionError("unreachable")


def nabla_ker_coker(theta: str, q: int, algebra, trunc: Truncation | None = None, i: int = 0):
    """Stabilized (dim ker, dim coker) of nabla_theta on H^q_i."""
    trunc = trunc or Truncation()

    def compute(n, sigma):
        return nabla(theta, q, i, algebra, n, sigma).ker_coker()

    return stabilize(compute, (trunc.e_bound, trunc.slack), trunc.max_e_bound, trunc.window)


@dataclass
class CokernelCheck:
    members: bool
    independent: bool
    spans: bool

    @property
    def ok(self):
        return self.members and self.independent and self.spans


def cokernel_classes(nm: NablaMatrix, cochains: list) -> CokernelCheck:
    """Do the classes of ``cochains`` lie in the target and form a basis of
    the cokernel of the map?"""
    tgt = nm.target
    vecs = [{j: c for j, c in enumerate(tgt.coordinates(tgt.slab.to_vector(c))) if c} for c in cochains]
    inner = nm.target_inner
    members = all(ratmat.membership(v, inner) is not None for v in vecs)
    hit = _intersection(inner, nm.image())
    combined = ratmat.echelonize(tgt.dim, hit + vecs)
    independent = combined.dim == len(hit) + len(vecs)
    spans = combined.dim == inner.dim
    return CokernelCheck(members, independent, spans)


def _intersection(a: SubspaceBasis, b: SubspaceBasis) -> list:
    """Basis vectors of the intersection of two subspaces."""
    n = a.ambient_dim
    # stack [a | a] and [b | 0]; kernel rows with zero first block lie in both
    vecs = [dict(list(v.items()) + [(n + k, c) for k, c in v.items()]) for v in a.vectors]
    vecs += [dict(v) for v in b.vectors]
    e = ratmat.echelonize(2 * n, vecs)
    return [{k - n: c for k, c in v.items()} for v in e.vectors if min(v) >= n]


def lie_morphism_check(q: int, i: int, algebra, n: int = 4, sigma: int = 3) -> bool:
    """[nabla_E, nabla_D] = (l - 2) nabla_D as maps H^q_i -> H^q_{i + l - 2}."""
    d = algebra.d_deg
    src = cohomology_space(algebra, q, i, n, sigma)
    tgt = cohomology_space(algebra, q, i + d, n, sigma)
    lift_d = build_lifting("D", algebra)
    lift_e = build_lifting("E", algebra)
    nd = nabla_between(lift_d, src, tgt).matrix
    ne_src = nabla_between(lift_e, src, src).matrix
    ne_tgt = nabla_between(lift_e, tgt, tgt).matrix
    return ne_tgt @ nd - nd @ ne_src == nd.scaled(Fraction(d))


__all__ = [
    "CohomologySpace",
    "LiftingData",
    "MembershipFailure",
    "NablaMatrix",
    "NotStable",
    "StabilizationCertificate",
    "build_lifting",
    "chain_map_check",
    "cokernel_classes",
    "cohomology_space",
    "difference_quotients",
    "lie_morphism_check",
    "nabla",
    "nabla_between",
    "nabla_ker_coker",
    "sharp",
]
