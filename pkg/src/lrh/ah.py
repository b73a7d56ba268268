"""Hochschild cohomology of A_h = k<x,y>/(yx - xy - h).

With S = k[x], H^*(S, A_h) is computed by A_h --[x, -]--> A_h; its kernel
is S and its cokernel is A_h / h A_h.  The derivation y = h d/dx acts by
nabla^0(s) = h s' and nabla^1(u) = -h' u, and HH(A_h) is read off the
two-column spectral sequence:

    HH^0 = ker nabla^0,  HH^1 = coker nabla^0 ⊕ ker nabla^1,  HH^2 = coker nabla^1.

Everything is cut to a window x-degree <= X, y-degree <= Y.  Classes live in
an outer x-range (X plus slack) so that images of the nabla maps can be read
in the same coordinates; boundary sources get a further x-slack.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ratmat
from .hochschild import delta
from .lifting import build_lifting, sharp
from .pbw import AhAlgebra, PbwElement
from .poly import Polynomial, poly_gcd
from .ratmat import SparseMatrix
from .slices import Cochain


@dataclass
class AhWindow:
    x_max: int = 8
    y_max: int = 6
    slack: int | None = None


@dataclass
class AhClosedForm:
    h: Polynomial
    d: Polynomial
    dim_s_h: int
    dim_s_d: int
    dim_ideal: int

    @classmethod
    def of(cls, h: Polynomial) -> "AhClosedForm":
        d = poly_gcd(h, h.diff(0))
        n = h.degree()
        # I = (h/d) S/(h): span of the remainders of (h/d) x^k
        g = h // d
        vecs = []
        for k in range(n):
            r = (g * Polynomial.monomial((k,))) % h
            vecs.append({e[0]: c for e, c in r.terms.items()})
        dim_i = ratmat.echelonize(max(n, 1), vecs).dim if n else 0
        return cls(h, d, n, d.degree(), dim_i)

    def hh_dims(self, y_max: int) -> tuple:
        rows = y_max + 1
        return (1, self.dim_s_h + self.dim_ideal * rows, self.dim_s_d * rows)

    def to_json(self):
        return {"h": str(self.h), "d": str(self.d), "dim_S/(h)": self.dim_s_h,
                "dim_S/(d)": self.dim_s_d, "dim_I": self.dim_ideal}


def _box(xmax: int, ymax: int) -> list:
    # high x-degree first, so boundary pivots sit there and the
    # representatives are the low x-degree monomials
    return sorted(((a, b) for a in range(xmax + 1) for b in range(ymax + 1)), key=lambda k: (-k[0], -k[1]))


class AhComplex:
    """The window of A_h --[x,-]--> A_h used for cohomology classes."""

    def __init__(self, algebra: AhAlgebra, window: AhWindow):
        self.algebra = algebra
        self.window = window
        dh = max(algebra.h.degree(), 0)
        self.slack = window.slack if window.slack is not None else dh + 1
        # sharp images of classes of y-degree b pick up x-degree b (deg h - 1)
        self.x_outer = window.x_max + self.slack + (window.y_max + 1) * dh
        src = _box(self.x_outer + self.slack, window.y_max + 1)
        # y^k h = sum binom(k, j) (h d/dx)^j(h) y^(k-j) raises x-degree by up
        # to deg h per power of y
        amb = _box(self.x_outer + self.slack + (window.y_max + 2) * dh, window.y_max + 1)
        self.ambient = amb
        self.index = {k: n for n, k in enumerate(amb)}
        images = [self.vector(delta(self._cochain(0, k))) for k in src]
        self.boundary_all = ratmat.echelonize(len(amb), images)
        self._cut: dict = {}

    def _cochain(self, q, key, c=1):
        label = ("x",) if q else ()
        return Cochain(self.algebra, q, {label: self.algebra.monomial(key, c)})

    def vector(self, c: Cochain) -> dict:
        u = c[("x",)] if c.q else c[()]
        return {self.index[k]: v for k, v in u.terms.items()}

    def element(self, v: dict, q: int = 1) -> Cochain:
        u = PbwElement(self.algebra, {self.ambient[n]: c for n, c in v.items()})
        return Cochain(self.algebra, q, {(("x",) if q else ()): u})

    def coords_in(self, xmax, ymax) -> set:
        return {n for n, (a, b) in enumerate(self.ambient) if a <= xmax and b <= ymax}

    def boundaries(self, xmax, ymax):
        key = (xmax, ymax)
        if key not in self._cut:
            self._cut[key] = ratmat.intersect_coordinates(self.boundary_all, self.coords_in(xmax, ymax))
        return self._cut[key]

    def coker_dim(self, xmax, ymax) -> int:
        return len(self.coords_in(xmax, ymax)) - self.boundaries(xmax, ymax).dim

    def h1_representatives(self) -> list:
        """Monomial positions left free by the boundaries, x-degree <= X.

        Free positions near the outer x-edge are truncation artifacts (their
        boundaries would need sources beyond the box) and are left out.
        """
        box = self.coords_in(self.x_outer, self.window.y_max)
        piv = set(self.boundaries(self.x_outer, self.window.y_max).pivots)
        free = [n for n in box - piv if self.ambient[n][0] <= self.window.x_max]
        return sorted(free, key=lambda n: (self.ambient[n][1], self.ambient[n][0]))

    def h1_coordinates(self, v: dict):
        box = self.coords_in(self.x_outer, self.window.y_max)
        if any(n not in box for n in v):
            return None
        r = self.boundaries(self.x_outer, self.window.y_max).echelon().reduce(v)
        reps = self.h1_representatives()
        pos = {n: j for j, n in enumerate(reps)}
        if any(n not in pos for n in r):
            return None
        return {pos[n]: c for n, c in r.items()}

    def h0_dims(self, xmax, ymax) -> int:
        box = sorted(self.coords_in(xmax, ymax))
        cols = [self.vector(delta(self._cochain(0, self.ambient[n]))) for n in box]
        return ratmat.kernel_basis(SparseMatrix.from_columns(len(self.ambient), cols)).dim


def ah_hochschild(h, q: int, window: AhWindow | None = None) -> dict:
    """Windowed H^q(S, A_h): dimension and representatives."""
    window = window or AhWindow()
    alg = h if isinstance(h, AhAlgebra) else AhAlgebra(h)
    if q >= 2:
        return {"q": q, "dim": 0, "representatives": []}
    cx = AhComplex(alg, window)
    if q == 0:
        box = sorted(cx.coords_in(window.x_max, window.y_max))
        cols = [cx.vector(delta(cx._cochain(0, cx.ambient[n]))) for n in box]
        ker = ratmat.kernel_basis(SparseMatrix.from_columns(len(cx.ambient), cols))
        reps = [cx.element({box[k]: c for k, c in v.items()}, 0) for v in ker.vectors]
        return {"q": 0, "dim": ker.dim, "representatives": [str(r) for r in reps]}
    reps = cx.h1_representatives()
    dim = cx.coker_dim(window.x_max, window.y_max)
    return {"q": 1, "dim": dim, "representatives": [str(cx.element({n: 1})) for n in reps]}


@dataclass
class AhNabla:
    q: int
    lifting: SparseMatrix
    closed_form: SparseMatrix

    @property
    def agree(self) -> bool:
        return self.lifting == self.closed_form


def _poly_vector(p: Polynomial) -> dict:
    return {e[0]: c for e, c in p.terms.items()}


def ah_nabla(h, q: int, window: AhWindow | None = None, complex_: AhComplex | None = None) -> AhNabla:
    """Matrices of nabla_y^q computed from the lifting of y and from the
    closed forms h s' and -h' u."""
    window = window or AhWindow()
    alg = h if isinstance(h, AhAlgebra) else AhAlgebra(h)
    lift = build_lifting("y", alg)
    hp = alg.h.diff(0)
    if q == 0:
        # polynomials of degree <= X + 1 into polynomials of degree <= X + deg h
        n_src = window.x_max + 2
        n_tgt = window.x_max + 1 + max(alg.h.degree(), 0)
        cols_l, cols_c = [], []
        for a in range(n_src):
            s = Cochain(alg, 0, {(): alg.monomial((a, 0))})
            out = sharp(lift, s)[()]
            cols_l.append({k[0]: c for k, c in alg.polynomial_part(out).terms.items()})
            cols_c.append(_poly_vector(alg.h * Polynomial.monomial((a,)).diff(0)))
        return AhNabla(0, SparseMatrix.from_columns(n_tgt, cols_l), SparseMatrix.from_columns(n_tgt, cols_c))
    cx = complex_ or AhComplex(alg, window)
    reps = cx.h1_representatives()
    dh = alg.h.degree()
    cols_l, cols_c = [], []
    for n in reps:
        a, b = cx.ambient[n]
        out = sharp(lift, cx.element({n: 1}))
        coords = cx.h1_coordinates(cx.vector(out))
        if coords is None:
            raise ArithmeticError("image class outside the window")
        cols_l.append(coords)
        r = (hp * Polynomial.monomial((a,)) * -1) % alg.h if dh > 0 else Polynomial(1)
        cf = cx.h1_coordinates({cx.index[(e[0], b)]: c for e, c in r.terms.items()})
        cols_c.append(cf)
    m = len(reps)
    return AhNabla(1, SparseMatrix.from_columns(m, cols_l), SparseMatrix.from_columns(m, cols_c))


@dataclass
class AhReport:
    h: str
    window: dict
    h_dims: tuple  # windowed H^0, H^1 of (S, A_h)
    hh_dims: tuple
    predicted: tuple
    nabla_agree: bool
    closed_form: AhClosedForm

    @property
    def match(self) -> bool:
        return self.hh_dims == self.predicted and self.nabla_agree

    def to_json(self):
        return {
            "h": self.h,
            "window": self.window,
            "H": list(self.h_dims),
            "HH": list(self.hh_dims),
            "closed_form": list(self.predicted),
            "closed_form_data": self.closed_form.to_json(),
            "nabla_agree": self.nabla_agree,
            "match": self.match,
        }


def ah_hh_dims(h, window: AhWindow | None = None) -> AhReport:
    window = window or AhWindow()
    alg = h if isinstance(h, AhAlgebra) else AhAlgebra(h)
    cx = AhComplex(alg, window)
    n0 = ah_nabla(alg, 0, window)
    n1 = ah_nabla(alg, 1, window, cx)
    X, Y = window.x_max, window.y_max
    # nabla^0 on k[x]: kernel among degree <= X, cokernel inside degree <= X
    m0 = n0.lifting
    src_le_x = [m0.apply({a: 1}) for a in range(X + 1)]
    hh0 = (X + 1) - ratmat.rank(SparseMatrix.from_columns(m0.rows, src_le_x))
    img0 = ratmat.image_basis(m0)
    inside = ratmat.intersect_coordinates(img0, range(X + 1))
    coker0 = (X + 1) - inside.dim
    # nabla^1 on the classes of y-degree <= Y (all of H^1 in the window)
    m1 = n1.lifting
    rk1 = ratmat.rank(m1)
    ker1 = m1.cols - rk1
    coker1 = m1.rows - rk1
    hh = (hh0, coker0 + ker1, coker1)
    cf = AhClosedForm.of(alg.h)
    h_dims = (cx.h0_dims(X, Y), cx.coker_dim(X, Y))
    return AhReport(str(alg.h), {"x_max": X, "y_max": Y, "slack": cx.slack}, h_dims, hh,
                    cf.hh_dims(Y), n0.agree and n1.agree, cf)


# Independent oracle for U / hU --------------------------------------------


def quotient_dims_oracle(h, x_max: int, y_max: int) -> dict:
    """dim of (A_h / h A_h) restricted to x-degree <= X', y-degree <= Y', for
    all X' <= x_max, Y' <= y_max, by enumerating the products h * x^a y^b."""
    alg = h if isinstance(h, AhAlgebra) else AhAlgebra(h)
    hh = alg.from_polynomial(alg.h)
    out = {}
    for X in range(x_max + 1):
        for Y in range(y_max + 1):
            box = [(a, b) for a in range(X + 1) for b in range(Y + 1)]
            index = {k: n for n, k in enumerate(box)}
            vecs = []
            for a in range(X + 1):
                for b in range(Y + 1):
                    prod = hh * alg.monomial((a, b))
                    if all(k in index for k in prod.terms):
                        vecs.append({index[k]: c for k, c in prod.terms.items()})
            out[(X, Y)] = len(box) - ratmat.echelonize(len(box), vecs).dim
    return out


def coker_dims_engine(h, x_max: int, y_max: int, slack: int | None = None) -> dict:
    """Windowed dims of coker [x, -] for all sub-windows, from one complex."""
    alg = h if isinstance(h, AhAlgebra) else AhAlgebra(h)
    cx = AhComplex(alg, AhWindow(x_max, y_max, slack))
    return {(X, Y): cx.coker_dim(X, Y) for X in range(x_max + 1) for Y in range(y_max + 1)}


def graded_pieces(cumulative: dict) -> dict:
    """Inclusion-exclusion from box dims to bidegree dims."""
    def get(X, Y):
        return cumulative.get((X, Y), 0) if X >= 0 and Y >= 0 else 0
    return {(X, Y): get(X, Y) - get(X - 1, Y) - get(X, Y - 1) + get(X - 1, Y - 1) for X, Y in cumulative}


__all__ = [
    "AhClosedForm",
    "AhComplex",
    "AhNabla",
    "AhReport",
    "AhWindow",
    "ah_hh_dims",
    "ah_hochschild",
    "ah_nabla",
    "coker_dims_engine",
    "graded_pieces",
    "quotient_dims_oracle",
]
