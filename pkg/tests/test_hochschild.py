from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lrh.cocycles import eta, zeta
from lrh.hochschild import (
    NotStable,
    TruncatedSlab,
    Truncation,
    classes_independent,
    cohomology,
    delta,
    is_cocycle,
)
from lrh.pbw import ArrangementAlgebra, commutator
from lrh.slices import Cochain

from .conftest import pbw_elements

ALG = ArrangementAlgebra.three_lines(1)
ALGS = [ArrangementAlgebra.three_lines(t) for t in (1, 2, -1)]


def dense_rank(rows):
    """Plain Gaussian elimination, kept apart from the sparse engine."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def centralizer_dim(alg, i, n):
    """dim of {u : [x,u] = [y,u] = 0} in degree i, E-degree <= n, by dense algebra."""
    from lrh.slices import SliceKey, basis

    src = basis(SliceKey("hochschild-koszul", 0, i, n), alg)
    cols = []
    images = [delta(src.element(k)) for k in range(src.dim)]
    keys = sorted({(w, m) for c in images for w, u in c.components.items() for m in u.terms})
    for c in images:
        cols.append([c[w].terms.get(m, Fraction(0)) for w, m in keys])
    if not keys:
        return src.dim
    rows = [list(r) for r in zip(*cols)]
    return src.dim - dense_rank(rows)


def test_delta_formulas():
    x, y, D = ALG.gen("x"), ALG.gen("y"), ALG.gen("D")
    c = delta(Cochain(ALG, 0, {(): D}))
    assert c[("x",)] == commutator(x, D)
    assert c[("y",)] == commutator(y, D)
    c1 = Cochain(ALG, 1, {("x",): D, ("y",): D * D})
    assert delta(c1)[("x", "y")] == commutator(x, D * D) - commutator(y, D)
    assert not delta(Cochain(ALG, 2, {("x", "y"): D}))


@given(st.sampled_from(ALGS).flatmap(lambda a: st.tuples(pbw_elements(a), pbw_elements(a))))
def test_delta_squared_zero(pair):
    u, v = pair
    alg = u.algebra
    assert not delta(delta(Cochain(alg, 0, {(): u})))
    assert not delta(delta(Cochain(alg, 1, {("x",): u, ("y",): v})))


@pytest.mark.parametrize("i", [0, 1, 3])
def test_h0_against_dense_centralizer(i):
    slab = TruncatedSlab(ALG, 0, i, 6)
    assert slab.dim(3) == centralizer_dim(ALG, i, 3)


@pytest.mark.parametrize("alg", ALGS)
def test_reference_dims(alg):
    trunc = Truncation(4, 3)
    assert cohomology(0, 0, alg, trunc).dim == 1
    assert cohomology(1, 0, alg, trunc).dim == 5
    assert cohomology(1, 1, alg, trunc).dim == 8


def test_report_round_trip():
    rep = cohomology(1, 0, ALG, Truncation(4, 3))
    assert all(is_cocycle(r) for r in rep.representatives)
    assert classes_independent(1, 0, rep.representatives)
    assert rep.to_json()["stabilization"]["verdict"] == "stable"


def test_h2_degree_zero_grows():
    # H^2_0 picks up one class per E-degree step, so it never settles.
    slabs = [TruncatedSlab(ALG, 2, 0, n + 3).dim(n) for n in (2, 3, 4, 5)]
    assert slabs == [3, 4, 5, 6]
    with pytest.raises(NotStable):
        cohomology(2, 0, ALG, Truncation(2, 3, max_e_bound=6))


def test_boundary_detection():
    slab = TruncatedSlab(ALG, 1, 0, 6)
    b = delta(Cochain(ALG, 0, {(): ALG.parse("E^2 + 3*E")}))
    assert slab.is_boundary(slab.to_vector(b), 3)
    assert all(c == 0 for c in slab.class_coordinates(slab.to_vector(b), 3))


@given(st.data())
def test_class_coordinates_ignore_boundaries(data):
    slab = TruncatedSlab(ALG, 1, 0, 6)
    eta1 = eta(ALG)[0]
    coeffs = data.draw(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
    u = ALG.zero()
    for m, c in enumerate(coeffs):
        u = u + ALG.monomial((0, 0, 0, m), c)
    b = delta(Cochain(ALG, 0, {(): u}))
    v1 = slab.class_coordinates(slab.to_vector(eta1), 3)
    v2 = slab.class_coordinates(slab.to_vector(eta1 + b), 3)
    assert v1 == v2


@pytest.mark.parametrize("t", [1, 2, -1, Fraction(1, 2)])
def test_eta_zeta(t):
    alg = ArrangementAlgebra.three_lines(t)
    assert all(is_cocycle(c) for c in eta(alg) + zeta(alg))
    assert classes_independent(1, 0, eta(alg))
    assert classes_independent(1, 1, zeta(alg))


def test_non_cocycle_rejected():
    with pytest.raises(ValueError):
        classes_independent(1, 0, [Cochain(ALG, 1, {("x",): ALG.gen("D")})])


def test_boundary_is_dependent():
    fy = Cochain(ALG, 1, {("y",): ALG.from_polynomial(ALG.F)})
    assert is_cocycle(fy)
    assert not classes_independent(1, 1, [fy])
