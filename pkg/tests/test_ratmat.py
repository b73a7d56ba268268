from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lrh import ratmat
from lrh.ratmat import SparseMatrix, SubspaceBasis

from .conftest import rationals


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    ent = draw(st.dictionaries(st.tuples(st.integers(0, max(r - 1, 0)), st.integers(0, max(c - 1, 0))),
                               rationals, max_size=r * c))
    if not r or not c:
        ent = {}
    return SparseMatrix(r, c, ent)


def test_rank_examples():
    assert ratmat.rank(SparseMatrix.identity(3)) == 3
    assert ratmat.rank(SparseMatrix.zero(4, 2)) == 0
    assert ratmat.rank(SparseMatrix.from_dense([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert ratmat.kernel_basis(SparseMatrix.identity(3)).dim == 0
    assert ratmat.kernel_basis(SparseMatrix.zero(2, 3)).dim == 3
    k = ratmat.kernel_basis(SparseMatrix.from_dense([[1, 1, 0]]))
    assert k.dim == 2
    assert ratmat.membership({0: 1, 1: -1}, k) is not None
    assert ratmat.membership({2: 1}, k) is not None


def test_image_examples():
    assert ratmat.image_basis(SparseMatrix.identity(3)).dim == 3
    assert ratmat.image_basis(SparseMatrix.zero(3, 2)).dim == 0
    im = ratmat.image_basis(SparseMatrix.from_dense([[1], [2]]))
    assert im.vectors == ({0: 1, 1: 2},)


def test_membership_examples():
    s = ratmat.echelonize(2, [{0: 1}])
    assert ratmat.membership({}, s) == [0]
    assert ratmat.membership({0: 1}, s) == [1]
    assert ratmat.membership({0: 1, 1: 1}, s) is None
    with pytest.raises(ValueError):
        ratmat.membership({5: 1}, s)


def test_quotient_dim():
    assert ratmat.quotient_dim(5, SubspaceBasis(5)) == 5
    assert ratmat.quotient_dim(3, ratmat.image_basis(SparseMatrix.identity(3))) == 0
    assert ratmat.quotient_dim(4, ratmat.echelonize(4, [{1: 3}])) == 3


def test_subspace_basis_rejects_bad_pivots():
    with pytest.raises(ValueError):
        SubspaceBasis(3, ({1: 1}, {0: 1}))
    with pytest.raises(ValueError):
        SubspaceBasis(3, ({0: 2},))


def test_no_stored_zeros():
    m = SparseMatrix(2, 2, {(0, 0): 0, (1, 1): Fraction(1, 2)})
    assert m.entries == {(1, 1): Fraction(1, 2)}
    with pytest.raises(IndexError):
        SparseMatrix(2, 2, {(2, 0): 1})


@given(matrices())
def test_rank_nullity(m):
    assert ratmat.rank(m) + ratmat.kernel_basis(m).dim == m.cols


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in ratmat.kernel_basis(m).vectors:
        assert m.apply(v) == {}


@given(matrices(), st.data())
def test_membership_iff_solvable(m, data):
    v = data.draw(st.dictionaries(st.integers(0, max(m.rows - 1, 0)), rationals, max_size=m.rows)) if m.rows else {}
    v = ratmat.clean(v)
    coeffs = ratmat.membership(v, ratmat.image_basis(m))
    x = ratmat.solve(m, v)
    assert (coeffs is None) == (x is None)
    if x is not None:
        assert m.apply(x) == v


@given(matrices(), st.randoms(use_true_random=False))
def test_rank_permutation_invariant(m, rnd):
    rp = list(range(m.rows))
    cp = list(range(m.cols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    p = SparseMatrix(m.rows, m.cols, {(rp[r], cp[c]): v for (r, c), v in m.entries.items()})
    assert ratmat.rank(p) == ratmat.rank(m)
    assert ratmat.kernel_basis(p).dim == ratmat.kernel_basis(m).dim


@given(matrices())
def test_rank_matches_echelon(m):
    assert ratmat.rank(m) == ratmat.echelonize(m.cols, m.row_vectors()).dim


@given(matrices(), matrices())
def test_intersection_coordinates(a, b):
    s = ratmat.image_basis(a)
    keep = set(range(0, s.ambient_dim, 2))
    cut = ratmat.intersect_coordinates(s, keep)
    for v in cut.vectors:
        assert set(v) <= keep
        assert ratmat.membership(v, s) is not None
