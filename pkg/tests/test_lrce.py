from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lrh import ratmat
from lrh.lrce import (
    EulerianModuleData,
    WindowTooSmall,
    ce_full_dims,
    ce_matrices,
    euler_homotopy_check,
    lr_dims_shortcut,
)
from lrh.pbw import ArrangementAlgebra
from lrh.ratmat import SparseMatrix
from lrh.spectral import hochschild_module

from .test_ratmat import matrices


def free_module(ell, dims, nabla_d):
    """Eulerian module with E acting by j on N_j and no truncation."""
    return EulerianModuleData(
        ell=ell,
        dims=dims,
        inner={j: ratmat.echelonize(n, [{k: 1} for k in range(n)]) for j, n in dims.items()},
        nabla_D=nabla_d,
        nabla_E={j: SparseMatrix.identity(n).scaled(Fraction(j)) for j, n in dims.items()},
    )


@st.composite
def modules(draw):
    ell = draw(st.integers(3, 5))
    d = ell - 2
    j = draw(st.sampled_from([-2, -1, 0, 1, 2]))
    m = draw(matrices(max_dim=4))
    dims = {j: m.cols, j + d: m.rows}
    return free_module(ell, dims, {j: m}), j


def test_small_example():
    # D: k -> k zero map: everything survives
    m = free_module(3, {0: 1, 1: 1}, {0: SparseMatrix.zero(1, 1)})
    assert lr_dims_shortcut(m).dims == (1, 2, 1)
    assert ce_full_dims(m, 0) == (1, 2, 1)
    m = free_module(3, {0: 1, 1: 1}, {0: SparseMatrix.identity(1)})
    assert ce_full_dims(m, 0) == (0, 0, 0)


@given(modules())
def test_shortcut_matches_full_complex(mj):
    m, j = mj
    if j == 0:
        assert ce_full_dims(m, 0) == lr_dims_shortcut(m).dims
    else:
        assert ce_full_dims(m, j) == (0, 0, 0)
        assert euler_homotopy_check(m, j)


@given(modules())
def test_ce_differentials_compose_to_zero(mj):
    m, j = mj
    d0, d1 = ce_matrices(m, j)
    assert not (d1 @ d0).entries


@given(modules())
def test_euler_characteristic(mj):
    m, j = mj
    h = ce_full_dims(m, j)
    d = m.d
    assert h[0] - h[1] + h[2] == m.dims[j] - (m.dims[j + d] + m.dims[j]) + m.dims[j + d]


def test_homotopy_undefined_at_zero():
    m = free_module(3, {0: 1, 1: 1}, {0: SparseMatrix.identity(1)})
    with pytest.raises(ValueError):
        euler_homotopy_check(m, 0)


def test_window_too_small():
    m = free_module(3, {0: 1}, {})
    with pytest.raises(WindowTooSmall):
        ce_matrices(m, 0)


@pytest.mark.parametrize("q", [0, 1, 2])
def test_hochschild_coefficients(q):
    alg = ArrangementAlgebra.three_lines(1)
    m = hochschild_module(alg, q, [-2, -1, 0, 1, 2], 4, 3)
    assert m.check_eulerian()
    assert ce_full_dims(m, 0) == lr_dims_shortcut(m).dims
    for j in (-2, -1, 1, 2):
        assert ce_full_dims(m, j) == (0, 0, 0)
        assert euler_homotopy_check(m, j)
