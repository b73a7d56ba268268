import pytest
from hypothesis import given, settings, strategies as st

from lrh.ah import (
    AhClosedForm,
    AhWindow,
    ah_hh_dims,
    ah_hochschild,
    ah_nabla,
    coker_dims_engine,
    graded_pieces,
    quotient_dims_oracle,
)
from lrh.pbw import AhAlgebra, parse_polynomial
from lrh.poly import Polynomial

REFERENCE = {
    "1": (1, 0, 0),
    "x": (1, 1, 0),
    "x^2": (1, 9, 7),
    "x^3": (1, 17, 14),
    "x^2-1": (1, 2, 0),
    "x^3-x": (1, 3, 0),
}

small_h = st.lists(st.integers(-2, 2), min_size=1, max_size=4).map(
    lambda cs: Polynomial(1, {(k,): c for k, c in enumerate(cs)})).filter(bool)


@pytest.mark.parametrize("h,dims", REFERENCE.items())
def test_reference_dims(h, dims):
    rep = ah_hh_dims(h)
    assert rep.hh_dims == dims
    assert rep.predicted == dims
    assert rep.nabla_agree


def test_closed_form_data():
    cf = AhClosedForm.of(parse_polynomial("x^2", 1))
    assert (cf.dim_s_h, cf.dim_s_d, cf.dim_ideal) == (2, 1, 1)
    assert cf.hh_dims(6) == (1, 9, 7)


@given(small_h)
def test_squarefree_has_no_hh2(h):
    cf = AhClosedForm.of(h)
    if cf.d.degree() == 0:
        assert cf.dim_ideal == 0 and cf.hh_dims(3)[2] == 0
    assert cf.dim_ideal == cf.dim_s_d


@settings(max_examples=12, deadline=None)
@given(small_h)
def test_engine_matches_closed_form(h):
    assert ah_hh_dims(h, AhWindow(4, 2)).match


def test_window_changes_hh1():
    assert ah_hh_dims("x^2", AhWindow(8, 4)).hh_dims[1] == 7
    assert ah_hh_dims("x^2", AhWindow(3, 2)).hh_dims[1] == 5


def test_nabla_one_on_unit():
    n1 = ah_nabla("x^2", 1)
    assert n1.agree
    # the class of 1 goes to -h' = -2x
    alg = AhAlgebra("x^2")
    assert alg.h.diff(0) * -1 == parse_polynomial("-2x", 1)


def test_hochschild_of_s():
    data = ah_hochschild("x^2", 1, AhWindow(3, 2))
    assert data["dim"] == 2 * 3


@pytest.mark.parametrize("h", ["1", "x", "x^2", "x^2-1", "x^3-x"])
def test_quotient_oracle(h):
    assert quotient_dims_oracle(h, 5, 3) == coker_dims_engine(h, 5, 3)


@pytest.mark.parametrize("slack", [None, 4, 6])
def test_engine_slack_independent(slack):
    assert coker_dims_engine("x^3", 4, 2, slack) == coker_dims_engine("x^3", 4, 2)


def test_graded_pieces():
    pieces = graded_pieces(quotient_dims_oracle("x^2", 4, 2))
    # A_h / h A_h has basis x^a y^b with a < 2
    assert all(v == (1 if X < 2 else 0) for (X, Y), v in pieces.items())


def test_bad_h():
    with pytest.raises(ValueError):
        AhAlgebra("0")
