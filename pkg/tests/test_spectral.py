from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lrh.hochschild import Truncation
from lrh.pbw import ArrangementAlgebra
from lrh.slices import Cochain
from lrh.spectral import (
    E2Table,
    InconsistentBound,
    e2_table,
    hh3_lower_bound,
    hilbert_series,
    outer_derivation_check,
    printed_x_cocycles,
    solve_omega1,
    three_lines_report,
    x_classes_independent,
    x_cocycle_check,
    x_differential,
)

TRUNC = Truncation(4, 3)
PAGE3 = [[1, 3, 2], [0, 3, 3], [1, 1, 0]]


def table(grid):
    return E2Table(3, (0, 1), grid, [[None] * 3] * 3)


@pytest.mark.parametrize("t", [1, 2, -1])
def test_three_lines_page(t):
    assert e2_table(ArrangementAlgebra.three_lines(t), TRUNC).grid == PAGE3


def test_page_independent_of_start():
    alg = ArrangementAlgebra.three_lines(1)
    assert e2_table(alg, Truncation(6, 4)).grid == PAGE3


def test_parallel_rows():
    alg = ArrangementAlgebra.three_lines(2)
    assert e2_table(alg, TRUNC, jobs=3).grid == PAGE3


def test_anti_diagonals():
    assert table(PAGE3).anti_diagonals() == [1, 3, 6, 4, 0]


def test_hilbert_branches():
    assert hilbert_series(table(PAGE3)).verdict == "assumed-degenerate"
    rep = hilbert_series(table(PAGE3), 4)
    assert (rep.series, rep.verdict) == ([1, 3, 6, 4], "degenerate")
    rep = hilbert_series(table(PAGE3), 3)
    assert (rep.series, rep.verdict) == ([1, 3, 5, 3], "non-degenerate")
    with pytest.raises(InconsistentBound):
        hilbert_series(table(PAGE3), 5)
    with pytest.raises(InconsistentBound):
        hilbert_series(table(PAGE3), 2)


@given(st.lists(st.lists(st.integers(0, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_series_total_matches_page(grid):
    rep = hilbert_series(table(grid))
    assert sum(rep.series) == sum(map(sum, grid))


@pytest.mark.parametrize("t", [1, 2, -1])
def test_hh3_bound(t):
    bound, cert = hh3_lower_bound(ArrangementAlgebra.three_lines(t), TRUNC)
    assert bound == 4 and cert.verdict == "stable"


def test_x_complex():
    alg = ArrangementAlgebra.three_lines(1)
    assert x_cocycle_check(alg)
    ws = printed_x_cocycles(alg)
    for w in ws.values():
        assert not x_differential(w)
    w1 = solve_omega1(alg)
    assert w1[("x", "y", "E")] == alg.parse("D^2")
    assert not w1[("x", "y", "D")]
    assert not x_differential(w1)
    assert x_classes_independent(alg, [w1] + list(ws.values()))
    with pytest.raises(ValueError):
        x_differential(Cochain(alg, 1, {("x",): alg.one()}))


def test_x_complex_needs_three_lines():
    with pytest.raises(ValueError):
        hh3_lower_bound(ArrangementAlgebra((0, 1, 2)), TRUNC)


@pytest.mark.parametrize("slopes", [(0, 1), (0, -1), (0, Fraction(1, 2)), (0, 1, 2)])
def test_outer_derivations(slopes):
    alg = ArrangementAlgebra(slopes)
    rep = outer_derivation_check(alg)
    assert all(rep.well_defined) and rep.abelian and rep.independent
    assert rep.count == alg.ell


@pytest.mark.parametrize("slopes,series", [
    ((0, 1, 2), [1, 4, 8, 5]),
    ((0, 1, 2, 3), [1, 5, 9, 5]),
    ((0, 1, 2, 3, 4), [1, 6, 11, 6]),
])
def test_more_lines(slopes, series):
    rep = hilbert_series(e2_table(ArrangementAlgebra(slopes), TRUNC))
    assert rep.series == series


def test_report_json():
    data = three_lines_report(-1, TRUNC).to_json()
    assert data["E2"] == PAGE3 and data["hilbert"] == [1, 3, 6, 4] and data["degenerate"]
