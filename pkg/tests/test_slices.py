import json
from itertools import product

import pytest
from hypothesis import given, strategies as st

from lrh.pbw import ArrangementAlgebra
from lrh.slices import (
    Cochain,
    NotStable,
    OutsideSlab,
    SliceKey,
    basis,
    from_vector,
    label_str,
    labels_at,
    stabilize,
    to_vector,
)

ALG = ArrangementAlgebra.three_lines(1)
ALG4 = ArrangementAlgebra((0, 1, 2))


def count_by_brute_force(alg, q, i, e_bound):
    n = 0
    for w in labels_at("hochschild-koszul", q):
        deg = i + len(w)
        for a, b, c, m in product(range(deg + 1), range(deg + 1), range(deg + 1), range(e_bound + 1)):
            if a + b + alg.d_deg * c == deg:
                n += 1
    return n


def test_labels():
    assert labels_at("hochschild-koszul", 1) == [("x",), ("y",)]
    assert labels_at("hochschild-koszul", 3) == []
    assert len(labels_at("x-complex", 2)) == 6
    assert label_str(("x", "y")) == "x̂∧ŷ"
    with pytest.raises(ValueError):
        labels_at("ce", 0)


def test_key_validation():
    with pytest.raises(ValueError):
        SliceKey("nope", 0, 0, 3)
    with pytest.raises(ValueError):
        SliceKey("hochschild-koszul", 0, 0, -1)


@pytest.mark.parametrize("alg", [ALG, ALG4])
@pytest.mark.parametrize("q", [0, 1, 2])
@pytest.mark.parametrize("i", [-2, 0, 1, 3])
def test_dims_match_brute_force(alg, q, i):
    b = basis(SliceKey("hochschild-koszul", q, i, 3), alg)
    assert b.dim == count_by_brute_force(alg, q, i, 3)
    assert len(set(b.monomials)) == b.dim


def test_levels_nested():
    b = basis(SliceKey("hochschild-koszul", 1, 0, 4), ALG)
    sizes = [len(b.level(k)) for k in range(5)]
    assert sizes == sorted(sizes) and sizes[-1] == b.dim


def test_json_dump():
    b = basis(SliceKey("hochschild-koszul", 1, 0, 1), ALG)
    data = json.loads(b.dumps())
    assert data["dim"] == b.dim == len(data["monomials"])


def test_outside_slab():
    b = basis(SliceKey("hochschild-koszul", 0, 0, 1), ALG)
    with pytest.raises(OutsideSlab):
        to_vector(Cochain(ALG, 0, {(): ALG.parse("E^2")}), b)


@given(st.integers(0, 2), st.integers(-1, 3), st.data())
def test_vector_round_trip(q, i, data):
    b = basis(SliceKey("hochschild-koszul", q, i, 2), ALG)
    if not b.dim:
        return
    v = data.draw(st.dictionaries(st.integers(0, b.dim - 1), st.integers(-3, 3).filter(bool), max_size=5))
    c = from_vector(v, b)
    assert to_vector(c, b) == v
    assert from_vector(to_vector(c, b), b) == c


def test_stabilize_constant_and_growing():
    dims, cert = stabilize(lambda n, s: 7, (2, 1), window=3)
    assert dims == 7 and cert.verdict == "stable" and len(cert.trace) == 3
    dims, cert = stabilize(lambda n, s: min(n, 5), (2, 1), window=3)
    assert dims == 5 and cert.trace[-3][0] == 5
    with pytest.raises(NotStable) as err:
        stabilize(lambda n, s: n, (2, 1), max_n=8)
    assert err.value.certificate.verdict == "not-stable"
    assert json.dumps(err.value.certificate.to_json())
