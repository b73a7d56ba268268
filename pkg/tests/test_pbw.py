from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lrh.pbw import AhAlgebra, AlgebraMismatch, ArrangementAlgebra, PbwElement, bimodule_eval, commutator
from lrh.poly import BiTensor, Polynomial, difference_quotients, poly_gcd

from .conftest import ALGEBRAS, algebra_triples, pbw_elements, rationals


def act(u: PbwElement, p: Polynomial) -> Polynomial:
    """u acting on the polynomial ring as a differential operator."""
    alg = u.algebra
    out = Polynomial(alg.nvars)
    for key, c in u.terms.items():
        q = p
        # rightmost generator acts first
        for gen, k in reversed(list(zip(alg.generators, key))):
            for _ in range(k):
                if gen in ("x", "y") and gen in ("x", "y")[: alg.nvars]:
                    q = Polynomial.variable(alg.nvars, "xy".index(gen)) * q
                else:
                    q = alg.derivation(gen)(q)
        out = out + q * Polynomial.constant(alg.nvars, c)
    return out


def test_three_lines_relations(three):
    x, y, D, E = (three.gen(g) for g in "xyDE")
    F = three.from_polynomial(three.F)
    assert commutator(D, y) == F
    assert commutator(D, x) == three.zero()
    assert commutator(E, x) == x
    assert commutator(E, D) == D
    assert commutator(E, F) == F * 2
    assert three.saito_check()


def test_e_d_commutator_general():
    for slopes in [(0, 1), (0, 1, 2), (0, 1, 2, 3)]:
        alg = ArrangementAlgebra(slopes)
        D, E = alg.gen("D"), alg.gen("E")
        assert commutator(E, D) == D * (alg.ell - 2)
        assert alg.saito_check()


def test_ah_relation():
    alg = AhAlgebra("x^2-1")
    x, y = alg.gen("x"), alg.gen("y")
    assert y * x - x * y == alg.parse("x^2 - 1")


def test_parse_format_examples(three):
    u = three.parse("y*x + 2*D*E - 1/2")
    assert u == three.gen("x") * three.gen("y") + three.gen("D") * three.gen("E") * 2 - three.scalar(Fraction(1, 2))
    assert three.parse(three.format(u)) == u
    with pytest.raises(ValueError):
        three.parse("x +* y")


def test_bad_arrangements():
    for slopes in [(0,), (1, 2), (0, 1, 1)]:
        with pytest.raises(ValueError):
            ArrangementAlgebra(slopes)
    with pytest.raises(ValueError):
        AhAlgebra("0")


def test_mixed_algebras_rejected():
    a, b = ArrangementAlgebra.three_lines(1), ArrangementAlgebra.three_lines(2)
    with pytest.raises(AlgebraMismatch):
        a.gen("x") + b.gen("x")


def test_bimodule_eval(three):
    x = Polynomial.variable(2, 0)
    bt = BiTensor.pure(x, Polynomial.constant(2), 1)
    u = three.gen("D")
    assert bimodule_eval(bt, u) == three.gen("x") * u


@given(algebra_triples())
def test_associative(triple):
    _, u, v, w = triple
    assert (u * v) * w == u * (v * w)


@given(algebra_triples())
def test_distributive(triple):
    _, u, v, w = triple
    assert u * (v + w) == u * v + u * w
    assert (v + w) * u == v * u + w * u


@given(algebra_triples())
def test_jacobi(triple):
    _, u, v, w = triple
    j = commutator(u, commutator(v, w)) + commutator(v, commutator(w, u)) + commutator(w, commutator(u, v))
    assert not j


@given(algebra_triples(), st.data())
def test_action_is_a_homomorphism(triple, data):
    alg, u, v, _ = triple
    exps = data.draw(st.tuples(*[st.integers(0, 3)] * alg.nvars))
    p = Polynomial.monomial(exps)
    assert act(u * v, p) == act(u, act(v, p))


@given(algebra_triples())
def test_parse_format_round_trip(triple):
    alg, u, _, _ = triple
    assert alg.parse(alg.format(u)) == u


@given(st.sampled_from(ALGEBRAS[:2]).flatmap(pbw_elements))
def test_degree_components_sum(u):
    comps = u.algebra.degree_components(u)
    total = u.algebra.zero()
    for part in comps.values():
        total = total + part
    assert total == u
    E = u.algebra.gen("E")
    for deg, part in comps.items():
        assert commutator(E, part) == part * deg


polys1 = st.dictionaries(st.tuples(st.integers(0, 4)), rationals, max_size=4).map(lambda t: Polynomial(1, t))


@given(polys1, polys1.filter(bool))
def test_polynomial_division(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert not r or r.degree() < b.degree()


@given(polys1, polys1)
def test_gcd_divides(a, b):
    g = poly_gcd(a, b)
    if g:
        assert not a % g and not b % g


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), rationals, max_size=4))
def test_difference_quotients_telescope(terms):
    g = Polynomial(2, terms)
    dx, dy = difference_quotients(g)
    # g(x1,y1) - g(x0,y0) = dx (x1 - x0) + dy (y1 - y0) in S (x) S
    x, y, one = Polynomial.variable(2, 0), Polynomial.variable(2, 1), Polynomial.constant(2)
    lhs = BiTensor.pure(one, g) - BiTensor.pure(g, one)
    rhs = dx * (BiTensor.pure(one, x) - BiTensor.pure(x, one)) + dy * (BiTensor.pure(one, y) - BiTensor.pure(y, one))
    assert lhs == rhs
