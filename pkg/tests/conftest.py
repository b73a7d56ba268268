
import pytest
from hypothesis import settings, strategies as st

from lrh.pbw import AhAlgebra, ArrangementAlgebra, PbwElement

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@pytest.fixture(scope="session")
def three():
    return ArrangementAlgebra.three_lines(1)


def pbw_elements(algebra, max_exp=2, max_terms=4):
    nkey = len(algebra.generators)
    key = st.tuples(*[st.integers(0, max_exp)] * nkey)
    return st.dictionaries(key, rationals, max_size=max_terms).map(lambda t: PbwElement(algebra, t))


ALGEBRAS = [ArrangementAlgebra.three_lines(2), ArrangementAlgebra((0, 1, -1)), AhAlgebra("x^2-1")]


@st.composite
def algebra_triples(draw):
    alg = draw(st.sampled_from(ALGEBRAS))
    el = pbw_elements(alg)
    return alg, draw(el), draw(el), draw(el)
