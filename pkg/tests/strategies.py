"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from plane3jack.exactfield import HPolynomial, RationalFunction

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def hpolys(draw, max_deg=2, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        a = draw(st.integers(0, max_deg))
        b = draw(st.integers(0, max_deg))
        terms[(a, b)] = draw(small_q)
    return HPolynomial(terms)


@st.composite
def rfuncs(draw):
    num = draw(hpolys())
    den = draw(hpolys(max_deg=1, max_terms=3))
    if den.is_zero():
        den = HPolynomial({(0, 0): Fraction(1)})
    return RationalFunction(num, den)
