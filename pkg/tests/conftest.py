import pytest
from fractions import Fraction

from hypothesis import strategies as st

from delannoy.exact import GaussRational
from delannoy.multipoly import MultiPoly

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussRational, small_fractions, small_fractions)


@st.composite
def polys(draw, variables=("x", "r"), max_deg=3, max_terms=5, complex_coeffs=False):
    idx = {"x": 0, "y": 1, "r": 2, "t": 3}
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exp = [0, 0, 0, 0]
        for v in variables:
            exp[idx[v]] = draw(st.integers(0, max_deg))
        c = draw(gauss if complex_coeffs else small_fractions)
        terms[tuple(exp)] = c
    return MultiPoly.from_terms(terms)
