from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from boundary_lax.exact import RatFunc

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, variables=("lambda", "mu"), max_terms=3, max_deg=2):
    n = draw(st.integers(1, max_terms))
    total = RatFunc.const(0)
    for _ in range(n):
        c = draw(small)
        term = RatFunc.const(c)
        for v in variables:
            term = term * RatFunc.var(v) ** draw(st.integers(0, max_deg))
        total = total + term
    return total


@st.composite
def ratfuncs(draw, variables=("lambda", "mu")):
    num = draw(polys(variables))
    den = draw(polys(variables).filter(lambda p: not p.is_zero()))
    return num / den


@st.composite
def points(draw, variables=("lambda", "mu")):
    return {v: Fraction(draw(st.integers(-40, 40)), draw(st.integers(1, 7))) for v in variables}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
