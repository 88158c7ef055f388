from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from boundary_lax.errors import PoleError, UnsupportedGrowthError
from boundary_lax.exact import RatFunc, laurent_at_infinity
from conftest import points, polys, ratfuncs

lam, mu = RatFunc.var("lambda"), RatFunc.var("mu")


def _value(f, pt):
    try:
        return f.evaluate(pt)
    except PoleError:
        return None


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(ratfuncs(), ratfuncs(), points())
def test_evaluation_is_a_homomorphism(a, b, pt):
    va, vb = _value(a, pt), _value(b, pt)
    assume(va is not None and vb is not None)
    assert _value(a * b, pt) == va * vb
    assert _value(a + b, pt) == va + vb


@given(ratfuncs())
def test_canonical_form_is_unique(f):
    g = (f * (lam + 3)) / (lam + 3)
    assert g == f and hash(g) == hash(f) and str(g) == str(f)


@given(ratfuncs())
def test_derivative_leibniz(f):
    g = f * f
    assert g.derivative("lambda") == 2 * f * f.derivative("lambda")


def test_exact_simplification():
    assert (lam**2 - mu**2) / (lam - mu) == lam + mu
    assert ((1 / (lam - mu)) + (1 / (mu - lam))).is_zero()


def test_division_by_zero_raises():
    with pytest.raises(PoleError):
        lam / (lam - lam)


def test_substitution_into_a_pole_raises():
    with pytest.raises(PoleError):
        (1 / (lam - mu)).substitute({"mu": lam})


@given(polys(("mu",)), st.integers(0, 4))
def test_laurent_of_polynomial_over_power(p, k):
    # p(mu) / lambda^k has a single power
    f = p / lam**k
    s = laurent_at_infinity(f, "lambda", k + 2)
    assert s.powers() == ([] if p.is_zero() else [k])
    assert s[k] == p


def test_laurent_pcm_scalar():
    f = 1 / (lam**2 - 1)
    s = laurent_at_infinity(f, "lambda", 6)
    assert {k: s[k] for k in s.powers()} == {2: 1, 4: 1, 6: 1}


@given(ratfuncs(("lambda",)))
def test_laurent_partial_sum_agrees_to_order(f):
    try:
        s = laurent_at_infinity(f, "lambda", 5, max_growth=4)
    except UnsupportedGrowthError:
        return
    rest = f - s.partial_sum()
    tail = laurent_at_infinity(rest, "lambda", 5, max_growth=4)
    assert tail.powers() == []


def test_growth_guard():
    with pytest.raises(UnsupportedGrowthError):
        laurent_at_infinity(lam**3, "lambda", 2, max_growth=1)


def test_evaluate_requires_all_variables():
    with pytest.raises(KeyError):
        (lam + mu).evaluate({"lambda": Fraction(1)})


def test_backends_agree_on_canonical_prints():
    import os
    import subprocess
    import sys

    code = (
        "from boundary_lax.exact import BACKEND\n"
        "from boundary_lax.pcm import build_pcm, verify_model\n"
        "from boundary_lax.scenario.parser import parse_expression as p\n"
        "m = build_pcm('gl(2)')\n"
        "print(BACKEND, all(v.is_zero() for v in verify_model(m).values()))\n"
        "print(p('(lambda^2 - mu^2)/(3*lambda - 3*mu) + 1/(lambda^2 - 1)'))\n"
    )
    outs = {}
    for name in ("flint", "sympy"):
        env = {**os.environ, "BOUNDARY_LAX_POLY_BACKEND": name}
        r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
        head, expr = r.stdout.strip().splitlines()
        assert head == f"{name} True"
        outs[name] = expr
    assert outs["flint"] == outs["sympy"]
