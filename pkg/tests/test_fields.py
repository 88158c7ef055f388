import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundary_lax.errors import IntegrationError, MissingRuleError
from boundary_lax.exact import RatFunc
from boundary_lax.fields import (
    BracketTable,
    FieldExpr,
    GeneratorSymbol,
    bracket_fields,
    canonicalize,
    delta,
    integrate,
    poisson_bracket,
)
from boundary_lax.lie import gl
from boundary_lax.pcm import build_pcm

F = FieldExpr
D = lambda m=0, p="x", q="y": F.distribution(delta(p, q, m))  # noqa: E731


def g(name, color=0, point="x", deriv=0):
    return F.generator(GeneratorSymbol(name, color, point, deriv))


def test_field_at_second_point_moves_to_first():
    # f(y) delta'(x - y) = f(x) delta' + f'(x) delta
    lhs = g("f", point="y") * D(1)
    assert lhs == g("f") * D(1) + g("f", deriv=1) * D(0)


def test_delta_orientation():
    assert D(0, "y", "x") == D(0)
    assert D(1, "y", "x") == -D(1)


@given(st.integers(0, 3))
def test_canonicalize_idempotent(m):
    e = g("f", point="y") * g("h", point="y") * D(m)
    assert canonicalize(e) == e


def test_integration_of_delta_and_derivative():
    e = g("f", point="y") * D(1)
    # int dy f(y) delta'(x - y) = f'(x)
    assert integrate(e, "y") == g("f", deriv=1)
    # int dx f(x) delta(x - y) = f(y)
    assert integrate(g("f") * D(0), "x") == g("f", point="y")


def test_integration_rejects_nonlinear_and_constant_terms():
    with pytest.raises(IntegrationError):
        integrate(g("f") * g("h"), "x")
    with pytest.raises(IntegrationError):
        integrate(F.const(1), "x")


def test_integrated_generator_drops_total_derivative():
    assert integrate(g("f", deriv=1), "x").is_zero()
    assert integrate(g("f"), "x") == g("f", point="")


def _toy_table():
    # {a(x), b(y)} = c(x) delta + delta', {a, a} = 0
    rules = {("a", 0, "b", 0): g("c") * D(0) + D(1)}
    return BracketTable(("a", "b", "c"), 1, rules, name="toy")


def test_bracket_antisymmetry_from_reversed_rule():
    t = _toy_table()
    ab = bracket_fields(g("a"), g("b", point="y"), t)
    ba = bracket_fields(g("b"), g("a", point="y"), t)
    assert ab == g("c") * D(0) + D(1)
    assert ba == -ab.rename_points({"x": "y", "y": "x"})


def test_leibniz_rule():
    t = _toy_table()
    lhs = bracket_fields(g("a") * g("a"), g("b", point="y"), t)
    assert lhs == (g("a") * g("c") * D(0) + g("a") * D(1)).scale(2)


@given(st.fractions(-3, 3, max_denominator=3), st.fractions(-3, 3, max_denominator=3))
def test_bilinearity(p, q):
    t = _toy_table()
    a = g("a").scale(p) + g("b").scale(q)
    b = g("b", point="y")
    assert bracket_fields(a, b, t) == bracket_fields(g("a"), b, t).scale(p)


def test_missing_rule():
    t = _toy_table()
    with pytest.raises(MissingRuleError):
        bracket_fields(g("z"), g("a", point="y"), t)


def test_pcm_table_satisfies_jacobi():
    m = build_pcm("gl(2)")
    assert m.table.jacobi_residual() == {}


def test_pcm_component_brackets():
    m = build_pcm("gl(2)")
    t = m.table
    j0 = [g("j0", a) for a in range(4)]
    j1y = [g("j1", a, "y") for a in range(4)]
    # the delta' coefficient of {j0^a, j1^b} is the inverse trace metric: E12 pairs with E21
    dp = delta("x", "y", 1)
    assert bracket_fields(j0[1], j1y[2], t).distribution_part(dp) == F.const(RatFunc.const(1))
    assert bracket_fields(j0[1], j1y[1], t).distribution_part(dp).is_zero()


def test_matrix_bracket_of_commuting_fields_vanishes():
    m = build_pcm("gl(2)")
    j1y = m.j1.rename_points({"x": "y"})
    assert poisson_bracket(m.j1, j1y, m.table).is_zero()
