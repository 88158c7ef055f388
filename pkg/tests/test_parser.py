import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundary_lax.errors import ExpressionSyntaxError, PoleError
from boundary_lax.exact import RatFunc
from boundary_lax.pcm import pcm_r_coefficient, pcm_s_coefficient
from boundary_lax.scenario.parser import format_expression, parse_expression
from conftest import ratfuncs

lam, mu = RatFunc.var("lambda"), RatFunc.var("mu")


def test_pcm_coefficients():
    r = parse_expression("1/(2*(lambda-mu)) * (mu^2/(mu^2-1) + lambda^2/(lambda^2-1))")
    assert r == pcm_r_coefficient()
    s = parse_expression("-(lambda + mu) / (2*(lambda^2 - 1)*(mu^2 - 1))")
    assert s == pcm_s_coefficient()


def test_incomplete_expression_position():
    with pytest.raises(ExpressionSyntaxError) as e:
        parse_expression("lambda + ")
    assert e.value.position == 9 and (e.value.line, e.value.column) == (1, 10)


def test_line_and_column():
    with pytest.raises(ExpressionSyntaxError) as e:
        parse_expression("lambda +\n  * mu")
    assert (e.value.line, e.value.column) == (2, 3)


@pytest.mark.parametrize(
    "text", ["x + 1", "lambda ^ mu", "(lambda", "lambda)", "2 $ 3", "lambda ^ 1.5", ""]
)
def test_syntax_errors_carry_positions(text):
    with pytest.raises(ExpressionSyntaxError) as e:
        parse_expression(text)
    assert 0 <= e.value.position <= len(text)


@pytest.mark.parametrize("text", ["1/(lambda - lambda)", "(mu - mu)^-1"])
def test_division_by_zero(text):
    with pytest.raises(PoleError):
        parse_expression(text)


def test_precedence_and_unary_minus():
    assert parse_expression("-lambda^2") == -(lam**2)
    assert parse_expression("2 - 3 - 4") == -5
    assert parse_expression("12 / 3 / 2") == 2
    assert parse_expression("lambda^-2 * lambda^2") == 1
    assert parse_expression("0.25 * mu") == mu / 4


@given(ratfuncs(("lambda", "mu", "nu")))
def test_round_trip(f):
    text = format_expression(f)
    assert parse_expression(text) == f
    assert format_expression(parse_expression(text)) == text


atoms = st.sampled_from(["lambda", "mu", "nu", "1", "2", "3/4", "0.5"])


def _compose(children):
    return st.one_of(
        st.tuples(children, st.sampled_from("+-*"), children).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        children.map(lambda c: f"-{c}"),
        st.tuples(children, st.integers(-3, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
        st.tuples(children, children).map(lambda t: f"{t[0]}/({t[1]})"),
    )


@given(st.recursive(atoms, _compose, max_leaves=8))
def test_grammar_valid_strings_parse(text):
    try:
        parse_expression(text)
    except PoleError:
        pass  # a well-formed expression may still divide by zero


@given(st.text(alphabet="lambdmu0123456789+-*/^() .", max_size=20))
def test_failures_always_carry_a_position(text):
    try:
        parse_expression(text)
    except ExpressionSyntaxError as e:
        assert 0 <= e.position <= len(text)
    except PoleError:
        pass
