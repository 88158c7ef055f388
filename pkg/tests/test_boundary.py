import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundary_lax.boundary import (
    MU,
    closure_check,
    constraint_report,
    cybe_residual,
    lax_at,
    leg1,
    leg2,
    sigma1,
    sigma2,
    sigma12,
    skew_residual,
    symmetry_residual,
    trace_commute,
)
from boundary_lax.errors import PoleError, ShapeMismatchError
from boundary_lax.exact import RatFunc
from boundary_lax.fields import FieldExpr, delta, poisson_bracket
from boundary_lax.lie import gl
from boundary_lax.pcm import build_pcm
from boundary_lax.sigma import AntiAutomorphism
from boundary_lax.tensor import MatrixRF, commutator, identity, permutation

REFL = AntiAutomorphism.reflection()
TWIST = AntiAutomorphism.twisted()
PCM = build_pcm("gl(2)")
DX = FieldExpr.distribution(delta("x", "y"))
DPX = FieldExpr.distribution(delta("x", "y", 1))
lam, mu = RatFunc.var("lambda"), RatFunc.var("mu")


def test_yang_solution_solves_cybe():
    P = permutation(2)
    r = P.scale(1 / (lam - mu))
    assert cybe_residual(r, MatrixRF.zeros(2, 2)).is_zero()


def test_alt_third_term_fails_for_pcm():
    assert not cybe_residual(PCM.r, PCM.s, alt_third_term=True).is_zero()


@given(st.fractions(-3, 3, max_denominator=3).filter(lambda c: c != 0))
def test_scaled_yang_is_skew_not_symmetric(c):
    r = permutation(2).scale(c / (lam - mu))
    assert skew_residual(r).is_zero()
    assert not symmetry_residual(r).is_zero()


def test_cybe_shape_check():
    with pytest.raises(ShapeMismatchError):
        cybe_residual(identity(2), identity(2, 2))


@pytest.mark.parametrize("sigma", [REFL, TWIST], ids=lambda s: s.kind)
def test_sigma_transformed_fundamental_brackets(sigma):
    """Brackets of L^sigma with L follow from the fundamental one by the induced action."""
    L, table = PCM.L, PCM.table
    m, p, s = PCM.r - PCM.s, PCM.r + PCM.s, PCM.s
    Ls = sigma.on_lax(L)
    Lm = lax_at(L, MU)
    Lms = sigma.on_lax(Lm, MU)
    L1, L1s, L2, L2s = leg1(L), leg1(Ls), leg2(Lm), leg2(Lms)
    cases = [
        (Ls, Lm, -commutator(sigma1(m, sigma), L1s) + commutator(sigma1(p, sigma), L2), sigma1(s, sigma)),
        (L, Lms, commutator(sigma2(m, sigma), L1) - commutator(sigma2(p, sigma), L2s), sigma2(s, sigma)),
        (Ls, Lms, -commutator(sigma12(m, sigma), L1s) - commutator(sigma12(p, sigma), L2s), sigma12(s, sigma)),
    ]
    for A, B, delta_part, s_part in cases:
        lhs = poisson_bracket(A, lax_at(B, MU, "y"), table)
        assert (lhs - (delta_part * DX - s_part.scale(2) * DPX)).is_zero()


DIAG = [MatrixRF.diag([1, 1]), MatrixRF.diag([1, -1])]


@pytest.mark.parametrize("sigma", [REFL, TWIST], ids=lambda s: s.kind)
@pytest.mark.parametrize("k", DIAG, ids=["I", "diag(1,-1)"])
def test_closure_and_expanded_formula(sigma, k):
    rep = closure_check(PCM.L, k, sigma, PCM.table, PCM.r, PCM.s)
    assert rep.passed
    assert rep.raw_formula_residual.is_zero()
    assert rep.constraints.constraints_hold and rep.constraints.agree


def test_alternative_grouping_fails_even_for_identity():
    rep = closure_check(PCM.L, identity(2), REFL, PCM.table, PCM.r, PCM.s, alt_grouping=True)
    assert rep.passed  # closure itself is unaffected
    assert not rep.raw_formula_residual.is_zero()


def test_non_involutive_k_breaks_constraints_and_closure():
    k = MatrixRF.from_rows([[1, 1], [0, 2]])
    rep = constraint_report(k, PCM.r, PCM.s, REFL)
    assert not rep.constraints_hold
    assert rep.agree
    c = closure_check(PCM.L, k, REFL, PCM.table, PCM.r, PCM.s, with_raw_formula=False)
    assert not c.passed


def test_singular_k_rejected():
    with pytest.raises(PoleError):
        constraint_report(MatrixRF.from_rows([[1, 1], [1, 1]]), PCM.r, PCM.s, REFL)


def test_traces_do_not_commute_for_bad_k():
    k = MatrixRF.from_rows([[1, 1], [0, 2]])
    assert not trace_commute(PCM.L, k, REFL, PCM.table, 2, 2).is_zero()


@pytest.mark.parametrize("sigma", [REFL, TWIST], ids=lambda s: s.kind)
def test_first_traces_commute(sigma):
    assert trace_commute(PCM.L, MatrixRF.diag([1, -1]) if sigma is REFL else identity(2), sigma, PCM.table, 1, 2).is_zero()
