import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from boundary_lax.errors import PoleError
from boundary_lax.exact import RatFunc
from boundary_lax.pcm import (
    PCMSpec,
    boundary_current_closure,
    build_pcm,
    charge_densities,
    fundamental_residual,
    pcm_lax_partner,
    restr_check,
    restr_enumerate_diagonal,
    verify_model,
)
from boundary_lax.sigma import AntiAutomorphism
from boundary_lax.tensor import MatrixRF, identity

REFL = AntiAutomorphism.reflection()
TWIST = AntiAutomorphism.twisted()
GL2 = build_pcm("gl(2)")


def test_model_properties_gl2():
    assert all(v.is_zero() for v in verify_model(GL2).values())


def test_gl3_cybe_and_fundamental():
    res = verify_model(build_pcm("gl(3)"))
    assert res["cybe"].is_zero() and res["fundamental"].is_zero()


def test_double_dprime_normalization_breaks_fundamental_bracket():
    assert not fundamental_residual(build_pcm("gl(2)", dprime_coefficient=2)).is_zero()


def test_sl2_model_is_consistent():
    res = verify_model(build_pcm("sl(2)"))
    assert res["cybe"].is_zero() and res["fundamental"].is_zero()


def test_spec_validation():
    with pytest.raises(ValueError):
        PCMSpec(GL2, AntiAutomorphism.custom(1, False), identity(2))
    with pytest.raises(PoleError):
        PCMSpec(GL2, REFL, MatrixRF.diag([1, 0]))
    with pytest.raises(ValueError):
        PCMSpec(GL2, REFL, MatrixRF.diag([RatFunc.var("lambda"), 1]))


@pytest.mark.parametrize("k", [identity(2), MatrixRF.diag([1, -1]), MatrixRF.from_rows([[0, 1], [1, 0]])])
def test_reflection_current_closure(k):
    assert restr_check(k, REFL).is_zero()
    assert boundary_current_closure(PCMSpec(GL2, REFL, k)).passed


def test_twisted_current_closure_identity():
    assert boundary_current_closure(PCMSpec(GL2, TWIST, identity(2))).passed


@pytest.mark.parametrize(
    "k",
    [MatrixRF.diag([1, -1]), MatrixRF.from_rows([[0, 1], [1, 0]]), MatrixRF.from_rows([[0, 1], [-1, 0]])],
    ids=["diag(1,-1)", "antidiag", "antisym"],
)
def test_twisted_current_closure_fails_beyond_identity(k):
    # restr holds, yet the stated two-current relation does not
    assert restr_check(k, TWIST).is_zero()
    assert not boundary_current_closure(PCMSpec(GL2, TWIST, k)).passed


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_twisted_restr_iff_symmetric_or_antisymmetric(v):
    k = MatrixRF.from_rows([v[:2], v[2:]])
    assume(k.det())
    sym = k.transpose() == k or k.transpose() == -k
    assert restr_check(k, TWIST).is_zero() == sym


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_reflection_restr_iff_square_is_scalar(v):
    k = MatrixRF.from_rows([v[:2], v[2:]])
    assume(k.det())
    k2 = k * k
    assert restr_check(k, REFL).is_zero() == (k2[0, 1] == 0 and k2[1, 0] == 0 and k2[0, 0] == k2[1, 1])


@pytest.mark.parametrize("N", [2, 3])
def test_diagonal_involutions_pass_restr(N):
    cases = restr_enumerate_diagonal(N)
    assert len(cases) == 2**N
    assert all(r.is_zero() for _, r in cases)


@pytest.mark.parametrize("k", [identity(2), MatrixRF.diag([1, -1])], ids=["I", "diag(1,-1)"])
def test_charge_densities(k):
    spec = PCMSpec(GL2, REFL, k)
    stated = charge_densities(spec, 3).residuals()
    assert stated[1].is_zero() and stated[2].is_zero()
    assert not stated[3].is_zero()
    assert all(v.is_zero() for v in charge_densities(spec, 3, corrected=True).residuals().values())


def test_charge_density_sign_of_spatial_square():
    # for k^2 = I the density built from k^-1 j1b differs in sign from the raw one
    spec = PCMSpec(GL2, REFL, MatrixRF.diag([1, -1]))
    ser = charge_densities(spec, 3, corrected=True)
    from boundary_lax.pcm import boundary_currents

    b = boundary_currents(spec)
    assert (ser.hatted.j1 * ser.hatted.j1).trace() == -(b.j1 * b.j1).trace()
    assert (ser.hatted.j0 * ser.hatted.j0).trace() == (b.j0 * b.j0).trace()


@pytest.mark.parametrize("sigma,k", [(REFL, MatrixRF.diag([1, -1])), (TWIST, identity(2))], ids=["refl", "twist"])
@pytest.mark.parametrize("n", [1, 2])
def test_lax_partner(sigma, k, n):
    _, res = pcm_lax_partner(PCMSpec(GL2, sigma, k), n)
    assert res.is_zero()
