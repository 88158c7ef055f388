import pytest

from boundary_lax.errors import NotALieBasisError
from boundary_lax.lie import casimir, custom, gl, named_algebra, pi_identity_check, sl, so3, structure_constants
from boundary_lax.tensor import MatrixRF, identity, permutation


@pytest.mark.parametrize("N", [2, 3])
def test_gl_casimir_is_permutation(N):
    c = casimir(gl(N))
    assert c.Pi == permutation(N)
    assert (c.alpha, c.c) == (1, 0)


@pytest.mark.parametrize("N", [2, 3])
def test_sl_casimir(N):
    c = casimir(sl(N))
    assert c.Pi == permutation(N) - identity(N, 2).scale(1 / __import__("fractions").Fraction(N))


@pytest.mark.parametrize("basis", [gl(2), sl(2), sl(3), so3()])
def test_structure_constants_jacobi(basis):
    assert structure_constants(basis).jacobi_residual() == 0


def test_so3_antisymmetric():
    sc = structure_constants(so3())
    assert sc.metric_is_scalar() and sc.fully_antisymmetric()


@pytest.mark.parametrize("basis", [gl(2), sl(2), so3()])
def test_pi_identities(basis):
    first, second = pi_identity_check(basis)
    assert all(r.is_zero() for r in first + second)


def test_su_realized_as_sl():
    assert named_algebra("su(2)").pi == sl(2).pi


def test_non_closing_basis_rejected():
    a = MatrixRF.from_rows([[0, 1], [0, 0]])
    b = MatrixRF.from_rows([[0, 0], [1, 0]])
    with pytest.raises(NotALieBasisError):
        structure_constants(custom("bad", [a, b]))


def test_unknown_algebra():
    with pytest.raises(NotALieBasisError):
        named_algebra("e(8)")
