import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundary_lax.errors import FitDegeneracyError, PoleProximityError
from boundary_lax.monodromy.numeric import (
    CurrentSample,
    KSeries,
    boundary_charges_direct,
    convergence_order,
    dressed_monodromy,
    expansion_crosscheck,
    fit_inverse_powers,
    liouville_residual,
    monodromy,
    monodromy_closed_form,
    monodromy_series,
)

L = 1.0
C0 = np.array([[0.3, -0.2], [0.5, 0.1]])
C1 = np.array([[-0.1, 0.4], [0.2, -0.3]])
K_DIAG = np.diag([1.0, -1.0])
F = np.array([[0.1, 0.2], [-0.3, 0.05]])


def fourier(seed=3, cells=2000):
    return CurrentSample.fourier(2, cells=cells, seed=seed)


def test_zero_currents_give_identity_and_K():
    s = CurrentSample.zero(2, cells=50)
    assert np.array_equal(monodromy(s, 3.0), np.eye(2))
    K = KSeries.of(K_DIAG, F)
    assert np.allclose(dressed_monodromy(s, K, 3.0), K(3.0), atol=0, rtol=0)
    ser = monodromy_series(s)
    assert not ser.T0.any() and not ser.T1.any()


@pytest.mark.parametrize("lam", [2.0, -3.5, 10.0])
def test_constant_current_closed_form(lam):
    s = CurrentSample.constant(C0, C1, cells=2000)
    exact = monodromy_closed_form(C0, C1, lam, L)
    assert np.linalg.norm(monodromy(s, lam) - exact) / np.linalg.norm(exact) < 1e-8


def test_twisted_closed_form_identity_K():
    s = CurrentSample.constant(C0, C1, cells=2000)
    lam = 4.0
    want = monodromy_closed_form(C0, C1, lam) @ monodromy_closed_form(C0, C1, -lam).T
    got = dressed_monodromy(s, np.eye(2), lam, "twisted")
    assert np.linalg.norm(got - want) / np.linalg.norm(want) < 1e-8


def test_determinant_identity_reflection():
    s = fourier()
    lam = 2.5
    d = np.linalg.det(dressed_monodromy(s, np.eye(2), lam))
    assert d == pytest.approx(np.linalg.det(monodromy(s, lam)) / np.linalg.det(monodromy(s, -lam)), rel=1e-10)


def test_group_property():
    s = fourier(cells=1000)
    whole = monodromy(s, 3.0)
    left = monodromy(s, 3.0, start=0, stop=400)
    right = monodromy(s, 3.0, start=400)
    assert np.allclose(whole, right @ left, rtol=1e-12, atol=1e-12)


def test_pole_proximity():
    with pytest.raises(PoleProximityError):
        monodromy(fourier(cells=10), 1.0 + 1e-9)


def test_liouville():
    assert liouville_residual(fourier(), 3.0) < 1e-6


def test_constant_series_closed_forms():
    s = CurrentSample.constant(C0, C1, cells=500)
    ser = monodromy_series(s)
    assert np.allclose(ser.T0, C0 * L, rtol=1e-12)
    assert np.allclose(ser.ordered, (C0 @ C0) * L**2 / 2, rtol=1e-12)


def test_series_matches_expansion_of_T():
    s = fourier()
    grid = np.array([16, 24, 32, 48, -16, -24, -32, -48], float)
    c = fit_inverse_powers(grid, np.stack([monodromy(s, l) for l in grid]), 7)
    ser = monodromy_series(s)
    assert np.allclose(c[0], np.eye(2), atol=1e-9)
    assert np.linalg.norm(c[1] - ser.T0) / np.linalg.norm(ser.T0) < 1e-6


@pytest.mark.parametrize("sigma", ["reflection", "twisted"])
def test_charges_zero_currents(sigma):
    est = boundary_charges_direct(CurrentSample.zero(2, cells=20), KSeries.of(K_DIAG, F), sigma)
    assert np.array_equal(est.calT0, F)
    assert not est.calT1.any() and not est.calT0_without_f.any()


def test_identity_k_reflection_charge_is_twice_T0():
    s = fourier()
    est = boundary_charges_direct(s, KSeries.of(np.eye(2)), "reflection")
    assert np.allclose(est.calT0, 2 * est.T0, rtol=1e-13)


def test_constant_current_charge_closed_form():
    s = CurrentSample.constant(C0, C1, cells=2000)
    est = boundary_charges_direct(s, KSeries.of(K_DIAG, F), "reflection")
    A, V, k = C0 * L, C1 * L, K_DIAG
    O = A @ A / 2
    want = V @ k - k @ V + A @ k @ A + A @ F + F @ A + O @ k + k @ O
    assert np.linalg.norm(est.calT1 - want) / np.linalg.norm(want) < 1e-8


@pytest.mark.parametrize("sigma", ["reflection", "twisted"])
def test_convergence_order(sigma):
    s = fourier(cells=250)
    K = KSeries.of(K_DIAG if sigma == "reflection" else np.eye(2), F)
    cells = (250, 500, 1000, 2000)
    for q in (
        lambda t: monodromy(t, 3.0),
        lambda t: monodromy_series(t).T1,
        lambda t: boundary_charges_direct(t, K, sigma).calT1,
    ):
        orders = convergence_order(q, s, cells)
        assert all(1.7 <= o <= 2.3 for o in orders), orders


@pytest.mark.parametrize("sigma", ["reflection", "twisted"])
def test_crosscheck_constant_currents(sigma):
    s = CurrentSample.constant(C0, C1, cells=2000)
    K = KSeries.of(K_DIAG if sigma == "reflection" else np.eye(2), F)
    rep = expansion_crosscheck(s, K, sigma, grid=(16, 24, 32, 48))
    assert max(rep.discrepancy[k] for k in ("k", "calT0", "calT1")) < 1e-6
    assert rep.discrepancy["calT0_without_f"] > 1e-3  # the f term is needed
    assert rep.t1_variant["matches"] == "j1"


def test_crosscheck_discrepancy_shrinks_with_h():
    K = KSeries.of(K_DIAG, F)
    d = [expansion_crosscheck(fourier(cells=m), K, grid=(16, 24, 32, 48)).discrepancy["calT1"] for m in (250, 500)]
    assert 3.0 < d[0] / d[1] < 5.0


def test_fit_degeneracy():
    with pytest.raises(FitDegeneracyError):
        fit_inverse_powers([2.0, 2.0, 3.0], np.zeros((3, 2, 2)), 1)
    with pytest.raises(FitDegeneracyError):
        fit_inverse_powers([2.0, 3.0], np.zeros((2, 2, 2)), 3)


@given(st.integers(0, 2**31 - 1))
def test_samples_are_reproducible(seed):
    a, b = CurrentSample.fourier(2, cells=20, seed=seed), CurrentSample.fourier(2, cells=20, seed=seed)
    assert np.array_equal(a.j0, b.j0) and np.array_equal(a.j1, b.j1)


def test_ill_conditioned_warning():
    s = CurrentSample.constant(np.diag([40.0, -40.0]), cells=50)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        _, cond = dressed_monodromy(s, np.eye(2), 1.05, return_condition=True)
    assert cond > 1e10 and any("ill-conditioned" in str(x.message) for x in w)
