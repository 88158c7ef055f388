"""Lattice evaluation of monodromies, dressed monodromies and boundary charges.

Conventions: the interval is [-length, 0] cut into ``cells`` cells of width h.
The monodromy is ordered with larger x on the left, so

    T(lambda) = I + A/lambda + (V + O)/lambda^2 + O(lambda^-3),

with A = int j0, V = int j1 and O the ordered double integral of
j0(x1) j0(x2) over x1 > x2.  Dressing by K = k + f/lambda gives the charges
returned by ``boundary_charges_direct``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from ..errors import FitDegeneracyError, PoleProximityError, PrecisionWarning
from . import kernels

CONDITION_WARN = 1e10


def _kind(sigma):
    kind = getattr(sigma, "kind", sigma)
    if kind not in ("reflection", "twisted"):
        raise ValueError(f"sigma must be reflection or twisted, got {kind!r}")
    return kind


# --- current samples -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class CurrentSample:
    """Currents j0, j1 on the lattice points of [-length, 0].

    Values come from a recipe evaluable at any x: a constant pair, or a short
    Fourier sum whose coefficients are combinations of basis matrices.
    """

    N: int
    cells: int
    length: float
    recipe: dict
    _c0: np.ndarray = field(repr=False)
    _c1: np.ndarray = field(repr=False)
    _freqs: np.ndarray = field(repr=False)

    @classmethod
    def fourier(cls, N=2, cells=2000, length=1.0, seed=0, modes=3, amplitude=1.0, basis=None):
        """Seeded bandlimited currents ``sum_n a_n cos(w_n x) + b_n sin(w_n x)``.

        Frequencies ``w_n = (n + 1/2) pi / length`` are not commensurate with the
        interval, so lattice quadratures show their generic order.
        """
        rng = np.random.default_rng(seed)
        mats = np.eye(N * N).reshape(N * N, N, N) if basis is None else np.asarray(basis, dtype=float)
        decay = amplitude / (1.0 + np.arange(modes + 1))
        # shape (family, cos/sin, mode, N, N)
        w = rng.normal(size=(2, 2, modes + 1, len(mats)))
        coeffs = np.einsum("fcmb,bij->fcmij", w, mats) * decay[None, None, :, None, None]
        freqs = (np.arange(modes + 1) + 0.5) * math.pi / length
        recipe = {"kind": "fourier", "seed": int(seed), "modes": int(modes), "amplitude": float(amplitude)}
        return cls(N, int(cells), float(length), recipe, coeffs[0], coeffs[1], freqs)

    @classmethod
    def constant(cls, c0, c1=None, cells=2000, length=1.0):
        c0 = np.asarray(c0, dtype=float)
        c1 = np.zeros_like(c0) if c1 is None else np.asarray(c1, dtype=float)
        N = c0.shape[0]
        recipe = {"kind": "constant", "j0": c0.tolist(), "j1": c1.tolist()}
        return cls(N, int(cells), float(length), recipe, c0, c1, np.zeros(0))

    @classmethod
    def zero(cls, N=2, cells=2000, length=1.0):
        z = np.zeros((N, N))
        return cls.constant(z, z, cells, length)

    def with_cells(self, cells):
        return CurrentSample(self.N, int(cells), self.length, self.recipe, self._c0, self._c1, self._freqs)

    @property
    def h(self):
        return self.length / self.cells

    @property
    def x(self):
        return np.linspace(-self.length, 0.0, self.cells + 1)

    @property
    def midpoints(self):
        x = self.x
        return 0.5 * (x[1:] + x[:-1])

    @property
    def weights(self):
        """Trapezoid weights on the lattice points."""
        w = np.full(self.cells + 1, self.h)
        w[0] = w[-1] = 0.5 * self.h
        return w

    def at(self, xs):
        """(j0, j1) evaluated at the points ``xs`` as (len(xs), N, N) arrays."""
        xs = np.asarray(xs, dtype=float)
        if self.recipe["kind"] == "constant":
            shape = (len(xs), self.N, self.N)
            return np.broadcast_to(self._c0, shape).copy(), np.broadcast_to(self._c1, shape).copy()
        arg = np.outer(xs, self._freqs)
        cos, sin = np.cos(arg), np.sin(arg)
        out = []
        for c in (self._c0, self._c1):
            out.append(np.einsum("pm,mij->pij", cos, c[0]) + np.einsum("pm,mij->pij", sin, c[1]))
        return out[0], out[1]

    @property
    def j0(self):
        return self.at(self.x)[0]

    @property
    def j1(self):
        return self.at(self.x)[1]

    def describe(self):
        return {"N": self.N, "cells": self.cells, "length": self.length, "h": self.h, **self.recipe}


@dataclass(frozen=True)
class KSeries:
    """K(lambda) = k + f/lambda."""

    k: np.ndarray
    f: np.ndarray

    @classmethod
    def of(cls, k, f=None):
        k = np.asarray(k, dtype=float)
        return cls(k, np.zeros_like(k) if f is None else np.asarray(f, dtype=float))

    def __call__(self, lam):
        return self.k + self.f / lam

    @property
    def condition(self):
        return float(np.linalg.cond(self.k))


# --- monodromy -----------------------------------------------------------


def _check_pole(lam, eps):
    if abs(lam * lam - 1.0) < eps:
        raise PoleProximityError(f"lambda = {lam} is within {eps} of a pole of L")


def cell_generators(sample, lam, start=0, stop=None):
    xm = sample.midpoints[start:stop]
    j0, j1 = sample.at(xm)
    return sample.h * (lam * j0 + j1) / (lam * lam - 1.0)


def monodromy(sample, lam, eps=1e-6, start=0, stop=None):
    """Ordered product of exp(h L(lambda, x_mid)) over cells ``start:stop``."""
    _check_pole(lam, eps)
    return kernels.ordered_expm_product(cell_generators(sample, lam, start, stop))


def monodromy_closed_form(c0, c1, lam, length=1.0):
    """exp(length * L(lambda)) for constant currents."""
    return expm(length * (lam * np.asarray(c0) + np.asarray(c1)) / (lam * lam - 1.0))


@dataclass(frozen=True, eq=False)
class SeriesEstimates:
    T0: np.ndarray
    T1: np.ndarray  # int j0 + ordered double integral
    T1_j1: np.ndarray  # int j1 + ordered double integral
    ordered: np.ndarray
    h: float


def _integrals(sample):
    w = sample.weights
    j0, j1 = sample.at(sample.x)
    A = np.einsum("i,iab->ab", w, j0)
    V = np.einsum("i,iab->ab", w, j1)
    return w, j0, j1, A, V


def monodromy_series(sample, order=1):
    """T^(0) and T^(1) by trapezoid and triangle-rule quadrature."""
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    w, j0, _, A, V = _integrals(sample)
    O = kernels.ordered_pair_sum(j0, w) if order == 1 else np.zeros_like(A)
    return SeriesEstimates(A, A + O, V + O, O, sample.h)


# --- dressing ------------------------------------------------------------


def _K_at(K, lam):
    if isinstance(K, KSeries) or callable(K):
        return np.asarray(K(lam), dtype=float)
    return np.asarray(K, dtype=float)


def dressed_monodromy(sample, K, lam, sigma="reflection", eps=1e-6, return_condition=False):
    """T(lam) K(lam) T(-lam)^-1 (reflection) or T(lam) K(lam) T(-lam)^t (twisted)."""
    kind = _kind(sigma)
    Tp = monodromy(sample, lam, eps)
    Tm = monodromy(sample, -lam, eps)
    left = Tp @ _K_at(K, lam)
    cond = float(np.linalg.cond(Tm)) if kind == "reflection" else 1.0
    if kind == "reflection":
        if cond > CONDITION_WARN:
            warnings.warn(f"T(-lambda) is ill-conditioned (cond = {cond:.3e})", PrecisionWarning, stacklevel=2)
        out = np.linalg.solve(Tm.T, left.T).T
    else:
        out = left @ Tm.T
    return (out, cond) if return_condition else out


@dataclass(frozen=True, eq=False)
class ChargeEstimates:
    sigma: str
    method: str
    h: float
    T0: np.ndarray
    T1: np.ndarray
    T1_j1: np.ndarray
    calT0: np.ndarray  # full lambda^-1 coefficient, including f
    calT0_without_f: np.ndarray  # the same without the f term
    calT1: np.ndarray
    terms: dict = field(default_factory=dict)

    def as_record(self):
        return {
            "sigma": self.sigma,
            "method": self.method,
            "h": self.h,
            **{k: np.asarray(getattr(self, k)).tolist() for k in ("T0", "T1", "T1_j1", "calT0", "calT0_without_f", "calT1")},
        }


def boundary_charges_direct(sample, kseries, sigma="reflection"):
    """Quadrature of the boundary non-local charges.

    reflection:
      calT0 = int(j0 k + k j0) + f
      calT1 = int(j1 k - k j1) + A k A + A f + f A + O k + k O_<
    twisted:
      calT0 = int(j0 k - k j0^t) + f
      calT1 = int(j1 k + k j1^t) - A k A^t + A f - f A^t + O k + k O_<^t
    O_< is the ordered double integral over x1 < x2 (of j0^t j0^t when twisted).
    """
    kind = _kind(sigma)
    k, f = kseries.k, kseries.f
    w, j0, j1, A, V = _integrals(sample)
    series = monodromy_series(sample, 1)
    O = series.ordered
    rev = j0[::-1] if kind == "reflection" else np.transpose(j0, (0, 2, 1))[::-1]
    O_lt = kernels.ordered_pair_sum(rev, w[::-1])
    if kind == "reflection":
        terms = {
            "int_j0k_kj0": A @ k + k @ A,
            "int_j1k_kj1": V @ k - k @ V,
            "j0_k_j0": A @ k @ A,
            "f_terms": A @ f + f @ A,
            "ordered_gt_k": O @ k,
            "k_ordered_lt": k @ O_lt,
        }
        cal1 = sum(terms[n] for n in ("int_j1k_kj1", "j0_k_j0", "f_terms", "ordered_gt_k", "k_ordered_lt"))
    else:
        terms = {
            "int_j0k_kj0": A @ k - k @ A.T,
            "int_j1k_kj1": V @ k + k @ V.T,
            "j0_k_j0": -(A @ k @ A.T),
            "f_terms": A @ f - f @ A.T,
            "ordered_gt_k": O @ k,
            "k_ordered_lt": k @ O_lt,
        }
        cal1 = sum(terms[n] for n in ("int_j1k_kj1", "j0_k_j0", "f_terms", "ordered_gt_k", "k_ordered_lt"))
    cal0p = terms["int_j0k_kj0"]
    return ChargeEstimates(kind, "direct", sample.h, series.T0, series.T1, series.T1_j1, cal0p + f, cal0p, cal1, terms)


# --- expansion fit -------------------------------------------------------


def fit_inverse_powers(lams, values, degree):
    """Least-squares fit values(lam) = sum_{p<=degree} c_p lam^-p; returns c[0..degree]."""
    lams = np.asarray(lams, dtype=float)
    if len(set(np.round(lams, 14))) != len(lams):
        raise FitDegeneracyError("repeated spectral points in the fit grid")
    if len(lams) < degree + 1:
        raise FitDegeneracyError(f"{len(lams)} points cannot determine {degree + 1} coefficients")
    u = 1.0 / lams
    V = np.vander(u, degree + 1, increasing=True)
    if np.linalg.cond(V) > 1e14:
        raise FitDegeneracyError("fit matrix is numerically singular")
    Y = np.asarray(values, dtype=float).reshape(len(lams), -1)
    c, *_ = np.linalg.lstsq(V, Y, rcond=None)
    return c.reshape((degree + 1,) + np.asarray(values).shape[1:])


def _rel(a, b, scale):
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), scale))


@dataclass(frozen=True, eq=False)
class CrosscheckReport:
    sigma: str
    grid: tuple
    degree: int
    fitted: dict
    direct: ChargeEstimates
    discrepancy: dict
    t1_variant: dict

    def as_record(self):
        return {
            "sigma": self.sigma,
            "grid": list(self.grid),
            "degree": self.degree,
            "discrepancy": self.discrepancy,
            "t1_variant": self.t1_variant,
        }


def expansion_crosscheck(sample, kseries, sigma="reflection", grid=(8, 12, 16, 24), degree=None):
    """Fit the dressed monodromy in 1/lambda on +-grid and compare with quadrature.

    Also fits T(lambda) itself and reports which reading of T^(1) the fit
    supports.
    """
    kind = _kind(sigma)
    lams = np.concatenate([np.asarray(grid, float), -np.asarray(grid, float)])
    degree = len(lams) - 1 if degree is None else degree
    dressed = np.stack([dressed_monodromy(sample, kseries, l, kind) for l in lams])
    mono = np.stack([monodromy(sample, l) for l in lams])
    c = fit_inverse_powers(lams, dressed, degree)
    t = fit_inverse_powers(lams, mono, degree)
    direct = boundary_charges_direct(sample, kseries, kind)
    scale = max(1.0, float(np.linalg.norm(kseries.k)))
    disc = {
        "k": _rel(c[0], kseries.k, scale),
        "calT0": _rel(c[1], direct.calT0, scale),
        "calT0_without_f": _rel(c[1], direct.calT0_without_f, scale),
        "calT1": _rel(c[2], direct.calT1, scale),
    }
    variant = {
        "T0": _rel(t[1], direct.T0, 1.0),
        "T1_j0": _rel(t[2], direct.T1, 1.0),
        "T1_j1": _rel(t[2], direct.T1_j1, 1.0),
    }
    variant["matches"] = "j1" if variant["T1_j1"] <= variant["T1_j0"] else "j0"
    fitted = {"calT": c[:3], "T": t[:3]}
    return CrosscheckReport(kind, tuple(grid), degree, fitted, direct, disc, variant)


# --- convergence ---------------------------------------------------------


def convergence_order(quantity, sample, cells=(250, 500, 1000, 2000)):
    """Observed orders log2(|Q_h - Q_h/2| / |Q_h/2 - Q_h/4|) along a halving sequence."""
    vals = [np.asarray(quantity(sample.with_cells(m))) for m in cells]
    diffs = [float(np.linalg.norm(vals[i] - vals[i + 1])) for i in range(len(vals) - 1)]
    orders = []
    for a, b in zip(diffs, diffs[1:]):
        orders.append(math.log2(a / b) if b > 0 and a > 0 else float("nan"))
    return orders


def liouville_residual(sample, lam):
    """|det T - exp(int tr L)| / |det T|."""
    T = monodromy(sample, lam)
    w = sample.weights
    j0, j1 = sample.at(sample.x)
    trL = (lam * np.trace(j0, axis1=1, axis2=2) + np.trace(j1, axis1=1, axis2=2)) / (lam * lam - 1.0)
    d = np.linalg.det(T)
    return abs(d - math.exp(float(w @ trL))) / abs(d)
