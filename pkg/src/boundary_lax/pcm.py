"""Principal chiral model: r/s pair, current algebra, boundary currents and charges."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .boundary import (
    LAM,
    MU,
    LaxPartner,
    boundary_lax,
    cybe_residual,
    lax_at,
    lax_partner,
    leg1,
    leg2,
    skew_residual,
    symmetry_residual,
    trace_power,
    zero_curvature_residual,
)
from .errors import PoleError
from .exact import RatFunc, laurent_at_infinity
from .fields import (
    FieldExpr,
    MatrixFieldExpr,
    component_brackets_from_matrix_rule,
    delta,
    field_matrix,
    poisson_bracket,
)
from .lie import LieBasis, casimir, gl, named_algebra
from .sigma import AntiAutomorphism
from .tensor import MatrixRF, commutator, identity, kron

_DX = delta("x", "y")
_DPX = delta("x", "y", 1)


@dataclass(frozen=True, eq=False)
class PCMModel:
    basis: LieBasis
    r: MatrixRF
    s: MatrixRF
    L: MatrixFieldExpr
    table: object
    j0: MatrixFieldExpr
    j1: MatrixFieldExpr
    dprime_coefficient: Fraction
    casimir_c: Fraction | None

    @property
    def N(self):
        return self.basis.N


def pcm_r_coefficient():
    l, m = RatFunc.var(LAM), RatFunc.var(MU)
    return (m**2 / (m**2 - 1) + l**2 / (l**2 - 1)) / (2 * (l - m))


def pcm_s_coefficient():
    l, m = RatFunc.var(LAM), RatFunc.var(MU)
    return -(l + m) / (2 * (l**2 - 1) * (m**2 - 1))


def current_bracket_rules(basis, dprime_coefficient=1):
    """Matrix-form current brackets {j_a(x) (x) j_b(y)} on an N-dimensional basis."""
    N = basis.N
    Pi = basis.pi
    I = identity(N)
    dx = FieldExpr.distribution(_DX)
    dpx = FieldExpr.distribution(_DPX)
    j0 = field_matrix("j0", basis, "x")
    j1 = field_matrix("j1", basis, "x")
    return {
        ("j0", "j0"): commutator(Pi, kron(I, j0)) * dx,
        ("j0", "j1"): commutator(Pi, kron(I, j1)) * dx + Pi.scale(dprime_coefficient) * dpx,
        ("j1", "j1"): MatrixFieldExpr.zeros(N, 2),
    }


def build_pcm(algebra="gl(2)", dprime_coefficient=1):
    """r, s, the Lax template and the current bracket table.

    ``dprime_coefficient`` multiplies Pi delta'(x - y) in {j0, j1}; the value 1
    is the one for which {L_1, L_2} closes on r and s above.
    """
    basis = named_algebra(algebra) if isinstance(algebra, str) else algebra
    Pi = basis.pi
    r = Pi.scale(pcm_r_coefficient())
    s = Pi.scale(pcm_s_coefficient())
    table = component_brackets_from_matrix_rule(
        current_bracket_rules(basis, dprime_coefficient), basis, name=f"pcm-{basis.name}"
    )
    j0 = field_matrix("j0", basis, "x")
    j1 = field_matrix("j1", basis, "x")
    l = RatFunc.var(LAM)
    L = (j0 * l + j1) * (1 / (l**2 - 1))
    return PCMModel(basis, r, s, L, table, j0, j1, Fraction(dprime_coefficient), casimir(basis).c)


def fundamental_residual(model):
    """{L_1(l,x), L_2(m,y)} - ([r-s, L_1] + [r+s, L_2]) delta + 2 s delta'."""
    L1 = model.L
    L2 = lax_at(model.L, MU, "y")
    lhs = poisson_bracket(L1, L2, model.table)
    La = leg1(model.L)
    Lb = leg2(lax_at(model.L, MU))
    rhs = (commutator(model.r - model.s, La) + commutator(model.r + model.s, Lb)) * FieldExpr.distribution(
        _DX
    ) - model.s.scale(2) * FieldExpr.distribution(_DPX)
    return lhs - rhs


def verify_model(model):
    """Exact residuals of the defining properties; every value is zero for a valid model."""
    return {
        "r_skew": skew_residual(model.r),
        "s_symmetric": symmetry_residual(model.s),
        "cybe": cybe_residual(model.r, model.s),
        "fundamental": fundamental_residual(model),
    }


# --- boundary currents ----------------------------------------------------


@dataclass(frozen=True)
class PCMSpec:
    model: PCMModel
    sigma: AntiAutomorphism
    k: MatrixRF

    def __post_init__(self):
        if self.sigma.kind not in ("reflection", "twisted"):
            raise ValueError("PCM boundary currents are defined for reflection or twisted sigma")
        if not self.k.det():
            raise PoleError("boundary matrix is not invertible")
        if not self.k.is_constant():
            raise ValueError("PCM boundary currents use a constant k")


@dataclass(frozen=True, eq=False)
class BoundaryCurrents:
    j0: MatrixFieldExpr
    j1: MatrixFieldExpr


def boundary_currents(spec, point="x"):
    """Reflection: (j0 k + k j0, j1 k - k j1); twisted: (j0 k - k j0^t, j1 k + k j1^t)."""
    m, k = spec.model, spec.k
    j0 = m.j0.rename_points({"x": point})
    j1 = m.j1.rename_points({"x": point})
    if spec.sigma.kind == "reflection":
        return BoundaryCurrents(j0 * k + k * j0, j1 * k - k * j1)
    return BoundaryCurrents(j0 * k - k * j0.transpose(), j1 * k + k * j1.transpose())


def boundary_r(spec):
    """Pi k_1 + k_1 Pi (reflection) or Pi k_1 - k_1 Pi^{t1} (twisted)."""
    Pi = spec.model.basis.pi
    k1 = leg1(spec.k)
    if spec.sigma.kind == "reflection":
        return Pi * k1 + k1 * Pi
    return Pi * k1 - k1 * Pi.partial_transpose(1)


@dataclass(frozen=True, eq=False)
class CurrentClosureReport:
    rb: MatrixRF
    residuals: dict

    @property
    def passed(self):
        return all(v.is_zero() for v in self.residuals.values())


def boundary_current_closure(spec):
    """Residuals of {j0b (x) j_ab} = [rb, I (x) j_ab(x)] delta and {j1b (x) j1b} = 0."""
    rb = boundary_r(spec)
    bx = boundary_currents(spec, "x")
    by = boundary_currents(spec, "y")
    I = identity(spec.model.N)
    dx = FieldExpr.distribution(_DX)
    table = spec.model.table
    res = {}
    for name, jx, jy in (("j0", bx.j0, by.j0), ("j1", bx.j1, by.j1)):
        lhs = poisson_bracket(bx.j0, jy, table)
        res[f"j0b-{name}b"] = lhs - commutator(rb, kron(I, jx)) * dx
    res["j1b-j1b"] = poisson_bracket(bx.j1, by.j1, table)
    return CurrentClosureReport(rb, res)


# --- constraints on k -----------------------------------------------------


def restr_check(k, sigma, basis=None):
    """Reflection: k^2 - (tr k^2 / N) I.  Twisted: k_1 Pi^{t1} k_2 - k_2 Pi^{t1} k_1."""
    N = k.N
    if sigma.kind == "reflection":
        k2 = k * k
        return k2 - identity(N).scale(k2.trace() / N)
    if sigma.kind == "twisted":
        Pi = (basis or gl(N)).pi
        Pt = Pi.partial_transpose(1)
        k1, k2 = leg1(k), leg2(k)
        return k1 * Pt * k2 - k2 * Pt * k1
    raise ValueError("restr is defined for reflection and twisted sigma")


def restr_enumerate_diagonal(N):
    """All diagonal +-1 matrices with their reflection residual."""
    sigma = AntiAutomorphism.reflection()
    out = []
    for signs in product((1, -1), repeat=N):
        k = MatrixRF.diag(list(signs))
        out.append((k, restr_check(k, sigma)))
    return out


# --- charges and Lax partner ----------------------------------------------


@dataclass(frozen=True, eq=False)
class ChargeDensitySeries:
    coefficients: dict  # k -> FieldExpr, tr 𝕃^2 = sum_k I^(k) / lambda^(k+1)
    closed_forms: dict  # k -> FieldExpr built from the boundary currents
    hatted: BoundaryCurrents  # k^-1 j^(b), the currents that 𝕃 is linear in

    def residuals(self):
        return {k: self.coefficients.get(k, FieldExpr()) - v for k, v in self.closed_forms.items()}


def _laurent_field(e, order):
    """Expand every coefficient of a FieldExpr in 1/lambda up to lambda^-order."""
    out = {}
    for (mono, dist), c in e.items():
        for p, v in laurent_at_infinity(c, LAM, order, max_growth=order).coefficients.items():
            term = FieldExpr({(mono, dist): v}, True) if v else FieldExpr()
            out[p] = out.get(p, FieldExpr()) + term
    return {p: v for p, v in out.items() if v}


def trace_square_series(spec, order=3):
    """{k: I^(k)} with tr 𝕃^2(lambda, x) = sum_k I^(k) lambda^-(k+1), k <= order."""
    m = spec.model
    tl2 = trace_power(boundary_lax(m.L, spec.k, spec.sigma), 2)
    series = _laurent_field(tl2, order + 1)
    return {p - 1: v for p, v in series.items() if 1 <= p - 1 <= order}


def charge_densities(spec, order=3, corrected=False):
    """Laurent coefficients of tr 𝕃^2 next to closed forms in the boundary currents.

    𝕃 = (lambda J0 + J1)/(lambda^2 - 1) with J = k^-1 j^(b).  The closed forms
    are I1 = tr J0^2, I2 = 2 tr J0 J1, I3 = tr(J0^2 + J1^2).  With
    ``corrected`` the third is tr J1^2 + 2 tr J0^2, the coefficient the
    expansion of (lambda^2 - 1)^-2 actually produces.
    """
    if spec.sigma.kind != "reflection":
        raise ValueError("closed-form charge densities are stated for reflection sigma")
    b = boundary_currents(spec)
    kinv = spec.k.inverse()
    J0, J1 = kinv * b.j0, kinv * b.j1
    t00 = (J0 * J0).trace()
    t01 = (J0 * J1).trace()
    t11 = (J1 * J1).trace()
    closed = {1: t00, 2: t01.scale(2), 3: (t11 + t00.scale(2)) if corrected else (t00 + t11)}
    closed = {k: v for k, v in closed.items() if k <= order}
    return ChargeDensitySeries(trace_square_series(spec, order), closed, BoundaryCurrents(J0, J1))


def pcm_lax_partner(spec, n=2):
    """𝔸_n for the PCM and its zero-curvature residual."""
    m = spec.model
    partner = lax_partner(m.L, spec.k, spec.sigma, m.table, n, m.r, m.s)
    return partner, zero_curvature_residual(partner, m.L, spec.k, spec.sigma, m.table)


__all__ = [
    "BoundaryCurrents",
    "ChargeDensitySeries",
    "CurrentClosureReport",
    "LaxPartner",
    "PCMModel",
    "PCMSpec",
    "boundary_current_closure",
    "boundary_currents",
    "boundary_r",
    "build_pcm",
    "charge_densities",
    "current_bracket_rules",
    "fundamental_residual",
    "pcm_lax_partner",
    "restr_check",
    "restr_enumerate_diagonal",
    "trace_square_series",
    "verify_model",
]
