"""Boundary extension of a linear (r, s) Poisson algebra.

Objects follow one convention throughout: a Lax template ``L`` is a one-leg
MatrixFieldExpr written in spectral variable ``lambda`` at point ``x``; c-number
two-leg tensors ``r``, ``s`` are written in ``(lambda, mu)`` on legs (1, 2);
the boundary matrix ``k`` is a MatrixRF in ``lambda`` (possibly constant).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PoleError, ShapeMismatchError
from .exact import RatFunc
from .fields import MatrixFieldExpr, delta, poisson_bracket
from .fields.bracket import bracket_fields
from .fields.expr import FieldExpr
from .tensor import MatrixRF, commutator, identity, kron

LAM, MU, NU = "lambda", "mu", "nu"
_DX = delta("x", "y")
_DPX = delta("x", "y", 1)


def lax_at(L, variable=LAM, point="x"):
    """Move a template written at (lambda, x) to another variable and point."""
    out = L
    if variable != LAM:
        out = out.substitute({LAM: RatFunc.var(variable)})
    if point != "x":
        out = out.rename_points({"x": point})
    return out


def k_at(k, variable):
    return k if variable == LAM else k.substitute({LAM: RatFunc.var(variable)})


def leg1(A):
    return kron(A, identity(A.N))


def leg2(A):
    return kron(identity(A.N), A)


def swap_arguments(t, a=LAM, b=MU):
    return t.substitute({a: RatFunc.var(b), b: RatFunc.var(a)})


# --- consistency of the (r, s) pair ---------------------------------------


def skew_residual(r):
    """r_12(l, m) + r_21(m, l); zero iff r is skew-symmetric."""
    return r + swap_arguments(r.swap_legs())


def symmetry_residual(s):
    """s_12(l, m) - s_21(m, l); zero iff s is symmetric."""
    return s - swap_arguments(s.swap_legs())


def cybe_residual(r, s, alt_third_term=False):
    """Residual of the classical Yang-Baxter type equation for (r, s).

    ``[(r+s)_13(l,n), (r-s)_12(l,m)] + [(r+s)_23(m,n), (r+s)_12(l,m)]
    + [(r+s)_23(m,n), (r+s)_13(l,n)]``.  With ``alt_third_term`` the last
    commutator uses ``(r+s)_23(l,m)`` instead, which is not satisfied by the
    rational Yang solution and is kept only for comparison.
    """
    if r.legs != 2 or s.legs != 2 or r.N != s.N:
        raise ShapeMismatchError("r and s must be two-leg tensors of equal base dimension")
    p = r + s
    m = r - s
    p13 = p.embed((1, 3), 3, {MU: NU})
    m12 = m.embed((1, 2), 3)
    p12 = p.embed((1, 2), 3)
    p23 = p.embed((2, 3), 3, {LAM: MU, MU: NU})
    third = p.embed((2, 3), 3) if alt_third_term else p23
    return commutator(p13, m12) + commutator(p23, p12) + commutator(third, p13)


# --- sigma actions on two-leg tensors -------------------------------------


def sigma1(A, sigma):
    return sigma.act(A, 1, LAM)


def sigma2(A, sigma):
    return sigma.act(A, 2, MU)


def sigma12(A, sigma):
    return sigma.act(sigma.act(A, 1, LAM), 2, MU)


def build_boundary_field(L, k, sigma, variable=LAM):
    """T(l, x) = L(l, x) k(l) + k(l) L^sigma(l, x)."""
    if L.N != k.N:
        raise ShapeMismatchError("L and k must have equal size")
    return L * k + k * sigma.on_lax(L, variable)


def _k12(k):
    k1 = leg1(k_at(k, LAM))
    k2 = leg2(k_at(k, MU))
    return k1, k2


def constraint_residual(k, A, sigma):
    """A k1 k2 + k1 k2 A^{s1 s2} + k1 A^{s1} k2 + k2 A^{s2} k1 for k1 = k(l), k2 = k(m)."""
    _check_invertible(k)
    k1, k2 = _k12(k)
    return A * k1 * k2 + k1 * k2 * sigma12(A, sigma) + k1 * sigma1(A, sigma) * k2 + k2 * sigma2(A, sigma) * k1


def _check_invertible(k):
    if not k.det():
        raise PoleError("boundary matrix k is not invertible")


@dataclass(frozen=True, eq=False)
class DerivedRMatrices:
    r_minus: MatrixRF
    rt_minus: MatrixRF
    r_plus: MatrixRF
    rt_plus: MatrixRF


def derived_r(r, s, k, sigma):
    k1, k2 = _k12(k)
    m = r - s
    p = r + s
    return DerivedRMatrices(
        r_minus=m * k2 + k2 * sigma2(m, sigma),
        rt_minus=-(k2 * sigma12(m, sigma)) - sigma1(m, sigma) * k2,
        r_plus=p * k1 + k1 * sigma1(p, sigma),
        rt_plus=-(k1 * sigma12(p, sigma)) - sigma2(p, sigma) * k1,
    )


def derived_form_residuals(r, s, k, sigma):
    """(k1^-1 r^- - rt^- k1^-1, k2^-1 r^+ - rt^+ k2^-1)."""
    d = derived_r(r, s, k, sigma)
    k1, k2 = _k12(k)
    k1i = k1.inverse()
    k2i = k2.inverse()
    return k1i * d.r_minus - d.rt_minus * k1i, k2i * d.r_plus - d.rt_plus * k2i


@dataclass(frozen=True, eq=False)
class ConstraintReport:
    residual_r: MatrixRF
    residual_s: MatrixRF
    derived_form: tuple

    @property
    def constraints_hold(self):
        return self.residual_r.is_zero() and self.residual_s.is_zero()

    @property
    def derived_form_holds(self):
        return all(f.is_zero() for f in self.derived_form)

    @property
    def agree(self):
        return self.constraints_hold == self.derived_form_holds


def constraint_report(k, r, s, sigma):
    return ConstraintReport(
        constraint_residual(k, r, sigma),
        constraint_residual(k, s, sigma),
        derived_form_residuals(r, s, k, sigma),
    )


# --- closure of the boundary bracket --------------------------------------


@dataclass(frozen=True, eq=False)
class ClosureReport:
    raw: MatrixFieldExpr
    dprime: MatrixRF
    dprime_expected: MatrixRF
    residual: MatrixFieldExpr
    raw_formula_residual: MatrixFieldExpr | None = None
    constraints: ConstraintReport | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def dprime_zero(self):
        return self.dprime.is_zero()

    @property
    def residual_zero(self):
        return self.residual.is_zero()

    @property
    def passed(self):
        return self.dprime_zero and self.residual_zero


def boundary_fields(L, k, sigma):
    """T_1(l, x) and T_2(m, y) as one-leg matrices."""
    T = build_boundary_field(L, k, sigma)
    return T, lax_at(T, MU, "y")


def gen_rhs(d, T_lam_x, T_mu_x):
    """(r^- T1 - T1 rt^- + r^+ T2 - T2 rt^+) delta(x - y)."""
    T1 = leg1(T_lam_x)
    T2 = leg2(T_mu_x)
    body = d.r_minus * T1 - T1 * d.rt_minus + d.r_plus * T2 - T2 * d.rt_plus
    return body * FieldExpr.distribution(_DX)


def raw_bracket_formula(L, k, sigma, r, s, alt_grouping=False):
    """The expanded bracket of two boundary fields before imposing constraints.

    Every superscript on leg 2 is the sigma_2 action.  Grouped by the field
    factor, the default form is exact for any k.  ``alt_grouping=True`` selects an
    alternative grouping, kept for comparison, that does not reproduce the
    bracket even for k = I:

    * ``(-k1 k2 (r-s)^{s1s2} - ...) k1 L1^s`` in place of
      ``(-k1 k2 (r-s)^{s1s2} k1^-1 - ...) k1 L1^s``, and likewise on leg 2;
    * ``-L1 k1 (k1^-1 (r-s)^{s1s2} k1 k2 + k1^-1 k2 (r-s)^{s2})`` in place of
      ``-L1 k1 (k1^-1 (r-s) k1 k2 + k1^-1 k2 (r-s)^{s2} k1)``.
    """
    k1, k2 = _k12(k)
    k1i, k2i = k1.inverse(), k2.inverse()
    m, p = r - s, r + s
    L1 = leg1(L)
    L1s = leg1(sigma.on_lax(L))
    Lm = lax_at(L, MU)
    L2 = leg2(Lm)
    L2s = leg2(sigma.on_lax(Lm, MU))
    m1, m2, m12 = sigma1(m, sigma), sigma2(m, sigma), sigma12(m, sigma)
    p1, p2, p12 = sigma1(p, sigma), sigma2(p, sigma), sigma12(p, sigma)
    if alt_grouping:
        third = k1i * m12 * k1 * k2 + k1i * k2 * m2
        u1, u2 = k1 * k2 * m12, k1 * k2 * p12
    else:
        third = k1i * m * k1 * k2 + k1i * k2 * m2 * k1
        u1, u2 = k1 * k2 * m12 * k1i, k1 * k2 * p12 * k2i
    body = (
        (m * k2 + k2 * m2) * L1 * k1
        + (-u1 - k1 * m1 * k2 * k1i) * k1 * L1s
        - L1 * k1 * third
        - k1 * L1s * (-(k2 * m12) - m1 * k2)
        + (p * k1 + k1 * p1) * L2 * k2
        + (-u2 - k2 * p2 * k1 * k2i) * k2 * L2s
        - L2 * k2 * (k2i * p * k1 * k2 + k2i * k1 * p1 * k2)
        - k2 * L2s * (-(k1 * p12) - p2 * k1)
    )
    dprime = constraint_residual(k, s, sigma).scale(-2)
    return body * FieldExpr.distribution(_DX) + dprime * FieldExpr.distribution(_DPX)


def closure_check(L, k, sigma, table, r, s, with_raw_formula=True, alt_grouping=False):
    """Bracket {T_1(l,x), T_2(m,y)}, its delta' coefficient and the residual against gen."""
    T_x, T_y = boundary_fields(L, k, sigma)
    raw = poisson_bracket(T_x, T_y, table)
    dpart = raw.distribution_part(_DPX).c_number()
    if dpart is None:
        raise ValueError("delta' coefficient is field dependent")
    d = derived_r(r, s, k, sigma)
    residual = raw - gen_rhs(d, T_x, lax_at(T_x, MU))
    formula = raw - raw_bracket_formula(L, k, sigma, r, s, alt_grouping) if with_raw_formula else None
    return ClosureReport(
        raw=raw,
        dprime=dpart,
        dprime_expected=constraint_residual(k, s, sigma).scale(-2),
        residual=residual,
        raw_formula_residual=formula,
        constraints=constraint_report(k, r, s, sigma),
    )


# --- traces and Lax partner -----------------------------------------------


def boundary_lax(L, k, sigma):
    """𝕃(l, x) = k^-1(l) T(l, x)."""
    return k.inverse() * build_boundary_field(L, k, sigma)


def trace_power(M, n):
    return (M**n).trace()


def trace_commute(L, k, sigma, table, Npow, Mpow):
    """{tr 𝕃^N(l, x), tr 𝕃^M(m, y)} as a canonical FieldExpr."""
    LL = boundary_lax(L, k, sigma)
    a = trace_power(LL, Npow)
    b = trace_power(lax_at(LL, MU, "y"), Mpow)
    return bracket_fields(a, b, table)


@dataclass(frozen=True, eq=False)
class LaxPartner:
    A: MatrixFieldExpr
    n: int


def lax_partner(L, k, sigma, table, n, r, s):
    """A_n(l, m, x) = n tr_a(𝕃_a^{n-1}(l, x) k_a^{-1}(l) rt^+_ab(l, m))."""
    LL = boundary_lax(L, k, sigma)
    d = derived_r(r, s, k, sigma)
    k1i = leg1(k.inverse())
    prod = leg1(LL ** (n - 1)) * k1i * d.rt_plus
    A = prod.partial_trace(1).scale(n)
    return LaxPartner(MatrixFieldExpr.from_matrix(A), n)


def zero_curvature_residual(partner, L, k, sigma, table):
    """{tr 𝕃^n(l,x), 𝕃(m,y)} - [A_n(l,m,x), 𝕃(m,y)] delta(x - y)."""
    LL = boundary_lax(L, k, sigma)
    h = trace_power(LL, partner.n)
    Lmy = lax_at(LL, MU, "y")
    lhs = Lmy.map(lambda e: bracket_fields(h, e, table), cls=MatrixFieldExpr)
    rhs = commutator(partner.A, lax_at(LL, MU)) * FieldExpr.distribution(_DX)
    return lhs - rhs
