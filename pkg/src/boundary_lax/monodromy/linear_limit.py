"""First-order (in eta) comparison of the quadratic boundary algebras with the local one.

With T -> 1 + eta int L and K -> k the dressed monodromy becomes
k + eta X, X = int 𝕋 dx.  The left side {X_1(lambda), X_2(mu)} is evaluated by
the Leibniz engine and integrated over both points; the right sides are read
with r_12(l1 - l2) -> r(lambda, mu), r_21 -> P r P and
r(l1 + l2) -> a reflected-argument tensor chosen by ``plus_reading``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..boundary import MU, boundary_fields, derived_r, lax_at, leg1, leg2
from ..exact import RatFunc
from ..fields import MatrixFieldExpr, integrate, poisson_bracket
from ..tensor import permutation

PLUS_READINGS = ("mu", "lambda")


def _integrated(T, point="x"):
    return T.map(lambda e: integrate(e, point))


def _int_both(B):
    return B.map(lambda e: integrate(integrate(e, "y"), "x"))


def _plus(r, reading):
    if reading == "mu":
        return r.substitute({MU: -RatFunc.var(MU)})
    if reading == "lambda":
        return r.substitute({"lambda": -RatFunc.var("lambda")})
    raise ValueError(f"unknown reading {reading!r}; expected one of {PLUS_READINGS}")


def quadratic_rhs(r, X_lam, X_mu, k, sigma, plus_reading=None, order=1):
    """Right side of the quadratic algebra with each dressed monodromy k + eta X.

    ``order=0`` returns the eta^0 c-number part, ``order=1`` the part linear
    in X.
    """
    kind = sigma.kind
    plus_reading = plus_reading or ("mu" if kind == "reflection" else "lambda")
    P = permutation(r.N)
    r12 = r
    r21 = P * r * P
    rp12 = _plus(r, plus_reading)
    rp21 = P * rp12 * P
    if kind == "twisted":
        r21 = r21.partial_transpose(1).partial_transpose(2)
        rp_mid = rp12.partial_transpose(1)
        rp_last = rp21.partial_transpose(2)
    else:
        rp_mid = rp21
        rp_last = rp12
    k1 = leg1(k)
    k2 = leg2(k.substitute({"lambda": RatFunc.var(MU)}))
    X1 = leg1(X_lam) if X_lam is not None else None
    X2 = leg2(X_mu) if X_mu is not None else None

    def quad(a1, a2):
        # r T1T2 - T1T2 r21 + T1 r_mid T2 - T2 r_last T1 with T = a
        return r12 * a1 * a2 - a1 * a2 * r21 + a1 * rp_mid * a2 - a2 * rp_last * a1

    if order == 0:
        return quad(k1, k2)
    return quad(X1, k2) + quad(k1, X2)


def integrated_gen(r, s, k, sigma, X_lam, X_mu):
    d = derived_r(r, s, k, sigma)
    X1 = leg1(X_lam)
    X2 = leg2(X_mu)
    return d.r_minus * X1 - X1 * d.rt_minus + d.r_plus * X2 - X2 * d.rt_plus


@dataclass(frozen=True, eq=False)
class LinearLimitReport:
    sigma: str
    lhs: MatrixFieldExpr
    rhs: MatrixFieldExpr
    gen: MatrixFieldExpr
    gen_ultralocal_r: MatrixFieldExpr
    order0: object
    plus_reading: str

    @property
    def residual(self):
        """LHS minus the first-order right side of the quadratic algebra."""
        return self.lhs - self.rhs

    @property
    def passed(self):
        return self.residual.is_zero() and self.order0.is_zero()

    def summary(self):
        return {
            "lhs_minus_rhs_zero": self.residual.is_zero(),
            "lhs_minus_gen_zero": (self.lhs - self.gen).is_zero(),
            "rhs_minus_gen_s0_zero": (self.rhs - self.gen_ultralocal_r).is_zero(),
            "order0_zero": self.order0.is_zero(),
            "plus_reading": self.plus_reading,
        }


def linear_limit_check(L, k, sigma, table, r, s, plus_reading=None):
    """Compare order-eta terms of the quadratic algebra with the integrated local algebra."""
    plus_reading = plus_reading or ("mu" if sigma.kind == "reflection" else "lambda")
    T_x, T_y = boundary_fields(L, k, sigma)
    lhs = _int_both(poisson_bracket(T_x, T_y, table))
    X_lam = _integrated(T_x)
    X_mu = _integrated(lax_at(T_x, MU))
    rhs = quadratic_rhs(r, X_lam, X_mu, k, sigma, plus_reading)
    gen = integrated_gen(r, s, k, sigma, X_lam, X_mu)
    gen0 = integrated_gen(r, s.scale(0), k, sigma, X_lam, X_mu)
    o0 = quadratic_rhs(r, None, None, k, sigma, plus_reading, order=0)
    return LinearLimitReport(sigma.kind, lhs, rhs, gen, gen0, o0, plus_reading)
