"""Laurent expansion at infinity in one spectral variable.

Coefficients are rational functions in the remaining variables.  The
series is ``sum_k c_k * var**(-k)`` for ``k <= order``; negative ``k`` encode
polynomial growth and are admitted only up to ``max_growth``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnsupportedGrowthError
from ._backend import B
from .poly import var_index
from .ratfunc import ZERO, RatFunc


@dataclass(frozen=True)
class LaurentSeries:
    variable: str
    order: int
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        bad = [k for k in self.coefficients if k > self.order]
        if bad:
            raise ValueError(f"powers {bad} exceed truncation order {self.order}")

    def __getitem__(self, k):
        """Coefficient of ``variable**(-k)``; absent powers are zero."""
        return self.coefficients.get(k, ZERO)

    def powers(self):
        return sorted(self.coefficients)

    def map(self, fn):
        return LaurentSeries(
            self.variable, self.order, {k: fn(c) for k, c in self.coefficients.items()}
        )

    def partial_sum(self):
        x = RatFunc.var(self.variable)
        total = ZERO
        for k, c in self.coefficients.items():
            total = total + c * x ** (-k)
        return total


def _split_by_var(p, i):
    """Polynomial -> {degree in var i: coefficient polynomial in the others}."""
    out = {}
    for exp, c in B.terms(p).items():
        d = int(exp[i])
        rest = exp[:i] + (0,) + exp[i + 1 :]
        out.setdefault(d, {})[rest] = c
    return {d: RatFunc._trusted(B.from_terms(t), B.one) for d, t in out.items()}


def laurent_at_infinity(f, var, order, max_growth=0):
    """Expand ``f`` in powers of ``1/var`` keeping ``var**(-k)`` for ``k <= order``.

    Raises UnsupportedGrowthError when ``f`` grows faster than
    ``var**max_growth``.
    """
    if not isinstance(f, RatFunc):
        f = RatFunc.const(f) if not hasattr(f, "_n") else f
    i = var_index(var)
    if f.is_zero():
        return LaurentSeries(var, order, {})
    num = _split_by_var(f._n, i)
    den = _split_by_var(f._d, i)
    n = max(num)
    d = max(den)
    lead = d - n  # first power of 1/var that can appear
    if -lead > max_growth:
        raise UnsupportedGrowthError(
            f"expression grows like {var}^{n - d}, beyond allowed {var}^{max_growth}"
        )
    # f = var^(n-d) * Nh(u)/Dh(u), u = 1/var, Nh_k = num[n-k], Dh_k = den[d-k]
    nh = [num.get(n - k, ZERO) for k in range(n + 1)]
    dh = [den.get(d - k, ZERO) for k in range(d + 1)]
    inv0 = dh[0].inverse()
    quot = []
    for m in range(order - lead + 1):
        acc = nh[m] if m < len(nh) else ZERO
        for j in range(1, min(m, d) + 1):
            if not dh[j].is_zero() and not quot[m - j].is_zero():
                acc = acc - dh[j] * quot[m - j]
        quot.append(acc * inv0)
    coeffs = {lead + m: q for m, q in enumerate(quot) if not q.is_zero()}
    return LaurentSeries(var, order, coeffs)
