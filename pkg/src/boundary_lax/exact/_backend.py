"""Polynomial backend over QQ in a fixed set of spectral variables.

Two implementations share one small protocol: python-flint's ``fmpq_mpoly``
(preferred, fast multivariate gcd) and sympy's sparse ``PolyElement`` over
``QQ``.  Both are created with graded lexicographic order on ``VARIABLES``
so leading coefficients, and therefore canonical forms, agree across them.

Set ``BOUNDARY_LAX_POLY_BACKEND=sympy`` to force the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction

VARIABLES = ("lambda", "mu", "nu", "eta")
NVARS = len(VARIABLES)


class _FlintBackend:
    name = "flint"

    def __init__(self):
        import flint

        self._flint = flint
        self._fmpq = flint.fmpq
        self.ctx = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")
        self.gens = tuple(self.ctx.gens())
        self.zero = self.ctx.from_dict({})
        self.one = self.ctx.constant(1)

    def const(self, c):
        c = Fraction(c)
        return self.ctx.constant(self._fmpq(c.numerator, c.denominator))

    def from_terms(self, terms):
        return self.ctx.from_dict(
            {e: self._fmpq(c.numerator, c.denominator) for e, c in terms.items()}
        )

    def terms(self, p):
        return {
            tuple(e): Fraction(int(c.p), int(c.q)) for e, c in p.to_dict().items()
        }

    def gcd(self, p, q):
        return p.gcd(q)

    def exquo(self, p, q):
        return p / q

    def lc(self, p):
        c = p.leading_coefficient()
        return Fraction(int(c.p), int(c.q))

    def scale(self, p, c):
        c = Fraction(c)
        return p * self._fmpq(c.numerator, c.denominator)

    def is_zero(self, p):
        return p.is_zero()

    def is_one(self, p):
        return p.is_one()

    def constant_value(self, p):
        """Return the value of a constant polynomial, or None."""
        if p.is_zero():
            return Fraction(0)
        if p.total_degree() != 0:
            return None
        return self.lc(p)

    def degrees(self, p):
        if p.is_zero():
            return (0,) * NVARS
        return tuple(int(d) for d in p.degrees())

    def compose(self, p, images):
        return p.compose(*images)

    def derivative(self, p, i):
        return p.derivative(i)

    def key(self, p):
        return str(p)


class _SympyBackend:
    name = "sympy"

    def __init__(self):
        from sympy import QQ
        from sympy.polys.orderings import grlex
        from sympy.polys.rings import ring

        self._QQ = QQ
        self.ctx, *gens = ring(",".join(VARIABLES), QQ, grlex)
        self.gens = tuple(gens)
        self.zero = self.ctx.zero
        self.one = self.ctx.one

    def const(self, c):
        c = Fraction(c)
        return self.ctx(self._QQ(c.numerator, c.denominator))

    def from_terms(self, terms):
        QQ = self._QQ
        return self.ctx.from_dict(
            {e: QQ(c.numerator, c.denominator) for e, c in terms.items()}
        )

    def terms(self, p):
        return {
            tuple(e): Fraction(int(c.numerator), int(c.denominator))
            for e, c in p.items()
        }

    def gcd(self, p, q):
        return p.gcd(q)

    def exquo(self, p, q):
        return p.exquo(q)

    def lc(self, p):
        c = p.LC
        return Fraction(int(c.numerator), int(c.denominator))

    def scale(self, p, c):
        c = Fraction(c)
        return p * self._QQ(c.numerator, c.denominator)

    def is_zero(self, p):
        return not p

    def is_one(self, p):
        return p == self.one

    def constant_value(self, p):
        if not p:
            return Fraction(0)
        if not p.is_ground:
            return None
        return self.lc(p)

    def degrees(self, p):
        if not p:
            return (0,) * NVARS
        return tuple(max(0, p.degree(g)) for g in self.gens)

    def compose(self, p, images):
        return p.compose(list(zip(self.gens, images)))

    def derivative(self, p, i):
        return p.diff(self.gens[i])

    def key(self, p):
        return str(p)


def _select():
    forced = os.environ.get("BOUNDARY_LAX_POLY_BACKEND", "").strip().lower()
    if forced == "sympy":
        return _SympyBackend()
    try:
        return _FlintBackend()
    except ImportError:
        if forced == "flint":
            raise
        return _SympyBackend()


B = _select()
