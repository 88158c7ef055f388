"""Exact rational functions in the spectral variables.

A ``RatFunc`` is always stored in canonical form: ``gcd(num, den) = 1`` and
the leading coefficient of ``den`` under graded-lex order is 1.  Two values
are equal as functions iff their canonical forms coincide, so ``==`` is
exact structural comparison.

Addition and multiplication follow Henrici's scheme: gcds are taken of the
smaller cofactors so canonical inputs give canonical outputs without a gcd
of the full product.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import MalformedInputError, PoleError
from ._backend import NVARS, VARIABLES, B
from .poly import MultiPoly, format_terms, var_index

_ONE = B.one


def _lc_normalize(n, d):
    c = B.lc(d)
    if c != 1:
        inv = 1 / c
        n = B.scale(n, inv)
        d = B.scale(d, inv)
    return n, d


def _canonical(n, d):
    if B.is_zero(d):
        raise MalformedInputError("rational function with zero denominator")
    if B.is_zero(n):
        return B.zero, _ONE
    if B.is_one(d):
        return n, d
    g = B.gcd(n, d)
    if not B.is_one(g):
        n = B.exquo(n, g)
        d = B.exquo(d, g)
    return _lc_normalize(n, d)


class RatFunc:
    """Immutable canonical rational function num/den over QQ."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, num=0, den=1):
        n, d = _canonical(_coerce_poly(num), _coerce_poly(den))
        self._n = n
        self._d = d
        self._hash = None

    @classmethod
    def _trusted(cls, n, d):
        obj = cls.__new__(cls)
        obj._n = n
        obj._d = d
        obj._hash = None
        return obj

    @classmethod
    def _from_raw(cls, n, d):
        return cls._trusted(*_canonical(n, d))

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        if c == 0:
            return ZERO
        if c == 1:
            return ONE
        return cls._trusted(B.const(c), _ONE)

    @classmethod
    def var(cls, name):
        return cls._trusted(B.gens[var_index(name)], _ONE)

    # -- accessors -------------------------------------------------------
    @property
    def num(self):
        return MultiPoly(self._n)

    @property
    def den(self):
        return MultiPoly(self._d)

    def is_zero(self):
        return B.is_zero(self._n)

    def is_one(self):
        return B.is_one(self._n) and B.is_one(self._d)

    def is_polynomial(self):
        return B.is_one(self._d)

    def constant_value(self):
        """Return the Fraction value if constant, else None."""
        if not B.is_one(self._d):
            return None
        return B.constant_value(self._n)

    def is_constant(self):
        return self.constant_value() is not None

    def degrees(self):
        """Per-variable (num, den) degree pairs."""
        return tuple(zip(B.degrees(self._n), B.degrees(self._d)))

    def free_variables(self):
        dn = B.degrees(self._n)
        dd = B.degrees(self._d)
        return tuple(v for v, a, b in zip(VARIABLES, dn, dd) if a or b)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if B.is_zero(self._n):
            return other
        if B.is_zero(other._n):
            return self
        a, b, c, d = self._n, self._d, other._n, other._d
        if B.is_one(b) and B.is_one(d):
            return RatFunc._trusted(a + c, _ONE)
        if B.is_one(d):
            return RatFunc._trusted(a + c * b, b)
        if B.is_one(b):
            return RatFunc._trusted(a * d + c, d)
        if b == d:
            t = a + c
            if B.is_zero(t):
                return ZERO
            g = B.gcd(t, b)
            if B.is_one(g):
                return RatFunc._trusted(t, b)
            return RatFunc._trusted(*_lc_normalize(B.exquo(t, g), B.exquo(b, g)))
        g = B.gcd(b, d)
        if B.is_one(g):
            return RatFunc._trusted(a * d + b * c, b * d)
        bg = B.exquo(b, g)
        dg = B.exquo(d, g)
        t = a * dg + c * bg
        if B.is_zero(t):
            return ZERO
        g2 = B.gcd(t, g)
        if not B.is_one(g2):
            t = B.exquo(t, g2)
            g = B.exquo(g, g2)
        return RatFunc._trusted(*_lc_normalize(t, bg * dg * g))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._trusted(-self._n, self._d)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                if other == 0 or B.is_zero(self._n):
                    return ZERO
                return RatFunc._trusted(B.scale(self._n, other), self._d)
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        a, b, c, d = self._n, self._d, other._n, other._d
        if B.is_zero(a) or B.is_zero(c):
            return ZERO
        if B.is_one(b) and B.is_one(d):
            return RatFunc._trusted(a * c, _ONE)
        g1 = B.gcd(a, d)
        if not B.is_one(g1):
            a = B.exquo(a, g1)
            d = B.exquo(d, g1)
        g2 = B.gcd(c, b)
        if not B.is_one(g2):
            c = B.exquo(c, g2)
            b = B.exquo(b, g2)
        return RatFunc._trusted(*_lc_normalize(a * c, b * d))

    __rmul__ = __mul__

    def inverse(self):
        if B.is_zero(self._n):
            raise PoleError("inverse of the zero rational function")
        return RatFunc._trusted(*_lc_normalize(self._d, self._n))

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    raise PoleError("division by zero")
                return self * (1 / Fraction(other))
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        # powers of coprime polynomials stay coprime
        return RatFunc._trusted(self._n**n, self._d**n)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            if B.is_one(self._d):
                v = B.constant_value(self._n)
                if v is not None:
                    self._hash = hash(v)
                    return self._hash
            self._hash = hash((B.key(self._n), B.key(self._d)))
        return self._hash

    def __bool__(self):
        return not B.is_zero(self._n)

    # -- calculus and substitution --------------------------------------
    def derivative(self, name):
        i = var_index(name)
        n, d = self._n, self._d
        dn = B.derivative(n, i)
        if B.is_one(d):
            return RatFunc._trusted(dn, _ONE)
        dd = B.derivative(d, i)
        return RatFunc._from_raw(dn * d - n * dd, d * d)

    def substitute(self, bindings):
        """Compose with ``{name: RatFunc}`` simultaneously, then normalize.

        Raises PoleError if the composed denominator vanishes identically.
        """
        if not bindings:
            return self
        images = list(B.gens)
        dens = [None] * NVARS
        for name, value in bindings.items():
            i = var_index(name)
            value = _coerce(value)
            if value is NotImplemented:
                raise TypeError(f"cannot substitute {type(value).__name__}")
            images[i] = value._n
            if not B.is_one(value._d):
                dens[i] = value._d
        if all(d is None for d in dens):
            n = B.compose(self._n, images)
            d = self._d if B.is_one(self._d) else B.compose(self._d, images)
        else:
            degs = [max(a, b) for a, b in zip(B.degrees(self._n), B.degrees(self._d))]
            n = _homogenized_compose(self._n, images, dens, degs)
            d = _homogenized_compose(self._d, images, dens, degs)
        if B.is_zero(d):
            raise PoleError(f"substitution {bindings} makes the denominator vanish")
        return RatFunc._from_raw(n, d)

    def evaluate(self, values):
        """Exact value at ``{name: Fraction}`` covering every free variable."""
        r = self.substitute({k: RatFunc.const(v) for k, v in values.items()})
        v = r.constant_value()
        if v is None:
            missing = set(r.free_variables())
            raise KeyError(f"free variables left unbound: {sorted(missing)}")
        return v

    def __str__(self):
        n = format_terms(B.terms(self._n))
        if B.is_one(self._d):
            return n
        return f"({n})/({format_terms(B.terms(self._d))})"

    def __repr__(self):
        return f"RatFunc({self})"


def _homogenized_compose(p, nums, dens, degs):
    """Sum of c * prod nums_i^e_i * dens_i^(D_i - e_i) over the terms of p."""
    out = B.zero
    npow = {}
    dpow = {}

    def pw(cache, i, base, e):
        key = (i, e)
        if key not in cache:
            cache[key] = base**e
        return cache[key]

    for exp, c in B.terms(p).items():
        t = B.const(c)
        for i, e in enumerate(exp):
            if dens[i] is None:
                if e:
                    t = t * pw(npow, i, nums[i], e)
            else:
                if e:
                    t = t * pw(npow, i, nums[i], e)
                if degs[i] - e:
                    t = t * pw(dpow, i, dens[i], degs[i] - e)
        out = out + t
    return out


def _coerce_poly(x):
    if isinstance(x, MultiPoly):
        return x.raw
    if isinstance(x, (int, Fraction)):
        return B.const(x)
    raise TypeError(f"cannot build a rational function from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    if isinstance(x, MultiPoly):
        return RatFunc._trusted(x.raw, _ONE)
    return NotImplemented


ZERO = RatFunc._trusted(B.zero, _ONE)
ONE = RatFunc._trusted(B.one, _ONE)


def as_ratfunc(x):
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")
    return r


def var(name):
    return RatFunc.var(name)


def const(c):
    return RatFunc.const(c)


def normalize(f):
    """Canonical form of ``f`` (values are kept canonical, so this is a re-check)."""
    f = as_ratfunc(f)
    return RatFunc._from_raw(f._n, f._d)
