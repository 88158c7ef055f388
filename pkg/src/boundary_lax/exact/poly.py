"""Multivariate polynomials over QQ in the spectral variables."""

from __future__ import annotations

from fractions import Fraction

from ._backend import VARIABLES, B


def var_index(name):
    try:
        return VARIABLES.index(name)
    except ValueError:
        raise KeyError(f"unknown variable {name!r}; expected one of {VARIABLES}") from None


def _grlex_key(exp):
    return (sum(exp), exp)


def format_monomial(exp):
    parts = []
    for name, e in zip(VARIABLES, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(terms):
    """Canonical text: graded-lex descending, explicit signs, ``c*m`` products."""
    if not terms:
        return "0"
    out = []
    for exp in sorted(terms, key=_grlex_key, reverse=True):
        c = terms[exp]
        mono = format_monomial(exp)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


class MultiPoly:
    """Immutable polynomial in ``VARIABLES`` with Rational coefficients.

    Thin wrapper over the backend object; ``terms`` maps exponent vectors to
    ``Fraction`` and never stores zeros.
    """

    __slots__ = ("_p",)
    variables = VARIABLES

    def __init__(self, raw):
        self._p = raw

    @classmethod
    def from_terms(cls, terms):
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != len(VARIABLES) or min(e, default=0) < 0:
                raise ValueError(f"exponent vector {e} has wrong arity or sign")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        return cls(B.from_terms({e: c for e, c in clean.items() if c}))

    @classmethod
    def const(cls, c):
        return cls(B.const(c))

    @classmethod
    def var(cls, name):
        return cls(B.gens[var_index(name)])

    @property
    def raw(self):
        return self._p

    @property
    def terms(self):
        return B.terms(self._p)

    def is_zero(self):
        return B.is_zero(self._p)

    def degree(self, name):
        return B.degrees(self._p)[var_index(name)]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def leading_coefficient(self):
        return B.lc(self._p)

    def __add__(self, other):
        return MultiPoly(self._p + _raw(other))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(-self._p)

    def __sub__(self, other):
        return MultiPoly(self._p - _raw(other))

    def __rsub__(self, other):
        return MultiPoly(_raw(other) - self._p)

    def __mul__(self, other):
        return MultiPoly(self._p * _raw(other))

    __rmul__ = __mul__

    def __pow__(self, n):
        return MultiPoly(self._p**n)

    def __eq__(self, other):
        if isinstance(other, (MultiPoly, int, Fraction)):
            return B.is_zero(self._p - _raw(other))
        return NotImplemented

    def __hash__(self):
        return hash(B.key(self._p))

    def __str__(self):
        return format_terms(self.terms)

    def __repr__(self):
        return f"MultiPoly({self})"


def _raw(x):
    if isinstance(x, MultiPoly):
        return x._p
    if isinstance(x, (int, Fraction)):
        return B.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a polynomial")
