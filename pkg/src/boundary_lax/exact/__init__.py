"""Exact rationals, polynomials, rational functions and Laurent series."""

from fractions import Fraction as Rational

from ._backend import VARIABLES, B
from .laurent import LaurentSeries, laurent_at_infinity
from .poly import MultiPoly
from .ratfunc import ONE, ZERO, RatFunc, as_ratfunc, const, normalize, var

BACKEND = B.name


def substitute(f, bindings):
    return as_ratfunc(f).substitute(bindings)


__all__ = [
    "BACKEND",
    "LaurentSeries",
    "MultiPoly",
    "ONE",
    "RatFunc",
    "Rational",
    "VARIABLES",
    "ZERO",
    "as_ratfunc",
    "const",
    "laurent_at_infinity",
    "normalize",
    "substitute",
    "var",
]
