"""Field expressions: polynomials in generator symbols times a distribution.

A term is ``coeff * g_1 ... g_k * D`` with commuting generators ``g_i`` and at
most one distribution ``D = delta^(m)(p - q)``, ``m >= 0``, or no
distribution at all.  The convention is ``delta'(x - y) = d/dx delta(x - y)``.

Canonical form:

* the distribution is oriented with ``p < q`` (string order), using
  ``delta^(m)(q - p) = (-1)^m delta^(m)(p - q)``;
* every generator sitting at ``q`` is moved to ``p`` by
  ``f(q) delta^(m)(p - q) = sum_k C(m, k) f^(k)(p) delta^(m-k)(p - q)``,
  which introduces derivative generators;
* monomials are sorted tuples, like terms merged, zeros dropped.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import NamedTuple

from ..errors import IntegrationError
from ..exact import ONE, ZERO, RatFunc, as_ratfunc


class GeneratorSymbol(NamedTuple):
    """A field component ``family^color`` at ``point`` with ``deriv`` x-derivatives.

    ``point == ""`` marks the integrated generator ``int_{-L}^0 dx family^color(x)``.
    """

    family: str
    color: int
    point: str
    deriv: int = 0

    def at(self, point):
        return self._replace(point=point)

    def differentiated(self, k=1):
        return self._replace(deriv=self.deriv + k)

    @property
    def integrated(self):
        return self.point == ""

    def __str__(self):
        d = "d" * self.deriv
        where = f"({self.point})" if self.point else "[int]"
        return f"{d}{self.family}^{self.color}{where}"


def delta(p, q, order=0):
    """Distribution key for ``delta^(order)(p - q)``."""
    return (order, p, q)


def _merge(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def monomial_derivative(mono, point):
    """d/d(point) of a commutative monomial -> list of (multiplicity, monomial)."""
    out = {}
    for i, g in enumerate(mono):
        if g.point != point:
            continue
        new = tuple(sorted(mono[:i] + (g.differentiated(),) + mono[i + 1 :]))
        out[new] = out.get(new, 0) + 1
    return [(n, mono2) for mono2, n in out.items()]


def _shift_terms(mono, dist, coeff, acc):
    """Canonicalize one term into ``acc``."""
    if dist is None:
        _acc(acc, mono, None, coeff)
        return
    m, p, q = dist
    if p == q:
        raise ValueError("distribution with coincident points")
    if q < p:
        p, q = q, p
        if m % 2:
            coeff = -coeff
    _move_fields(mono, m, p, q, coeff, acc)


def _move_fields(mono, m, p, q, coeff, acc):
    """Rewrite fields at ``q`` in ``mono * delta^(m)(p - q)`` as fields at ``p``."""
    if not any(g.point == q for g in mono):
        _acc(acc, mono, (m, p, q), coeff)
        return
    at_q = tuple(g for g in mono if g.point == q)
    rest = tuple(g for g in mono if g.point != q)
    layer = {tuple(sorted(g.at(p) for g in at_q)): 1}
    for k in range(m + 1):
        c = comb(m, k)
        for part, mult in layer.items():
            _acc(acc, _merge(rest, part), (m - k, p, q), coeff * (c * mult))
        if k < m:
            nxt = {}
            for part, mult in layer.items():
                for dmult, new in monomial_derivative(part, p):
                    nxt[new] = nxt.get(new, 0) + mult * dmult
            layer = nxt


def _acc(acc, mono, dist, coeff):
    key = (mono, dist)
    prev = acc.get(key)
    acc[key] = coeff if prev is None else prev + coeff


class FieldExpr:
    """Immutable canonical sum of field terms with RatFunc coefficients."""

    __slots__ = ("_t",)

    def __init__(self, terms=None, _canonical=False):
        if terms is None:
            self._t = {}
        elif _canonical:
            self._t = terms
        else:
            acc = {}
            for (mono, dist), c in terms.items():
                c = as_ratfunc(c)
                if c:
                    _shift_terms(tuple(sorted(mono)), dist, c, acc)
            self._t = {k: v for k, v in acc.items() if v}

    @classmethod
    def generator(cls, g, coeff=ONE):
        return cls({((g,), None): as_ratfunc(coeff)}, True) if coeff else cls()

    @classmethod
    def const(cls, c):
        c = as_ratfunc(c)
        return cls({((), None): c}, True) if c else cls()

    @classmethod
    def distribution(cls, dist, coeff=ONE):
        return cls({((), dist): as_ratfunc(coeff)})

    # -- accessors -------------------------------------------------------
    @property
    def terms(self):
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __len__(self):
        return len(self._t)

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def generators(self):
        return sorted({g for mono, _ in self._t for g in mono})

    def degree(self):
        return max((len(m) for m, _ in self._t), default=0)

    def constant_part(self):
        return self._t.get(((), None), ZERO)

    def distribution_part(self, dist):
        """Field-valued coefficient of a canonical distribution key (or None)."""
        return FieldExpr({(m, None): c for (m, d), c in self._t.items() if d == dist}, True)

    def distributions(self):
        return sorted({d for _, d in self._t if d is not None})

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FieldExpr):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        acc = dict(self._t)
        for k, v in other._t.items():
            prev = acc.get(k)
            if prev is None:
                acc[k] = v
            else:
                s = prev + v
                if s:
                    acc[k] = s
                else:
                    del acc[k]
        return FieldExpr(acc, True)

    __radd__ = __add__

    def __neg__(self):
        return FieldExpr({k: -v for k, v in self._t.items()}, True)

    def __sub__(self, other):
        if not isinstance(other, FieldExpr):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return ZERO_FIELD
        return FieldExpr({k: v * c for k, v in self._t.items()}, True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        if not isinstance(other, FieldExpr):
            return NotImplemented
        if not self._t or not other._t:
            return ZERO_FIELD
        acc = {}
        needs_shift = False
        for (ma, da), ca in self._t.items():
            for (mb, db), cb in other._t.items():
                if da is not None and db is not None:
                    raise ValueError("product of two distributions is not supported")
                d = da if db is None else db
                mono = _merge(ma, mb)
                if d is not None and not needs_shift:
                    q = d[2]
                    needs_shift = any(g.point == q for g in (ma if da is None else mb))
                _acc(acc, mono, d, ca * cb)
        if needs_shift:
            out = {}
            for (mono, d), c in acc.items():
                if c:
                    _shift_terms(mono, d, c, out)
            acc = out
        return FieldExpr({k: v for k, v in acc.items() if v}, True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        out = ONE_FIELD
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, FieldExpr):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- transformations -------------------------------------------------
    def map_coefficients(self, fn):
        acc = {}
        for k, v in self._t.items():
            w = fn(v)
            if w:
                acc[k] = w
        return FieldExpr(acc, True)

    def substitute(self, bindings):
        return self.map_coefficients(lambda c: c.substitute(bindings))

    def rename_points(self, mapping):
        """Relabel points simultaneously, then canonicalize."""
        raw = {}
        for (mono, dist), c in self._t.items():
            mono = tuple(g.at(mapping.get(g.point, g.point)) for g in mono)
            if dist is not None:
                m, p, q = dist
                dist = (m, mapping.get(p, p), mapping.get(q, q))
            key = (mono, dist)
            raw[key] = raw[key] + c if key in raw else c
        return FieldExpr(raw)

    def map_generators(self, fn):
        """Substitute each generator by ``fn(g)`` (a FieldExpr); distributions kept."""
        out = ZERO_FIELD
        cache = {}
        for (mono, dist), c in self._t.items():
            term = FieldExpr({((), dist): c}, True)
            for g in mono:
                if g not in cache:
                    cache[g] = fn(g)
                term = term * cache[g]
            out = out + term
        return out

    def derivative_by(self, g):
        """Partial derivative with respect to one generator symbol."""
        acc = {}
        for (mono, dist), c in self._t.items():
            n = mono.count(g)
            if not n:
                continue
            i = mono.index(g)
            _acc(acc, mono[:i] + mono[i + 1 :], dist, c * n)
        return FieldExpr({k: v for k, v in acc.items() if v}, True)

    def coefficient_of(self, mono, dist=None):
        return self._t.get((tuple(sorted(mono)), dist), ZERO)

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for (mono, dist), c in sorted(self._t.items(), key=lambda kv: (kv[0][1] or (-1, "", ""), kv[0][0])):
            body = "*".join(str(g) for g in mono)
            if dist is not None:
                m, p, q = dist
                dstr = f"delta{chr(39) * m}({p}-{q})"
                body = f"{body}*{dstr}" if body else dstr
            parts.append(f"({c})*{body}" if body else f"({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"FieldExpr({self})"


def _coerce(x):
    if isinstance(x, FieldExpr):
        return x
    try:
        return FieldExpr.const(as_ratfunc(x))
    except TypeError:
        return NotImplemented


ZERO_FIELD = FieldExpr()
ONE_FIELD = FieldExpr.const(ONE)


def as_field(x):
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldExpr")
    return r


def canonicalize(e):
    """Re-canonicalize an expression (idempotent on canonical input)."""
    return FieldExpr(dict(e.items()))


def integrate(e, over):
    """Integrate over ``point`` on [-L, 0] with interior-point conventions.

    * ``int dq delta^(m)(p - q) F(p) = F(p)`` for m = 0 and 0 for m > 0;
    * ``int dp F(p) delta^(m)(p - q) = (-1)^m F^(m)(q)``;
    * without a distribution, generators linear at ``point`` become
      integrated generators; total derivatives integrate to boundary terms,
      which are dropped.

    Raises IntegrationError for products of several fields at ``point`` or for
    terms that do not depend on ``point`` (their integral would carry L).
    """
    acc = {}
    for (mono, dist), c in e.items():
        if dist is not None and over in dist[1:]:
            m, p, q = dist
            if over == q:
                if m == 0:
                    _acc(acc, mono, None, c)
                continue
            # over == p: delta^(m)(p - q) = (-1)^m delta^(m)(q - p), fields move to q
            moved = {}
            _move_fields(mono, m, q, p, -c if m % 2 else c, moved)
            for (mono2, d2), c2 in moved.items():
                if d2[0] == 0:
                    _acc(acc, mono2, None, c2)
            continue
        here = [g for g in mono if g.point == over]
        if not here:
            raise IntegrationError(f"term without dependence on point {over!r} cannot be integrated")
        if len(here) > 1:
            raise IntegrationError(f"nonlinear term in fields at {over!r} has no integrated generator")
        g = here[0]
        if g.deriv:
            continue
        rest = tuple(x for x in mono if x.point != over)
        _acc(acc, _merge(rest, (g.at(""),)), dist, c)
    return FieldExpr({k: v for k, v in acc.items() if v})
