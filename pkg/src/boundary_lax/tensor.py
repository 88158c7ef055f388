"""Square matrices with tensor-leg structure over exact scalars.

A ``LegMatrix`` acts on ``(C^N)^{(x) legs}``.  The composite index of the
leg digits ``(i_1, ..., i_m)`` is ``sum_k i_k * N**(m - k)``: leg 1 is the
slowest digit, so for three legs the index is ``i1*N**2 + i2*N + i3``.

Entries are stored sparsely (nonzero only).  ``MatrixRF`` holds RatFunc
entries; ``MatrixFieldExpr`` (see ``boundary_lax.fields``) holds field
expressions.  Mixed products promote to the field-valued class.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import MalformedInputError, PoleError, ShapeMismatchError
from .exact import ONE, ZERO, RatFunc, as_ratfunc


def digits(index, N, legs):
    out = []
    for _ in range(legs):
        index, d = divmod(index, N)
        out.append(d)
    return tuple(reversed(out))


def compose_index(ds, N):
    idx = 0
    for d in ds:
        idx = idx * N + d
    return idx


def _add_into(acc, key, value):
    prev = acc.get(key)
    acc[key] = value if prev is None else prev + value


# scalar type -> matrix class that products with such scalars promote to
SCALAR_PROMOTION = {}


def _prune(entries):
    return {k: v for k, v in entries.items() if v}


class LegMatrix:
    """Immutable sparse ``N**legs`` square matrix over a commutative scalar ring."""

    __slots__ = ("N", "legs", "_e")
    _zero = ZERO
    _rank = 0  # promotion rank for mixed products

    def __init__(self, N, legs, entries, _trusted=False):
        if N < 1 or legs < 1:
            raise MalformedInputError("N and legs must be positive")
        self.N = N
        self.legs = legs
        if _trusted:
            self._e = entries
        else:
            size = N**legs
            clean = {}
            for (i, j), v in entries.items():
                if not (0 <= i < size and 0 <= j < size):
                    raise MalformedInputError(f"index ({i},{j}) outside {size}x{size}")
                v = self._coerce_entry(v)
                if v:
                    clean[(i, j)] = v
            self._e = clean

    # -- construction ----------------------------------------------------
    @classmethod
    def _coerce_entry(cls, v):
        return v

    @classmethod
    def _new(cls, N, legs, entries):
        return cls(N, legs, _prune(entries), _trusted=True)

    @classmethod
    def from_rows(cls, rows, N=None, legs=1):
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ShapeMismatchError("matrix rows must form a square")
        if N is None:
            N = round(size ** (1 / legs))
        if N**legs != size:
            raise ShapeMismatchError(f"size {size} is not N**{legs}")
        return cls(N, legs, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def identity(cls, N, legs=1):
        one = cls._coerce_entry(ONE)
        return cls(N, legs, {(i, i): one for i in range(N**legs)}, _trusted=True)

    @classmethod
    def zeros(cls, N, legs=1):
        return cls(N, legs, {}, _trusted=True)

    @classmethod
    def diag(cls, values):
        return cls(len(values), 1, {(i, i): v for i, v in enumerate(values)})

    # -- accessors -------------------------------------------------------
    @property
    def size(self):
        return self.N**self.legs

    @property
    def entries(self):
        return dict(self._e)

    def __getitem__(self, ij):
        return self._e.get(ij, self._zero)

    def rows(self):
        n = self.size
        return [[self[i, j] for j in range(n)] for i in range(n)]

    def is_zero(self):
        return not self._e

    def __bool__(self):
        return bool(self._e)

    def _check_shape(self, other):
        if self.N != other.N or self.legs != other.legs:
            raise ShapeMismatchError(
                f"shape N={self.N},legs={self.legs} vs N={other.N},legs={other.legs}"
            )

    def _result_cls(self, other):
        return self.__class__ if self._rank >= other._rank else other.__class__

    # -- linear structure ------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LegMatrix):
            return NotImplemented
        self._check_shape(other)
        out = dict(self._e)
        for k, v in other._e.items():
            _add_into(out, k, v)
        return self._result_cls(other)._new(self.N, self.legs, out)

    def __neg__(self):
        return self.__class__(self.N, self.legs, {k: -v for k, v in self._e.items()}, True)

    def __sub__(self, other):
        if not isinstance(other, LegMatrix):
            return NotImplemented
        return self + (-other)

    def _scalar_cls(self, c):
        promoted = SCALAR_PROMOTION.get(type(c))
        if promoted is None or promoted._rank <= self._rank:
            return self.__class__
        return promoted

    def scale(self, c):
        cls = self._scalar_cls(c)
        return cls._new(self.N, self.legs, {k: v * c for k, v in self._e.items()})

    def __mul__(self, other):
        if isinstance(other, LegMatrix):
            return self.matmul(other)
        if isinstance(other, (int, Fraction, RatFunc)) or type(other) in SCALAR_PROMOTION:
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)) or type(other) in SCALAR_PROMOTION:
            cls = self._scalar_cls(other)
            return cls._new(self.N, self.legs, {k: other * v for k, v in self._e.items()})
        return NotImplemented

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other):
        self._check_shape(other)
        brows = {}
        for (k, j), v in other._e.items():
            brows.setdefault(k, []).append((j, v))
        out = {}
        for (i, k), a in self._e.items():
            row = brows.get(k)
            if row is None:
                continue
            for j, b in row:
                _add_into(out, (i, j), a * b)
        return self._result_cls(other)._new(self.N, self.legs, out)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.identity(self.N, self.legs)
        base = self
        while n:
            if n & 1:
                result = result.matmul(base)
            n >>= 1
            if n:
                base = base.matmul(base)
        return result

    def __eq__(self, other):
        if not isinstance(other, LegMatrix):
            return NotImplemented
        return self.N == other.N and self.legs == other.legs and (self - other).is_zero()

    __hash__ = None

    def map(self, fn, cls=None):
        cls = cls or self.__class__
        return cls._new(self.N, self.legs, {k: fn(v) for k, v in self._e.items()})

    # -- leg operations --------------------------------------------------
    def transpose(self):
        return self.__class__(self.N, self.legs, {(j, i): v for (i, j), v in self._e.items()}, True)

    def partial_transpose(self, leg):
        self._check_leg(leg)
        N, m = self.N, self.legs
        p = m - leg
        out = {}
        for (i, j), v in self._e.items():
            di = (i // N**p) % N
            dj = (j // N**p) % N
            i2 = i + (dj - di) * N**p
            j2 = j + (di - dj) * N**p
            out[(i2, j2)] = v
        return self.__class__(N, m, out, True)

    def partial_trace(self, leg):
        """Trace over one leg.  A one-leg matrix returns its scalar trace."""
        self._check_leg(leg)
        if self.legs == 1:
            return self.trace()
        N, m = self.N, self.legs
        out = {}
        for (i, j), v in self._e.items():
            di = digits(i, N, m)
            dj = digits(j, N, m)
            if di[leg - 1] != dj[leg - 1]:
                continue
            ri = compose_index(di[: leg - 1] + di[leg:], N)
            rj = compose_index(dj[: leg - 1] + dj[leg:], N)
            _add_into(out, (ri, rj), v)
        return self.__class__._new(N, m - 1, out)

    def trace(self):
        total = self._zero
        for (i, j), v in self._e.items():
            if i == j:
                total = total + v
        return total

    def permute_legs(self, perm):
        """Reorder tensor factors: old leg ``k`` (1-based) becomes new leg ``perm[k-1]``."""
        m, N = self.legs, self.N
        if sorted(perm) != list(range(1, m + 1)):
            raise MalformedInputError(f"{perm} is not a permutation of legs 1..{m}")

        def move(idx):
            d = digits(idx, N, m)
            new = [0] * m
            for k, p in enumerate(perm):
                new[p - 1] = d[k]
            return compose_index(new, N)

        return self.__class__(N, m, {(move(i), move(j)): v for (i, j), v in self._e.items()}, True)

    def swap_legs(self):
        if self.legs != 2:
            raise ShapeMismatchError("swap_legs needs a two-leg tensor")
        return self.permute_legs((2, 1))

    def embed(self, placement, legs, relabel=None):
        """Place this tensor on target legs ``placement`` of a ``legs``-leg space.

        Identity acts on the absent legs.  ``relabel`` maps spectral variables
        (name -> RatFunc or name) simultaneously on every entry, so arguments
        travel with the legs.
        """
        placement = tuple(placement)
        if len(placement) != self.legs:
            raise MalformedInputError(f"placement {placement} has wrong length for {self.legs} legs")
        if len(set(placement)) != len(placement) or not all(1 <= p <= legs for p in placement):
            raise MalformedInputError(f"leg collision or out-of-range placement {placement}")
        src = self.substitute(relabel) if relabel else self
        N, m = self.N, self.legs
        absent = [p for p in range(1, legs + 1) if p not in placement]
        out = {}
        for (i, j), v in src._e.items():
            di = digits(i, N, m)
            dj = digits(j, N, m)
            for fill in itertools.product(range(N), repeat=len(absent)):
                ti = [0] * legs
                tj = [0] * legs
                for k, p in enumerate(placement):
                    ti[p - 1] = di[k]
                    tj[p - 1] = dj[k]
                for p, a in zip(absent, fill):
                    ti[p - 1] = a
                    tj[p - 1] = a
                out[(compose_index(ti, N), compose_index(tj, N))] = v
        return self.__class__(N, legs, out, True)

    def substitute(self, bindings):
        if not bindings:
            return self
        b = {k: (RatFunc.var(v) if isinstance(v, str) else v) for k, v in bindings.items()}
        return self.map(lambda e: e.substitute(b))

    def _check_leg(self, leg):
        if not 1 <= leg <= self.legs:
            raise ShapeMismatchError(f"leg {leg} outside 1..{self.legs}")

    def __repr__(self):
        return f"{self.__class__.__name__}(N={self.N}, legs={self.legs}, nnz={len(self._e)})"

    def __str__(self):
        n = self.size
        lines = [", ".join(str(self[i, j]) for j in range(n)) for i in range(n)]
        return "[" + ";\n ".join(f"[{ln}]" for ln in lines) + "]"


class MatrixRF(LegMatrix):
    """Leg matrix with RatFunc entries (c-number tensors such as r, s, k, Pi)."""

    __slots__ = ()

    @classmethod
    def _coerce_entry(cls, v):
        return as_ratfunc(v)

    def inverse(self):
        """Exact inverse by Gauss-Jordan elimination over rational functions."""
        n = self.size
        a = [[self[i, j] for j in range(n)] + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                raise PoleError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv = a[c][c].inverse()
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return MatrixRF(self.N, self.legs, {(i, j): a[i][n + j] for i in range(n) for j in range(n)})

    def det(self):
        n = self.size
        a = [[self[i, j] for j in range(n)] for i in range(n)]
        d = ONE
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = -d
            d = d * a[c][c]
            inv = a[c][c].inverse()
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return d

    def is_constant(self):
        return all(v.is_constant() for v in self._e.values())


SpectralTensor = MatrixRF


def kron(a, b):
    """Kronecker product; legs add up, ``a`` on the slower legs."""
    if a.N != b.N:
        raise ShapeMismatchError("Kronecker factors must share the base dimension")
    sb = b.size
    out = {}
    for (i, j), x in a._e.items():
        for (k, l), y in b._e.items():
            out[(i * sb + k, j * sb + l)] = x * y
    cls = a._result_cls(b)
    return cls._new(a.N, a.legs + b.legs, out)


def commutator(a, b):
    return a.matmul(b) - b.matmul(a)


def permutation(N):
    """The flip operator P(u (x) v) = v (x) u on two legs."""
    return MatrixRF(N, 2, {(i * N + j, j * N + i): ONE for i in range(N) for j in range(N)}, True)


def identity(N, legs=1):
    return MatrixRF.identity(N, legs)


def partial_transpose(t, leg):
    return t.partial_transpose(leg)


def partial_trace(t, leg):
    return t.partial_trace(leg)


def embed(t, placement, legs, relabel=None):
    return t.embed(placement, legs, relabel)


def matrix(rows, legs=1):
    return MatrixRF.from_rows([[as_ratfunc(x) if not isinstance(x, RatFunc) else x for x in r] for r in rows], legs=legs)
