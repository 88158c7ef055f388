"""Matrices of field expressions."""

from __future__ import annotations

from ..tensor import SCALAR_PROMOTION, LegMatrix, MatrixRF
from .expr import ZERO_FIELD, FieldExpr, GeneratorSymbol, as_field


class MatrixFieldExpr(LegMatrix):
    """Leg matrix whose entries are FieldExpr (L, T, boundary currents, ...)."""

    __slots__ = ()
    _zero = ZERO_FIELD
    _rank = 1

    @classmethod
    def _coerce_entry(cls, v):
        return as_field(v)

    @classmethod
    def _new(cls, N, legs, entries):
        out = {}
        for k, v in entries.items():
            if not isinstance(v, FieldExpr):
                v = as_field(v)
            if v:
                out[k] = v
        return cls(N, legs, out, _trusted=True)

    @classmethod
    def from_matrix(cls, m):
        if isinstance(m, MatrixFieldExpr):
            return m
        return cls._new(m.N, m.legs, m.entries)

    def rename_points(self, mapping):
        return self.map(lambda e: e.rename_points(mapping))

    def c_number(self):
        """The field-free, distribution-free part as MatrixRF, or None if fields remain."""
        out = {}
        for k, v in self._e.items():
            if any(mono or dist is not None for mono, dist in v.terms):
                return None
            out[k] = v.constant_part()
        return MatrixRF(self.N, self.legs, out)

    def distribution_part(self, dist):
        return self.map(lambda e: e.distribution_part(dist))

    def without_distributions(self):
        return self.map(lambda e: FieldExpr({k: c for k, c in e.items() if k[1] is None}, True))


SCALAR_PROMOTION[FieldExpr] = MatrixFieldExpr


def field_matrix(family, basis, point):
    """``sum_a family^a(point) t_a`` as an N x N field matrix."""
    out = MatrixFieldExpr.zeros(basis.N)
    for a, t in enumerate(basis):
        out = out + t.scale(FieldExpr.generator(GeneratorSymbol(family, a, point)))
    return out


def as_field_matrix(m):
    if isinstance(m, MatrixFieldExpr):
        return m
    if isinstance(m, LegMatrix):
        return MatrixFieldExpr.from_matrix(m)
    raise TypeError(f"expected a leg matrix, got {type(m).__name__}")


__all__ = ["MatrixFieldExpr", "as_field_matrix", "field_matrix"]
