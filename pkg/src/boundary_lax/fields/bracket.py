"""Leibniz-rule evaluation of Poisson brackets of field expressions."""

from __future__ import annotations

from ..exact import RatFunc
from ..tensor import LegMatrix
from .expr import ZERO_FIELD, FieldExpr, as_field
from .matrix import MatrixFieldExpr


def _partials(e):
    return {g: e.derivative_by(g) for g in e.generators()}


def _check_plain(e):
    if any(d is not None for _, d in e.terms):
        raise ValueError("bracket operands must not carry distributions")


def _bracket_partials(pa, pb, table):
    total = ZERO_FIELD
    for g, da in pa.items():
        for h, db in pb.items():
            rule = table.bracket(g, h)
            if rule:
                total = total + (da * db) * rule
    return total


def bracket_fields(a, b, table):
    """``{a, b}`` for scalar field expressions (distribution-free operands)."""
    a = as_field(a)
    b = as_field(b)
    if not a or not b:
        return ZERO_FIELD
    _check_plain(a)
    _check_plain(b)
    return _bracket_partials(_partials(a), _partials(b), table)


def poisson_bracket(A, B, table):
    """Bracket of field expressions or leg matrices.

    For matrices the result acts on the legs of ``A`` followed by the legs of
    ``B`` (Kronecker order): ``{A_1, B_2}[(i,k),(j,l)] = {A_ij, B_kl}``.
    """
    if not isinstance(A, LegMatrix) and not isinstance(B, LegMatrix):
        return bracket_fields(A, B, table)
    if not isinstance(A, LegMatrix) or not isinstance(B, LegMatrix):
        raise TypeError("bracket of a matrix with a scalar: wrap the scalar as a 1x1 matrix")
    if A.N != B.N:
        raise ValueError("operands must share the base dimension")
    pa = {}
    for k, v in A.entries.items():
        if isinstance(v, RatFunc):
            continue
        _check_plain(v)
        p = _partials(v)
        if p:
            pa[k] = p
    pb = {}
    for k, v in B.entries.items():
        if isinstance(v, RatFunc):
            continue
        _check_plain(v)
        p = _partials(v)
        if p:
            pb[k] = p
    sb = B.size
    out = {}
    for (i, j), da in pa.items():
        for (k, l), db in pb.items():
            val = _bracket_partials(da, db, table)
            if val:
                out[(i * sb + k, j * sb + l)] = val
    return MatrixFieldExpr(A.N, A.legs + B.legs, out, _trusted=True)
