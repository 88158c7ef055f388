"""Symbolic Poisson engine for fields with delta and delta' brackets."""

from .bracket import bracket_fields, poisson_bracket
from .expr import (
    ONE_FIELD,
    ZERO_FIELD,
    FieldExpr,
    GeneratorSymbol,
    as_field,
    canonicalize,
    delta,
    integrate,
)
from .matrix import MatrixFieldExpr, as_field_matrix, field_matrix
from .table import BracketTable, component_brackets_from_matrix_rule

__all__ = [
    "BracketTable",
    "FieldExpr",
    "GeneratorSymbol",
    "MatrixFieldExpr",
    "ONE_FIELD",
    "ZERO_FIELD",
    "as_field",
    "as_field_matrix",
    "bracket_fields",
    "canonicalize",
    "component_brackets_from_matrix_rule",
    "delta",
    "field_matrix",
    "integrate",
    "poisson_bracket",
]
