"""Exception hierarchy shared by every layer of the package."""


class BoundaryLaxError(Exception):
    """Base class for all errors raised by boundary_lax."""


class MalformedInputError(BoundaryLaxError, ValueError):
    """Input violates a structural precondition (shape, zero denominator, ...)."""


class PoleError(BoundaryLaxError, ZeroDivisionError):
    """A substitution or evaluation hit an identically vanishing denominator."""


class UnsupportedGrowthError(BoundaryLaxError, ValueError):
    """A Laurent expansion at infinity would need positive powers beyond the bound."""


class ShapeMismatchError(MalformedInputError):
    """Operands have incompatible matrix or tensor shapes."""


class NotALieBasisError(BoundaryLaxError, ValueError):
    """Basis is not closed under commutators, or is linearly dependent."""


class DegenerateMetricError(BoundaryLaxError, ValueError):
    """The trace form on the supplied basis is not invertible."""


class UnrepresentableRuleError(BoundaryLaxError, ValueError):
    """A matrix bracket rule does not lie in the span of t_a (x) t_b."""


class MissingRuleError(BoundaryLaxError, KeyError):
    """The bracket table has no rule for a pair of generators."""


class IntegrationError(BoundaryLaxError, ValueError):
    """A field expression cannot be integrated with the declared conventions."""


class PrecisionWarning(UserWarning):
    """Numeric result depends on an ill-conditioned inversion."""


class PoleProximityError(BoundaryLaxError, ValueError):
    """Spectral parameter too close to a pole of the Lax operator."""


class FitDegeneracyError(BoundaryLaxError, ValueError):
    """The spectral grid cannot determine the requested expansion coefficients."""


class ScenarioError(BoundaryLaxError, ValueError):
    """Scenario file is unreadable or inconsistent."""


class ExpressionSyntaxError(ScenarioError):
    """Expression text does not conform to the grammar.

    ``position`` is the 0-based character offset, ``line`` and ``column`` are
    1-based.
    """

    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        self.line = text.count("\n", 0, position) + 1
        self.column = position - (text.rfind("\n", 0, position) + 1) + 1
        super().__init__(
            f"{message} at position {position} (line {self.line}, column {self.column})"
        )
