"""Shared exception types.

Every error the library raises on purpose derives from EndoscopeError so the
CLI can translate failures into machine-readable reports deterministically.
"""


class EndoscopeError(Exception):
    """Base class for all library errors."""

    kind = "error"


class ValidationError(EndoscopeError):
    """Malformed or out-of-contract input data."""

    kind = "validation"


class DegreeCapExceeded(ValidationError):
    kind = "degree-cap"


class NonSquarefreeInput(ValidationError):
    kind = "non-squarefree"


class NonIntegralElement(EndoscopeError):
    """Element whose characteristic polynomial is not integer-valued.

    Kept distinct from plain validation errors: classification criteria for
    roots of unity need algebraic integers, so such inputs are reported
    separately instead of being classified incorrectly.
    """

    kind = "non-integral-element"


class DivisibilityViolation(EndoscopeError):
    kind = "divisibility"


class NotSimpleAlbertType(EndoscopeError):
    kind = "not-simple-albert-type"


class PrecisionExhausted(EndoscopeError):
    """Certified refinement hit the precision cap without separating."""

    kind = "precision-exhausted"


class CrossCheckError(EndoscopeError):
    """Two provably-equal computation paths disagreed: an internal bug."""

    kind = "internal-cross-check"
