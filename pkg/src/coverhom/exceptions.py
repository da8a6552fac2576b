"""Exception types shared across the package."""


class FieldMismatchError(ValueError):
    """Arithmetic attempted between values tagged with different fields."""


class UnsupportedFieldError(ValueError):
    """Operation requires a field of different characteristic."""


class InvalidComplexError(ValueError):
    """Chain complex data fails validation (shapes, or d o d != 0)."""


class InvalidPresentationError(ValueError):
    """Group presentation data fails validation."""


class OracleMismatchError(RuntimeError):
    """Two independent computation routes disagree where they must agree."""


class MissingAxiomError(ValueError):
    """A derivation was requested without the facts it needs to start from."""


class TraceReplayError(RuntimeError):
    """A recorded derivation trace fails independent re-verification."""
