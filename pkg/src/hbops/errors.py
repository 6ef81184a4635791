"""Exception hierarchy shared by all hbops modules."""

from __future__ import annotations


class HbopsError(Exception):
    """Base class for every error raised by hbops."""


class DimensionError(HbopsError, ValueError):
    """Operands live in different ambient dimensions."""


class DegreeOverflowError(HbopsError, ValueError):
    """Exact polynomial composition would exceed the configured degree cap."""

    def __init__(self, degree: int, cap: int):
        super().__init__(f"composition degree {degree} exceeds cap {cap}")
        self.degree = degree
        self.cap = cap


class ParameterError(HbopsError, ValueError):
    """An argument is outside its admissible range."""


class DomainError(HbopsError, ValueError):
    """A point lies outside the open unit ball."""


class RangeViolation(HbopsError):
    """A self-map produced a value on or outside the unit sphere."""

    def __init__(self, witness, image_norm: float):
        super().__init__(
            f"|phi(z)| = {image_norm!r} >= 1 at z = {list(complex(c) for c in witness)!r}"
        )
        self.witness = witness
        self.image_norm = image_norm


class QuadratureError(HbopsError):
    """Adaptive quadrature hit its depth limit before meeting tolerance."""

    def __init__(self, achieved: float, requested: float):
        super().__init__(
            f"quadrature did not converge: estimated error {achieved:.3e} "
            f"> requested {requested:.3e}"
        )
        self.achieved = achieved
        self.requested = requested


class GradientUnavailable(HbopsError):
    """A derivative needed by an evaluator cannot be provided."""


class SchemaError(HbopsError, ValueError):
    """Malformed JSON input; ``field`` names the offending key."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
