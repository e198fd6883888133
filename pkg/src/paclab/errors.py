"""Exception types shared across the package."""


class PaclabError(Exception):
    """Base class for all package-specific errors."""


class PrecisionExhausted(PaclabError):
    """A query did not resolve within its precision cap."""


class InvalidPresentation(PaclabError):
    """An approximant sequence satisfies neither admissible shape."""


class DuplicateElement(PaclabError):
    """A repetition was detected in an enumeration required to be injective."""


class IndexNotHalting(PaclabError):
    """A program assumed to halt within budget did not."""


class NotRealizableWithinBudget(PaclabError):
    """No scanned index attained zero empirical error."""


class BudgetExhaustedBeforeCount(PaclabError):
    """Fewer distinct behaviors were found than the count oracle promised."""


class EnumerationTooShort(PaclabError):
    """A halting enumeration does not cover the requested position."""


class NonpositiveBound(PaclabError):
    """A sample-size formula evaluated to a nonpositive value."""


class WitnessViolation(PaclabError):
    """A stabilization witness was contradicted at finite precision."""


class CoverGap(PaclabError):
    """A grid cell was left uncovered by the rectangle construction."""

    def __init__(self, cell, message=""):
        self.cell = cell
        super().__init__(message or f"uncovered grid cell at {cell}")


class ConfigError(PaclabError):
    """A scenario configuration failed validation."""
