"""
Custom exceptions for the qinv engine.

This module centralizes every error the engine raises so the CLI can map
them to exit codes and user-facing messages in one place.
"""

from __future__ import annotations

from typing import Optional, Sequence


# =============================================================================
# BASE EXCEPTIONS
# =============================================================================

class QinvException(Exception):
    """Base exception for all qinv-specific errors."""

    def __init__(self, message: str, code: Optional[str] = None):
        self.message = message
        self.code = code or "QINV_ERROR"
        super().__init__(self.message)

    def __str__(self) -> str:
        return self.message


# =============================================================================
# PARSE EXCEPTIONS
# =============================================================================

class ParseError(QinvException):
    """Base class for unreadable input files."""

    def __init__(self, message: str, code: str = "PARSE_ERROR"):
        super().__init__(message, code=code)


class ScalarParseError(ParseError):
    """Raised when a scalar string is malformed."""

    def __init__(self, message: str):
        super().__init__(message, code="SCALAR_PARSE_ERROR")


class SpecFormatError(ParseError):
    """Raised when a category, scene or net file has a wrong shape."""

    def __init__(self, message: str):
        super().__init__(message, code="FORMAT_ERROR")


# =============================================================================
# AXIOM EXCEPTIONS
# =============================================================================

class AxiomError(QinvException):
    """Base class for a category spec that violates an axiom."""

    axiom = "axiom"

    def __init__(self, message: str):
        super().__init__(message, code=f"{self.axiom.upper()}_ERROR")


class GroupAxiomError(AxiomError):
    axiom = "group"


class GradingError(AxiomError):
    axiom = "grading"


class FusionError(AxiomError):
    axiom = "fusion"


class PentagonError(AxiomError):
    """Raised with the offending indices of the first failing pentagon."""

    axiom = "pentagon"


class UnitError(AxiomError):
    """Raised when a unit-leg F-symbol differs from the identity."""

    axiom = "unit"


class DimensionError(AxiomError):
    axiom = "dimension"


class PivotalError(AxiomError):
    axiom = "pivotal"


class SphericalityError(AxiomError):
    axiom = "spherical"


# =============================================================================
# ALGEBRA EXCEPTIONS
# =============================================================================

class AlgebraError(QinvException):
    """Base class for exact linear algebra failures."""

    def __init__(self, message: str, code: str = "ALGEBRA_ERROR"):
        super().__init__(message, code=code)


class DivisionByZeroError(AlgebraError):
    def __init__(self, message: str = "Division par zéro."):
        super().__init__(message, code="DIVISION_BY_ZERO")


class NotIdempotentError(AlgebraError):
    def __init__(self, message: str = "La matrice n'est pas idempotente."):
        super().__init__(message, code="NOT_IDEMPOTENT")


class SingularMatrixError(AlgebraError):
    def __init__(self, message: str = "Matrice singulière."):
        super().__init__(message, code="SINGULAR_MATRIX")


class FieldTooSmallError(AlgebraError):
    """Raised when an endomorphism algebra does not split over Q(zeta_N)."""

    def __init__(self, obj_name: str, conductor: int):
        self.obj_name = obj_name
        self.conductor = conductor
        super().__init__(
            f"L'algèbre End({obj_name}) ne se scinde pas sur Q(zeta_{conductor}) : "
            f"augmentez le conducteur.",
            code="FIELD_TOO_SMALL",
        )


# =============================================================================
# CENTER EXCEPTIONS
# =============================================================================

class CenterError(QinvException):
    """Base class for failures in the G-center construction."""

    def __init__(self, message: str, code: str = "CENTER_ERROR"):
        super().__init__(message, code=code)


class NonSingularityError(CenterError):
    """Raised when a crossing or braiding check fails, with the witness data."""

    def __init__(self, message: str):
        super().__init__(message, code="NON_SINGULAR")


class NotModularError(CenterError):
    def __init__(self, message: str = "La matrice S n'est pas inversible."):
        super().__init__(message, code="NOT_MODULAR")


class AnomalyError(CenterError):
    def __init__(self, plus: str, minus: str):
        super().__init__(
            f"Catégorie anormale : Delta+ = {plus}, Delta- = {minus}.",
            code="ANOMALY",
        )


# =============================================================================
# SCENE EXCEPTIONS
# =============================================================================

class SceneValidationError(QinvException):
    """Raised when a skeleton, scene or net is inconsistent."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        text = f"{message} (à {location})" if location else message
        super().__init__(text, code="SCENE_INVALID")


class CompositionError(SceneValidationError):
    """Raised when two slices or morphisms do not compose."""

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(message, location)
        self.code = "NOT_COMPOSABLE"


# =============================================================================
# IDENTITY EXCEPTIONS
# =============================================================================

class IdentityFailure(QinvException):
    """Raised when two sides of a checked identity differ; carries the terms."""

    def __init__(self, name: str, lhs: str, rhs: str, terms: Sequence[str] = ()):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.terms = list(terms)
        lines = [f"Identité '{name}' en échec : {lhs} != {rhs}"]
        lines.extend(f"  {t}" for t in self.terms)
        super().__init__("\n".join(lines), code="IDENTITY_FAILED")


# =============================================================================
# HELPER FUNCTIONS
# =============================================================================

EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_IDENTITY = 4
EXIT_OTHER = 1


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, (AxiomError, SceneValidationError, CenterError)):
        return EXIT_VALIDATION
    if isinstance(exc, IdentityFailure):
        return EXIT_IDENTITY
    return EXIT_OTHER


def format_exception_for_cli(exc: Exception) -> str:
    """
    Format an exception for CLI display.

    Returns a user-friendly error message.
    """
    if isinstance(exc, QinvException):
        return f"[{exc.code}] {exc.message}"
    return f"Erreur inattendue : {exc}"
