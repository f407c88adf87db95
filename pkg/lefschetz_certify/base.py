"""
Base error class and shared utilities for lefschetz-certify.
"""

import re
from fractions import Fraction
from typing import Optional


class LefschetzError(ValueError):
    """
    Base class for every error raised by the library.

    Carries optional location information so callers (the CLI in particular)
    can point at the offending part of an input document:

        fiber_index: index of the fiber configuration that failed, if any
        path:        field path inside an input document, e.g. "fibers/3/curves/0"
    """

    def __init__(self, message: str, fiber_index: Optional[int] = None, path: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.fiber_index = fiber_index
        self.path = path

    def located(self, fiber_index: Optional[int] = None, path: Optional[str] = None):
        """Fill in location fields that are still empty and return self."""
        if self.fiber_index is None:
            self.fiber_index = fiber_index
        if self.path is None:
            self.path = path
        return self

    def __str__(self):
        where = []
        if self.fiber_index is not None:
            where.append(f"fiber {self.fiber_index}")
        if self.path:
            where.append(self.path)
        if where:
            return f"{self.message} ({', '.join(where)})"
        return self.message


# --- surface_config ---

class InvalidPiece(LefschetzError):
    pass


class EulerMismatch(LefschetzError):
    pass


class BoundaryMismatch(LefschetzError):
    pass


class Disconnected(LefschetzError):
    pass


class EmptyCurveSet(LefschetzError):
    pass


class HomologyInconsistent(LefschetzError):
    pass


class IndexOutOfRange(LefschetzError, IndexError):
    pass


# --- homology ---

class DimensionMismatch(LefschetzError):
    pass


class NonPrimitiveCurveClass(LefschetzError):
    pass


class MatrixNotSymplectic(LefschetzError):
    pass


class MissingHomologyData(LefschetzError):
    pass


# --- invariants ---

class InvalidCounts(LefschetzError):
    pass


class ParityMismatch(LefschetzError):
    pass


class NegativeBetti(LefschetzError):
    pass


class InconsistentFlags(LefschetzError):
    pass


# --- certifier ---

class NotSemistable(LefschetzError):
    pass


class TrivialPencil(LefschetzError):
    pass


class UnknownInequalityId(LefschetzError):
    pass


class ParameterOutOfRange(LefschetzError):
    pass


class GenusTooSmall(LefschetzError):
    pass


# --- constructions ---

class InvalidPartition(LefschetzError):
    pass


class BaseSphereNoCover(LefschetzError):
    pass


# --- cli ---

class SchemaError(LefschetzError):
    """Document does not match the published schema. errors holds (path, message) pairs."""

    def __init__(self, message: str, path: Optional[str] = None, errors=()):
        super().__init__(message, path=path)
        self.errors = tuple(errors)


class ValidationError(LefschetzError):
    """A library error raised while building a description from a document."""

    def __init__(self, cause: LefschetzError):
        super().__init__(cause.message, fiber_index=cause.fiber_index, path=cause.path)
        self.cause = cause
        self.kind = type(cause).__name__


def clean_json_string(json_str):
    """
    Clean common hand-editing slips before parsing a document:
    - Remove // and /* */ comments
    - Remove trailing commas before closing brackets
    - Strip whitespace

    Only used in non-strict mode.
    """
    json_str = re.sub(r"//.*?$", "", json_str, flags=re.MULTILINE)
    json_str = re.sub(r"/\*.*?\*/", "", json_str, flags=re.DOTALL)
    json_str = re.sub(r",(\s*[}\]])", r"\1", json_str)
    json_str = re.sub(r",(\s*,)+", ",", json_str)
    return json_str.strip()


def format_fraction(value) -> Optional[str]:
    """Exact string form of a rational: "54", "-1", "3/2". None passes through."""
    if value is None:
        return None
    return str(Fraction(value))


def parse_fraction(text) -> Fraction:
    """Inverse of format_fraction. Floats are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"Not an exact rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str) or not re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", text):
        raise ValueError(f"Not an exact rational: {text!r}")
    return Fraction(text.replace(" ", ""))
