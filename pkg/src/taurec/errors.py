"""Exception hierarchy.

Exit-code mapping used by the CLI: DefinitionError -> 1,
HypothesisRefused -> 2, VerificationMismatch -> 3,
InternalConsistencyError -> 4.
"""

from __future__ import annotations


class TaurecError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(TaurecError):
    """Operands carry different field tags (rational vs F_p, or different p)."""


class DimensionMismatchError(TaurecError):
    """Matrix or module dimensions are incompatible for the operation."""


class DefinitionError(TaurecError):
    """Parse or name-resolution failure in a definition file.

    Carries the 1-based line and column of the offending token when known.
    """

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}" + (f", col {col}" if col is not None else "") + f": {message}"
        super().__init__(message)


class CompileError(TaurecError):
    """Quiver presentation could not be compiled to an algebra.

    Raised for non-admissible relations and for path growth that does not
    stabilize below the length cap (likely infinite-dimensional quotient).
    """


class ValidationError(TaurecError):
    """A construction-time invariant failed (associativity, intertwining, ...)."""


class InconclusiveError(TaurecError):
    """Module decomposition could not be certified either way.

    Raised instead of guessing when the endomorphism ring cannot be split and
    cannot be certified local.
    """


class KnittingError(TaurecError):
    """AR-quiver knitting failed (mesh mismatch, or a limit was exceeded)."""


class HypothesisRefused(TaurecError):
    """A construction refused to run because its hypothesis did not verify.

    ``report`` holds structured data about which condition failed and the
    witnesses, suitable for JSON serialization.
    """

    def __init__(self, message: str, report: dict | None = None):
        self.report = report or {}
        super().__init__(message)


class VerificationMismatch(TaurecError):
    """A computed result disagrees with recorded expected results."""


class InternalConsistencyError(TaurecError):
    """Two independent computation paths that must agree disagreed.

    This is never downgraded or silently resolved; it indicates a bug.
    """
