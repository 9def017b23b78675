"""
Unified exception hierarchy for classtrace.

Every failure raised by the library derives from ClassTraceError and carries
a message, an optional details mapping and an optional cause, so the CLI can
turn any of them into a JSON error object without special cases.
"""

from typing import Any


class ClassTraceError(Exception):
    """
    Base exception for all classtrace errors.

    Provides structured error information including:
    - Clear error message
    - Optional details dictionary for reproduction
    - Optional cause exception for error chaining
    """

    def __init__(
        self, message: str, *, details: dict[str, Any] | None = None, cause: Exception | None = None
    ) -> None:
        """
        Initialize exception with structured information.

        Args:
            message: Human-readable error description
            details: Optional dictionary with additional context
            cause: Optional underlying exception that caused this error
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}
        self.cause = cause

    def __str__(self) -> str:
        """Format exception with all available information."""
        parts = [self.message]

        if self.details:
            details_str = ", ".join(f"{k}={v}" for k, v in self.details.items())
            parts.append(f"Details: {details_str}")

        if self.cause:
            parts.append(f"Caused by: {type(self.cause).__name__}: {self.cause}")

        return "\n".join(parts)

    def __repr__(self) -> str:
        """Detailed representation for debugging."""
        return (
            f"{self.__class__.__name__}("
            f"message={self.message!r}, "
            f"details={self.details!r}, "
            f"cause={self.cause!r})"
        )

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready form used for CLI error objects."""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


class ConfigurationError(ClassTraceError):
    """
    Raised when configuration is invalid or missing.

    Examples:
        - Malformed classtrace.yaml
        - Non-numeric CLASSTRACE_BUDGET
        - Non-positive bounds or worker counts
    """


class ParseError(ClassTraceError):
    """
    Raised when a textual element, polynomial or class cannot be parsed.

    Examples:
        - Unbalanced parentheses in "(x-1^2"
        - Generator symbol g used over a prime field
        - Invariant factors that do not form a divisibility chain
    """


# ---------------------------------------------------------------- field


class FieldError(ClassTraceError):
    """Raised when a finite field cannot be built or used."""


class NotPrimeError(FieldError):
    """The requested characteristic is not prime."""


class ReducibleModulusError(FieldError):
    """The supplied modulus is not a monic irreducible polynomial of the right degree."""


class FieldTooLargeError(FieldError):
    """The field order exceeds the configured bound."""


class MixedFieldsError(FieldError):
    """Operands belong to different field contexts."""


class DivisionByZeroError(FieldError):
    """Division by, or inversion of, the zero element."""


# ---------------------------------------------------------------- linear algebra


class LinearAlgebraError(ClassTraceError):
    """Raised by exact matrix operations."""


class DimensionMismatchError(LinearAlgebraError):
    """Operand shapes are incompatible."""


class SingularMatrixError(LinearAlgebraError):
    """A nonsingular matrix was required."""


class NoLUError(LinearAlgebraError):
    """
    Raised when a matrix has no LU factorization without pivoting.

    Examples:
        - [[0, 1], [1, 0]] (vanishing leading 1x1 minor)
        - Any singular matrix
    """


class NotCyclicError(LinearAlgebraError):
    """The matrix has no cyclic vector (minimal and characteristic polynomials differ)."""


# ---------------------------------------------------------------- classes


class ClassError(ClassTraceError):
    """Raised by the class model."""


class DetNotOneError(ClassError):
    """An SL class was requested for a matrix or class of determinant other than 1."""


class TooLargeError(ClassError):
    """Class enumeration exceeds the configured bound."""


# ---------------------------------------------------------------- witnesses


class WitnessError(ClassTraceError):
    """Raised by witness construction."""


class ScalarClassError(WitnessError):
    """A scalar class was passed where a nonscalar class is required."""


class TraceExcludedError(WitnessError):
    """
    Raised when the requested trace is provably absent from the trace set.

    Only 2x2 pairs with (Omega - alpha)^2 = 0 and Psi irreducible miss a trace,
    namely alpha * tr(Psi).
    """

    def __init__(
        self,
        message: str,
        *,
        excluded: Any = None,
        details: dict[str, Any] | None = None,
        cause: Exception | None = None,
    ) -> None:
        merged = dict(details or {})
        if excluded is not None:
            merged.setdefault("excluded", str(excluded))
        super().__init__(message, details=merged, cause=cause)
        self.excluded = excluded


class IrreducibleOmegaError(WitnessError):
    """The first 2x2 class has no eigenvalue in the field."""


class HypothesisViolatedError(WitnessError):
    """A constructor was called outside the hypotheses it relies on."""


class UnsupportedCaseError(WitnessError):
    """The request lies outside every construction, e.g. SL(2, q) pairs."""


class PreconditionViolatedError(WitnessError):
    """An embedding or factorization precondition does not hold."""


class MrTooSmallError(WitnessError):
    """The minimal rank of a representative is smaller than half its size."""


class InternalInconsistencyError(WitnessError):
    """A structural fact the construction depends on was found to be false."""


class ConstructionFailedError(WitnessError):
    """
    Raised when every strategy for a witness was exhausted.

    Examples:
        - Seeded search bound reached without a verified candidate
        - A builder produced a pair that failed verification
    """


class SolveFailedError(ConstructionFailedError):
    """No free row produced the required characteristic polynomial."""


class DegenerateBasisError(ConstructionFailedError):
    """No cyclic vector produced the interleaved block shape."""


class EmbedSearchFailedError(ConstructionFailedError):
    """The bounded vector search for a block embedding was exhausted."""


# ---------------------------------------------------------------- oracle


class OracleError(ClassTraceError):
    """Raised by brute-force enumeration."""


class BudgetExceededError(OracleError):
    """An orbit grew beyond the configured element budget."""
