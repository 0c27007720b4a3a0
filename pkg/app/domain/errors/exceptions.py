"""
Domain-level exception hierarchy.

All failures of the algebra engine are represented as DomainError subclasses.
The CLI catches them and converts them to exit codes and stderr messages.

Pattern:
- Services raise DomainError subclasses (never bare exceptions)
- The CLI maps DomainError.exit_code to the process status
- Verification suites report failures instead of raising, except for
  computation errors that signal an internal inconsistency
"""

from enum import Enum
from typing import Any, Dict, Optional
import logging

logger = logging.getLogger(__name__)


class ErrorCode(str, Enum):
    """Standardized error codes for all domain errors."""

    # Validation errors
    VALIDATION_FAILED = "VALIDATION_FAILED"
    PARSE_ERROR = "PARSE_ERROR"
    SIZE_LIMIT = "SIZE_LIMIT"
    CONTEXT_MISMATCH = "CONTEXT_MISMATCH"
    NOT_IN_LEVI = "NOT_IN_LEVI"

    # Resource errors
    NOT_FOUND = "NOT_FOUND"
    PRESET_INVALID = "PRESET_INVALID"

    # Mathematical preconditions
    BUSINESS_RULE_VIOLATION = "BUSINESS_RULE_VIOLATION"
    NO_CENTRAL_ELEMENT = "NO_CENTRAL_ELEMENT"
    MISSING_LEVI = "MISSING_LEVI"
    UNVERIFIED_CENTRAL = "UNVERIFIED_CENTRAL"
    EXTENSION_TOO_SMALL = "EXTENSION_TOO_SMALL"
    MULTIPLICITY_NOT_FREE = "MULTIPLICITY_NOT_FREE"
    INVALID_TRIPLE = "INVALID_TRIPLE"
    K_NOT_WITHIN_P_OF_V = "K_NOT_WITHIN_P_OF_V"

    # Computation failures (bug signals)
    REDUCTION_FAILURE = "REDUCTION_FAILURE"
    CROSS_CHECK_FAILURE = "CROSS_CHECK_FAILURE"
    VERIFICATION_FAILURE = "VERIFICATION_FAILURE"
    RELATION_FAILURE = "RELATION_FAILURE"


class DomainError(Exception):
    """
    Base exception for all domain-level errors.

    Attributes:
        code: Machine-readable error code (ErrorCode enum)
        message: Human-readable error message
        details: Additional context as dict (logged, and printed by the CLI in debug mode)
        exit_code: Process exit status the CLI uses for this error
    """

    def __init__(
        self,
        code: ErrorCode,
        message: str,
        exit_code: int = 1,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.code = code
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.code.value}: {self.message}"

    def log(self, logger_instance: Optional[logging.Logger] = None) -> None:
        """Log error with full context for debugging."""
        target_logger = logger_instance or logger
        target_logger.error(
            f"Domain error: {self.code.value} - {self.message}",
            extra={
                "error_code": self.code.value,
                "error_message": self.message,
                "details": self.details,
                "exit_code": self.exit_code,
            },
        )


class ValidationError(DomainError):
    """Input validation failed."""

    def __init__(
        self,
        message: str,
        code: ErrorCode = ErrorCode.VALIDATION_FAILED,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(code=code, message=message, exit_code=2, details=details)


class SizeLimitError(ValidationError):
    """A desk-scale bound (field size, module dimension, ground set) was exceeded."""

    def __init__(self, message: str, limit: Optional[int] = None):
        super().__init__(message, code=ErrorCode.SIZE_LIMIT, details={"limit": limit})


class ContextMismatchError(ValidationError):
    """Operands live in different Hecke algebras or over different fields."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code=ErrorCode.CONTEXT_MISMATCH, details=details)


class ElementNotInLeviError(ValidationError):
    """An affine Weyl element does not lie in the requested Levi."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code=ErrorCode.NOT_IN_LEVI, details=details)


class ModuleParseError(ValidationError):
    """A module or preset file could not be parsed."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        super().__init__(
            message, code=ErrorCode.PARSE_ERROR, details={"path": path, "line": line}
        )


class NotFoundError(DomainError):
    """Requested resource not found."""

    def __init__(
        self,
        message: str,
        resource_type: Optional[str] = None,
        resource_id: Optional[Any] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        full_details = details or {}
        if resource_type:
            full_details["resource_type"] = resource_type
        if resource_id:
            full_details["resource_id"] = resource_id

        super().__init__(
            code=ErrorCode.NOT_FOUND,
            message=message,
            exit_code=2,
            details=full_details,
        )


class PresetError(DomainError):
    """A preset file is internally inconsistent."""

    def __init__(self, message: str, preset: Optional[str] = None):
        super().__init__(
            code=ErrorCode.PRESET_INVALID,
            message=message,
            exit_code=2,
            details={"preset": preset},
        )


class BusinessRuleViolationError(DomainError):
    """A mathematical precondition of an operation does not hold."""

    def __init__(
        self,
        message: str,
        code: ErrorCode = ErrorCode.BUSINESS_RULE_VIOLATION,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(code=code, message=message, exit_code=3, details=details)


class NoCentralElementFoundError(BusinessRuleViolationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code=ErrorCode.NO_CENTRAL_ELEMENT, details=details)


class MissingLeviError(BusinessRuleViolationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code=ErrorCode.MISSING_LEVI, details=details)


class UnverifiedCentralError(BusinessRuleViolationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code=ErrorCode.UNVERIFIED_CENTRAL, details=details)


class ExtensionTooSmallError(BusinessRuleViolationError):
    """The scalar extension does not split the commutant."""

    def __init__(self, message: str, factors: int, expected: int):
        super().__init__(
            message,
            code=ErrorCode.EXTENSION_TOO_SMALL,
            details={"factors": factors, "expected": expected},
        )


class MultiplicityNotFreeError(BusinessRuleViolationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code=ErrorCode.MULTIPLICITY_NOT_FREE, details=details)


class InvalidTripleError(BusinessRuleViolationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code=ErrorCode.INVALID_TRIPLE, details=details)


class KNotWithinPVError(BusinessRuleViolationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code=ErrorCode.K_NOT_WITHIN_P_OF_V, details=details)


class ComputationError(DomainError):
    """An internal consistency check failed; always a bug signal."""

    def __init__(
        self,
        message: str,
        code: ErrorCode,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(code=code, message=message, exit_code=4, details=details)


class ReductionFailureError(ComputationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, ErrorCode.REDUCTION_FAILURE, details)


class CrossCheckFailureError(ComputationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, ErrorCode.CROSS_CHECK_FAILURE, details)


class VerificationFailureError(ComputationError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, ErrorCode.VERIFICATION_FAILURE, details)


class RelationCheckError(ComputationError):
    """A constructed module violates a defining relation."""

    def __init__(self, message: str, failures: Optional[list] = None):
        super().__init__(message, ErrorCode.RELATION_FAILURE, {"failures": failures or []})

