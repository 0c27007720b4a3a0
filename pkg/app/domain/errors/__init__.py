"""Domain error hierarchy."""

from .exceptions import (
    DomainError,
    ValidationError,
    SizeLimitError,
    ContextMismatchError,
    ElementNotInLeviError,
    ModuleParseError,
    NotFoundError,
    PresetError,
    BusinessRuleViolationError,
    NoCentralElementFoundError,
    MissingLeviError,
    UnverifiedCentralError,
    ExtensionTooSmallError,
    MultiplicityNotFreeError,
    InvalidTripleError,
    KNotWithinPVError,
    ComputationError,
    ReductionFailureError,
    CrossCheckFailureError,
    VerificationFailureError,
    RelationCheckError,
    ErrorCode,
)

__all__ = [
    "DomainError",
    "ValidationError",
    "SizeLimitError",
    "ContextMismatchError",
    "ElementNotInLeviError",
    "ModuleParseError",
    "NotFoundError",
    "PresetError",
    "BusinessRuleViolationError",
    "NoCentralElementFoundError",
    "MissingLeviError",
    "UnverifiedCentralError",
    "ExtensionTooSmallError",
    "MultiplicityNotFreeError",
    "InvalidTripleError",
    "KNotWithinPVError",
    "ComputationError",
    "ReductionFailureError",
    "CrossCheckFailureError",
    "VerificationFailureError",
    "RelationCheckError",
    "ErrorCode",
]
