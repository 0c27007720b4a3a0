"""Domain schemas for files, run configuration and reports."""

from .preset_file import PresetFile
from .run_config import RunConfig
from .reports import (
    ClassificationReport,
    DecompositionReport,
    EightInductionReport,
    ExtensionDecomposition,
    InductionReport,
    LatticeTheoremReport,
    ModuleSummary,
    SuiteReport,
    TripleSummary,
    VerificationReport,
)

__all__ = [
    "PresetFile",
    "RunConfig",
    # Reports
    "ClassificationReport",
    "DecompositionReport",
    "EightInductionReport",
    "ExtensionDecomposition",
    "InductionReport",
    "LatticeTheoremReport",
    "ModuleSummary",
    "SuiteReport",
    "TripleSummary",
    "VerificationReport",
]
