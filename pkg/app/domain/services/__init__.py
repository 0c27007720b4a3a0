"""Domain services: one per layer of the workbench."""

from .field_service import FieldService
from .root_data_service import RootDataService
from .weyl_service import WeylService
from .hecke_service import HeckeService
from .module_service import ModuleService
from .induction_service import InductionService
from .eight_inductions_service import EightInductionsService
from .simple_module_search import SimpleModuleSearchService
from .classification_service import ClassificationService
from .verification_service import VerificationService

__all__ = [
    "FieldService",
    "RootDataService",
    "WeylService",
    "HeckeService",
    "ModuleService",
    "InductionService",
    "EightInductionsService",
    "SimpleModuleSearchService",
    "ClassificationService",
    "VerificationService",
]
