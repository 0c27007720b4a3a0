"""Dependency injection container for service instantiation and composition."""

import logging
from typing import Optional

from app.core.config import settings
from app.domain.interfaces import IModuleRepository, IPresetRepository
from app.domain.models.root_datum import RootDatumPreset
from app.domain.repositories import ModuleRepository, PresetRepository
from app.domain.services import (
    ClassificationService,
    EightInductionsService,
    FieldService,
    HeckeService,
    InductionService,
    ModuleService,
    RootDataService,
    SimpleModuleSearchService,
    VerificationService,
    WeylService,
)

logger = logging.getLogger(__name__)


class ServiceContainer:
    """
    Dependency injection container providing the services of one preset.

    Responsibilities:
    - Create repositories
    - Load the preset and its root system
    - Instantiate services lazily, each once
    - Enable swapping repositories (e.g. in-memory presets in tests)

    Usage:
        container = ServiceContainer("GL2_Q2")
        report = container.get_classification_service().classify(field, 4)
    """

    def __init__(
        self,
        preset: str,
        preset_repo: Optional[IPresetRepository] = None,
        module_repo: Optional[IModuleRepository] = None,
        seed: int = settings.DEFAULT_SEED,
        max_workers: int = settings.MAX_WORKERS,
    ):
        self.preset_repo = preset_repo or PresetRepository()
        self.module_repo = module_repo or ModuleRepository()
        self.seed = seed
        self.max_workers = max_workers

        self.field_service = FieldService()
        self.root_data_service = RootDataService(self.preset_repo)
        self.preset: RootDatumPreset = self.root_data_service.load_preset(preset)
        self.weyl_service = WeylService(self.root_data_service.root_system(self.preset))

        self._hecke: Optional[HeckeService] = None
        self._modules: Optional[ModuleService] = None
        self._induction: Optional[InductionService] = None
        self._eight: Optional[EightInductionsService] = None
        self._search: Optional[SimpleModuleSearchService] = None
        self._classification: Optional[ClassificationService] = None
        self._verification: Optional[VerificationService] = None
        logger.info(f"ServiceContainer initialized for {self.preset.name} (seed {seed})")

    # ========================================================================
    # SERVICE FACTORIES
    # ========================================================================

    def get_hecke_service(self) -> HeckeService:
        """Hecke arithmetic with coefficients in the prime field."""
        if self._hecke is None:
            self._hecke = HeckeService(self.weyl_service, self.field_service.field(self.preset.p, 1))
        return self._hecke

    def get_module_service(self) -> ModuleService:
        if self._modules is None:
            self._modules = ModuleService(
                self.weyl_service, self.get_hecke_service(), self.field_service, seed=self.seed
            )
        return self._modules

    def get_induction_service(self) -> InductionService:
        if self._induction is None:
            self._induction = InductionService(
                self.weyl_service, self.get_hecke_service(), self.get_module_service()
            )
        return self._induction

    def get_eight_inductions_service(self) -> EightInductionsService:
        if self._eight is None:
            self._eight = EightInductionsService(
                self.get_induction_service(), self.get_module_service(), max_workers=self.max_workers
            )
        return self._eight

    def get_search_service(self) -> SimpleModuleSearchService:
        if self._search is None:
            self._search = SimpleModuleSearchService(
                self.weyl_service, self.get_module_service(), self.field_service
            )
        return self._search

    def get_classification_service(self) -> ClassificationService:
        if self._classification is None:
            self._classification = ClassificationService(
                self.root_data_service,
                self.get_induction_service(),
                self.get_search_service(),
                max_workers=self.max_workers,
            )
        return self._classification

    def get_verification_service(self) -> VerificationService:
        if self._verification is None:
            self._verification = VerificationService(
                self.get_classification_service(),
                self.get_eight_inductions_service(),
                self.field_service,
            )
        return self._verification
