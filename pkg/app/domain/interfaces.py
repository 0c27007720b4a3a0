"""
Abstract interfaces for repositories.

Services depend on these contracts rather than on concrete file formats, so
tests can substitute in-memory implementations.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import TYPE_CHECKING, List, Union

if TYPE_CHECKING:
    from app.domain.models.module import HModule
    from app.domain.models.root_datum import RootDatumPreset
    from app.domain.services.weyl_service import LeviSystem


# ============================================================================
# REPOSITORY INTERFACES
# ============================================================================


class IPresetRepository(ABC):
    """
    Source of root-datum presets.

    Implementations must:
    - Resolve shipped presets by name
    - Load presets from explicit paths
    - Raise NotFoundError / PresetError, never return partial data
    """

    @abstractmethod
    def list_names(self) -> List[str]:
        """Names of the shipped presets."""
        pass

    @abstractmethod
    def get_by_name(self, name: str) -> "RootDatumPreset":
        """Load a shipped preset by name."""
        pass

    @abstractmethod
    def load_path(self, path: Union[str, Path]) -> "RootDatumPreset":
        """Load a preset from a file path."""
        pass


class IModuleRepository(ABC):
    """Persistence of H-modules as generator matrices."""

    @abstractmethod
    def save(self, module: "HModule", system: "LeviSystem", path: Union[str, Path]) -> Path:
        """Write a module file and return its path."""
        pass

    @abstractmethod
    def load(self, system: "LeviSystem", path: Union[str, Path]) -> "HModule":
        """Read a module file for the given Levi system."""
        pass
