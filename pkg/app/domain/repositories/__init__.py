"""Domain repositories for presets and module files."""

from .preset_repository import PresetRepository
from .module_repository import ModuleRepository

__all__ = [
    "PresetRepository",
    "ModuleRepository",
]
