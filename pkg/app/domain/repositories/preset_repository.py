"""Preset repository: loads root-datum presets from key-value files."""

import logging
from pathlib import Path
from typing import List, Optional, Union

from dotenv import dotenv_values
from pydantic import ValidationError as PydanticValidationError

from app.core.config import settings
from app.core.utils import is_prime
from app.domain.errors import NotFoundError, PresetError
from app.domain.interfaces import IPresetRepository
from app.domain.models.root_datum import RootDatumPreset
from app.domain.schemas.preset_file import PresetFile

logger = logging.getLogger(__name__)

PRESET_SUFFIX = ".preset"
_PACKAGE_ROOT = Path(__file__).resolve().parents[3]


class PresetRepository(IPresetRepository):
    """Repository for shipped and user-supplied preset files."""

    def __init__(self, preset_dir: Optional[Union[str, Path]] = None):
        directory = Path(preset_dir or settings.PRESET_DIR)
        if not directory.is_absolute() and not directory.exists():
            directory = _PACKAGE_ROOT / directory
        self.preset_dir = directory

    def list_names(self) -> List[str]:
        if not self.preset_dir.is_dir():
            return []
        return sorted(path.stem for path in self.preset_dir.glob(f"*{PRESET_SUFFIX}"))

    def get_by_name(self, name: str) -> RootDatumPreset:
        """
        Load a shipped preset by name.

        Raises:
            NotFoundError: no preset file with that name
            PresetError: the file is malformed or inconsistent
        """
        path = self.preset_dir / f"{name}{PRESET_SUFFIX}"
        if not path.is_file():
            raise NotFoundError(
                f"Unknown preset {name}", resource_type="preset", resource_id=name
            )
        return self.load_path(path)

    def load_path(self, path: Union[str, Path]) -> RootDatumPreset:
        path = Path(path)
        if not path.is_file():
            raise NotFoundError(
                f"Preset file {path} not found", resource_type="preset", resource_id=str(path)
            )
        values = dotenv_values(path, interpolate=False)
        try:
            parsed = PresetFile.from_mapping(dict(values))
        except (PydanticValidationError, ValueError) as exc:
            raise PresetError(f"Malformed preset file {path}: {exc}", preset=str(path))

        preset = self._to_preset(parsed)
        logger.debug(f"Preset loaded: {preset.name} from {path}")
        return preset

    def _to_preset(self, parsed: PresetFile) -> RootDatumPreset:
        if not is_prime(parsed.p):
            raise PresetError(f"p = {parsed.p} is not prime", preset=parsed.name)

        labels = parsed.simple_roots
        for i, a in enumerate(labels):
            row = parsed.pairings[a]
            for j, b in enumerate(labels):
                expected = sum(x * y for x, y in zip(parsed.coroots[a], parsed.roots[b]))
                if row[j] != expected:
                    raise PresetError(
                        f"pairing <{a}^v, {b}> = {row[j]} but roots give {expected}",
                        preset=parsed.name,
                    )
                if i == j and row[j] != 2:
                    raise PresetError(f"pairing <{a}^v, {a}> must be 2", preset=parsed.name)
                if i != j and row[j] > 0:
                    raise PresetError(
                        f"off-diagonal pairing <{a}^v, {b}> must be nonpositive",
                        preset=parsed.name,
                    )

        return RootDatumPreset(
            name=parsed.name,
            p=parsed.p,
            k0=parsed.k0,
            rank=parsed.rank,
            simple_roots=tuple(labels),
            roots=dict(parsed.roots),
            coroots=dict(parsed.coroots),
            pairings=tuple(tuple(parsed.pairings[a]) for a in labels),
            default_c=parsed.c_s,
            c_overrides=dict(parsed.c_overrides),
            omega_action={u: dict(table) for u, table in parsed.omega.items()},
            central_seeds=dict(parsed.central),
        )
