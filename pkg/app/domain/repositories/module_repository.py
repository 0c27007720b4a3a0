"""Module repository: generator matrices in a plain text file format."""

import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from app.core.utils import format_levi, parse_levi
from app.domain.errors import ModuleParseError
from app.domain.interfaces import IModuleRepository
from app.domain.models.module import HModule
from app.domain.services.field_service import build_field
from app.domain.services.weyl_service import LeviSystem
from app.infrastructure.linalg.gf_matrix import FieldClass

logger = logging.getLogger(__name__)

MODULE_SUFFIX = ".module"
HEADER_KEYS = ("levi", "p", "k", "dim")


def format_element(value: int, p: int, k: int) -> str:
    """F_p elements as integers, F_{p^k} elements as base-p digits, highest degree first."""
    if k == 1:
        return str(int(value))
    digits = []
    for _ in range(k):
        value, digit = divmod(int(value), p)
        digits.append(str(digit))
    return ":".join(reversed(digits))


def parse_element(text: str, p: int, k: int) -> int:
    """
    Integer representation of a field element written by `format_element`.

    Raises:
        ValueError: wrong number of digits or a digit outside [0, p)
    """
    parts = text.split(":")
    if k == 1 and len(parts) == 1:
        value = int(parts[0])
        if not 0 <= value < p:
            raise ValueError(f"{text} is not an element of F_{p}")
        return value
    if len(parts) != k:
        raise ValueError(f"{text} does not have {k} digits")
    value = 0
    for part in parts:
        digit = int(part)
        if not 0 <= digit < p:
            raise ValueError(f"digit {digit} outside F_{p}")
        value = value * p + digit
    return value


class ModuleRepository(IModuleRepository):
    """Reads and writes `.module` files: a `key = value` header, then one block per generator."""

    def save(self, module: HModule, system: LeviSystem, path: Union[str, Path]) -> Path:
        path = Path(path)
        if path.suffix != MODULE_SUFFIX:
            path = path.with_suffix(MODULE_SUFFIX)
        path.parent.mkdir(parents=True, exist_ok=True)
        p, k = module.p, module.k
        lines = [f"# {module.name}" if module.name else "# module"]
        lines.append(f"levi = {format_levi(module.levi.labels, system.preset.simple_roots)}")
        lines += [f"p = {p}", f"k = {k}", f"dim = {module.dim}", ""]
        for g in system.generators:
            lines.append(f"[{g}]")
            for row in np.asarray(module.action[g]):
                lines.append(" ".join(format_element(int(v), p, k) for v in row))
            lines.append("")
        path.write_text("\n".join(lines))
        logger.debug(f"Module {module.name or '?'} written to {path}")
        return path

    def load(self, system: LeviSystem, path: Union[str, Path]) -> HModule:
        """
        Read a module file; the result is not yet checked against the relations.

        Raises:
            ModuleParseError: missing file, malformed header or blocks, wrong Levi
        """
        path = Path(path)
        if not path.is_file():
            raise ModuleParseError(f"Module file {path} not found", path=str(path))
        header, blocks = self._split(path)
        missing = [key for key in HEADER_KEYS if key not in header]
        if missing:
            raise ModuleParseError(f"Header keys {missing} missing", path=str(path))
        try:
            p, k, dim = int(header["p"][0]), int(header["k"][0]), int(header["dim"][0])
            labels = parse_levi(header["levi"][0], system.preset.simple_roots)
        except ValueError as exc:
            raise ModuleParseError(f"Malformed header: {exc}", path=str(path))
        if labels != system.J.labels:
            raise ModuleParseError(
                f"File is over {format_levi(labels, system.preset.simple_roots)}, expected {system.J}",
                path=str(path),
                line=header["levi"][1],
            )
        field = build_field(p, k)
        action = {g: self._matrix(field, blocks, g, dim, path) for g in system.generators}
        name = header.get("name", (path.stem, 0))[0]
        return HModule(system.J, field, action, system.generators, name, dim)

    @staticmethod
    def _split(path: Path) -> Tuple[Dict[str, Tuple[str, int]], Dict[str, List[Tuple[str, int]]]]:
        header: Dict[str, Tuple[str, int]] = {}
        blocks: Dict[str, List[Tuple[str, int]]] = {}
        current = None
        for number, raw in enumerate(path.read_text().splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                current = line[1:-1].strip()
                if current in blocks:
                    raise ModuleParseError(f"Duplicate block [{current}]", path=str(path), line=number)
                blocks[current] = []
            elif current is None:
                if "=" not in line:
                    raise ModuleParseError(f"Expected 'key = value', got '{line}'", path=str(path), line=number)
                key, value = (part.strip() for part in line.split("=", 1))
                header[key] = (value, number)
            else:
                blocks[current].append((line, number))
        return header, blocks

    @staticmethod
    def _matrix(
        field: FieldClass, blocks: Dict[str, List[Tuple[str, int]]], g: str, dim: int, path: Path
    ) -> np.ndarray:
        if g not in blocks:
            raise ModuleParseError(f"Missing block [{g}]", path=str(path))
        rows = blocks[g]
        if len(rows) != dim:
            raise ModuleParseError(f"Block [{g}] has {len(rows)} rows, expected {dim}", path=str(path))
        p, k = int(field.characteristic), int(field.degree)
        matrix = []
        for text, number in rows:
            entries = text.split()
            if len(entries) != dim:
                raise ModuleParseError(f"Row of [{g}] has {len(entries)} entries", path=str(path), line=number)
            try:
                matrix.append([parse_element(entry, p, k) for entry in entries])
            except ValueError as exc:
                raise ModuleParseError(str(exc), path=str(path), line=number)
        return field(np.array(matrix, dtype=np.int64).reshape(dim, dim))
