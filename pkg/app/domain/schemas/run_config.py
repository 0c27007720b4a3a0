"""Validated configuration of one CLI run."""

from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from app.core.config import settings
from app.core.utils import parse_field_spec


class RunConfig(BaseModel):
    """Everything that determines the output of a command; equal configs give equal reports."""

    command: str
    preset: str = Field(..., min_length=1)
    p: Optional[int] = None
    k: int = Field(1, ge=1)
    seed: int = settings.DEFAULT_SEED
    dim_bound: int = Field(4, ge=0, le=settings.MAX_DIM_BOUND)
    output_dir: Path = Path(settings.OUTPUT_DIR)
    levi: Optional[str] = None
    module_file: Optional[Path] = None
    submodules: bool = False

    @field_validator("command")
    @classmethod
    def known_command(cls, value: str) -> str:
        if value not in ("info", "induce", "classify", "verify-all"):
            raise ValueError(f"Unknown command {value}")
        return value

    @classmethod
    def with_field(cls, field_spec: Optional[str], **values) -> "RunConfig":
        """Build from a `p^k` field spec; without one the preset's own field is used."""
        if field_spec:
            p, k = parse_field_spec(field_spec)
            values.update(p=p, k=k)
        return cls(**values)

    def field_pair(self, preset_p: int, preset_k: int) -> Tuple[int, int]:
        return (self.p, self.k) if self.p is not None else (preset_p, preset_k)
