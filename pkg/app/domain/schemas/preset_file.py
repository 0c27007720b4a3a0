"""Pydantic schema for the key-value preset file format."""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


def _int_vector(text: str) -> Tuple[int, ...]:
    return tuple(int(v) for v in text.replace(",", " ").split())


class PresetFile(BaseModel):
    """Parsed contents of a `.preset` file before group-theoretic checks."""

    name: str = Field(..., min_length=1)
    p: int = Field(..., ge=2)
    k0: int = Field(1, ge=1)
    rank: int = Field(..., ge=1)
    simple_roots: List[str] = Field(..., min_length=1)
    roots: Dict[str, Tuple[int, ...]]
    coroots: Dict[str, Tuple[int, ...]]
    pairings: Dict[str, Tuple[int, ...]]
    c_s: int = -1
    c_overrides: Dict[str, int] = Field(default_factory=dict)
    omega: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    central: Dict[str, Tuple[int, ...]] = Field(default_factory=dict)

    @field_validator("simple_roots", mode="before")
    @classmethod
    def split_labels(cls, value: object) -> object:
        if isinstance(value, str):
            return [label.strip() for label in value.split(",") if label.strip()]
        return value

    @model_validator(mode="after")
    def check_shapes(self) -> "PresetFile":
        labels = self.simple_roots
        if len(set(labels)) != len(labels):
            raise ValueError("simple_roots contains duplicate labels")
        for table_name in ("roots", "coroots", "pairings"):
            table = getattr(self, table_name)
            if set(table) != set(labels):
                raise ValueError(f"{table_name} must have exactly one entry per simple root")
        for label in labels:
            if len(self.roots[label]) != self.rank or len(self.coroots[label]) != self.rank:
                raise ValueError(f"root data of {label} must have length {self.rank}")
            if len(self.pairings[label]) != len(labels):
                raise ValueError(f"pairing row of {label} must have length {len(labels)}")
        for levi, seed in self.central.items():
            if len(seed) != self.rank:
                raise ValueError(f"central seed for {levi} must have length {self.rank}")
        return self

    @classmethod
    def from_mapping(cls, values: Dict[str, Optional[str]]) -> "PresetFile":
        """Group dotted keys (`root.alpha`, `omega.u1`, ...) into tables and validate."""
        data: Dict[str, object] = {
            "roots": {},
            "coroots": {},
            "pairings": {},
            "c_overrides": {},
            "omega": {},
            "central": {},
        }
        grouped = {
            "root": "roots",
            "coroot": "coroots",
            "pairing": "pairings",
            "central": "central",
        }
        for key, raw in values.items():
            text = (raw or "").strip()
            prefix, _, suffix = key.partition(".")
            if not suffix:
                data[key] = text
            elif prefix in grouped:
                data[grouped[prefix]][suffix] = _int_vector(text)  # type: ignore[index]
            elif prefix == "c_s":
                data["c_overrides"][suffix] = int(text)  # type: ignore[index]
            elif prefix == "omega":
                pairs = (item.split(">", 1) for item in text.split())
                data["omega"][suffix] = {src: dst for src, dst in pairs}  # type: ignore[index]
            else:
                raise ValueError(f"unknown preset key {key}")
        return cls.model_validate(data)
