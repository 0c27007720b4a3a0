"""Pydantic report schemas; JSON dumps of these are the structured text reports."""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


class Report(BaseModel):
    """Base for reports with deterministic JSON output."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2)


class ExtensionDecomposition(Report):
    """Scalar extension of a simple module and its Galois-orbit structure."""

    module: str
    base_degree: int
    extension_degree: int
    center_degree: int
    factor_dims: List[int]
    absolutely_simple: bool
    pairwise_distinct: bool
    galois_transitive: bool
    descent_degrees: List[int] = Field(default_factory=list)
    factors: List[Any] = Field(default_factory=list, exclude=True)

    @property
    def length(self) -> int:
        return len(self.factor_dims)


class ModuleSummary(Report):
    """A module as it appears in reports."""

    name: str
    levi: List[str]
    field: str
    dim: int
    file: Optional[str] = None


class TripleSummary(Report):
    parabolic: List[str]
    v: ModuleSummary
    q: List[str]
    p_of_v: List[str]
    dim: int
    supersingular_v: bool


class InductionReport(Report):
    preset: str
    levi: List[str]
    module: ModuleSummary
    induced: ModuleSummary
    relations_passed: bool
    composition_dims: List[int]
    submodules: Optional[int] = None


class ClassificationReport(Report):
    """Simple modules up to a dimension bound and the triples realizing them."""

    preset: str
    field: str
    dim_bound: int
    characters: List[str] = Field(default_factory=list)
    simple_modules: List[ModuleSummary] = Field(default_factory=list)
    triples: List[TripleSummary] = Field(default_factory=list)
    supersingular: Dict[str, bool] = Field(default_factory=dict)
    matched: Dict[str, str] = Field(default_factory=dict)
    unmatched_simples: List[str] = Field(default_factory=list)
    unmatched_triples: List[str] = Field(default_factory=list)
    supersingular_consistent: bool = True
    failures: List[str] = Field(default_factory=list)
    passed: bool = True


class LatticeTheoremReport(Report):
    """Submodule lattices of inductions of supersingular simples versus upper sets."""

    preset: str
    field: str
    cases: List[Dict[str, Any]] = Field(default_factory=list)
    passed: bool = True


class DecompositionReport(Report):
    preset: str
    field: str
    extension_degree: int
    cases: List[ExtensionDecomposition] = Field(default_factory=list)
    passed: bool = True


class EightInductionReport(Report):
    """The eight induction variants of one module and their pairwise isomorphisms."""

    preset: str
    levi: List[str]
    module: str
    variants: Dict[str, int]
    equations: Dict[str, bool] = Field(default_factory=dict)
    isomorphism_classes: List[List[str]]
    expected_classes: List[List[str]]
    passed: bool


class SuiteReport(Report):
    """Outcome of one named verification suite."""

    name: str
    passed: bool
    checks: int = 0
    failures: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)


class VerificationReport(Report):
    preset: str
    field: str
    suites: List[SuiteReport]

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)
