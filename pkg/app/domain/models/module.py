"""Finite-dimensional right H(M_J)-modules and their analysis reports."""

from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.domain.models.root_datum import ParabolicSubset
from app.infrastructure.linalg.gf_matrix import FieldArray, FieldClass


class HModule:
    """
    A right H(M_J)-module given by one matrix per algebra generator.

    Vectors are rows and T(γ) acts by v -> v @ action[γ]. `generators` fixes the
    canonical generator order of the Levi system.
    """

    __slots__ = ("levi", "field", "dim", "action", "generators", "name", "_cache")

    def __init__(
        self,
        levi: ParabolicSubset,
        field: FieldClass,
        action: Dict[str, FieldArray],
        generators: Optional[List[str]] = None,
        name: str = "",
        dim: Optional[int] = None,
    ):
        self.levi = levi
        self.field = field
        self.generators = list(generators) if generators is not None else list(action)
        self.action = {g: field(np.asarray(action[g], dtype=np.int64)) for g in self.generators}
        if dim is None:
            dim = self.action[self.generators[0]].shape[0] if self.generators else 0
        self.dim = dim
        self.name = name
        self._cache: Dict[object, FieldArray] = {}

    @property
    def p(self) -> int:
        return int(self.field.characteristic)

    @property
    def k(self) -> int:
        return int(self.field.degree)

    def matrix(self, generator: str) -> FieldArray:
        return self.action[generator]

    def identity(self) -> FieldArray:
        return self.field.Identity(self.dim)

    def renamed(self, name: str) -> "HModule":
        return HModule(self.levi, self.field, self.action, self.generators, name, self.dim)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"HModule{label}(levi={self.levi}, F_{self.p}^{self.k}, dim={self.dim})"


class RelationReport(BaseModel):
    """Outcome of checking the defining relations on generator matrices."""

    passed: bool
    failures: List[str] = Field(default_factory=list)
    checked: int = 0


class CommutantReport(BaseModel):
    """End_H(m) viewed as an algebra."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    module: HModule
    commutant_dim: int
    center_degree: int
    is_field: bool


class SubmoduleLattice(BaseModel):
    """
    All submodules of a module, as RREF bases, with inclusion and lattice tables.

    `order[i][j]` is true when node i is contained in node j.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    module: HModule
    nodes: List[FieldArray]
    order: List[List[bool]]
    joins: List[List[int]]
    meets: List[List[int]]

    @property
    def size(self) -> int:
        return len(self.nodes)

    def dimensions(self) -> List[int]:
        return [int(node.shape[0]) for node in self.nodes]

    def bottom(self) -> int:
        return self.dimensions().index(0)

    def top(self) -> int:
        return self.dimensions().index(self.module.dim)

    def covers(self) -> List[Tuple[int, int]]:
        """Pairs (i, j) with node i maximal below node j."""
        n = self.size
        result = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.order[i][j]:
                    continue
                if not any(
                    k not in (i, j) and self.order[i][k] and self.order[k][j] for k in range(n)
                ):
                    result.append((i, j))
        return result
