"""Induced modules and triples (P, V, Q) with their derived modules."""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from app.domain.models.module import HModule
from app.domain.models.root_datum import ParabolicSubset
from app.domain.models.weyl import CosetReps


class InducedModule(BaseModel):
    """
    A module over H(M_K) induced from H(M_J), with the coset bookkeeping.

    Carrier coordinate i is the basis vector `basis_map[i] = (v, d)` of the
    base module tensored with the coset representative `cosets.reps[d]`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    base: HModule
    levi: ParabolicSubset
    ambient: ParabolicSubset
    cosets: CosetReps
    carrier: HModule
    variant: str = "tensor-theta"

    @property
    def basis_map(self) -> List[Tuple[int, int]]:
        return [(v, d) for d in range(len(self.cosets)) for v in range(self.base.dim)]

    @property
    def dim(self) -> int:
        return self.carrier.dim


class Triple(BaseModel):
    """(P, V, Q) with Δ_V, P(V), e(V), St_Q(V) and I(P, V, Q) filled in."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    P: ParabolicSubset
    V: HModule
    Q: ParabolicSubset
    delta_v: ParabolicSubset
    p_of_v: ParabolicSubset
    e_v: HModule
    steinberg: HModule
    module: HModule
    name: Optional[str] = None

    def label(self) -> str:
        return self.name or f"({self.P.key()}, {self.V.name or 'V'}, {self.Q.key()})"
