"""Finitely supported elements of H(M_J) and certified central elements."""

from typing import Dict, Iterable, Iterator, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict

from app.domain.errors import ContextMismatchError
from app.domain.models.root_datum import ParabolicSubset
from app.domain.models.weyl import AffWeylElt
from app.infrastructure.linalg.gf_matrix import FieldArray, FieldClass

Scalar = Union[int, FieldArray]


class HeckeElt:
    """
    Σ c_x T(x) in the T-basis of H(M_J) over a finite field.

    Coefficients are stored as integer representations of field elements; zero
    coefficients are never stored.
    """

    __slots__ = ("levi", "field", "coeffs")

    def __init__(
        self,
        levi: ParabolicSubset,
        field: FieldClass,
        coeffs: Optional[Dict[AffWeylElt, int]] = None,
    ):
        self.levi = levi
        self.field = field
        self.coeffs: Dict[AffWeylElt, int] = {
            x: int(c) for x, c in (coeffs or {}).items() if int(c) != 0
        }

    @classmethod
    def zero(cls, levi: ParabolicSubset, field: FieldClass) -> "HeckeElt":
        return cls(levi, field)

    @classmethod
    def monomial(
        cls, levi: ParabolicSubset, field: FieldClass, x: AffWeylElt, coeff: Scalar = 1
    ) -> "HeckeElt":
        return cls(levi, field, {x: int(_to_field(field, coeff))})

    def _check(self, other: "HeckeElt") -> None:
        if other.levi != self.levi:
            raise ContextMismatchError(
                f"Hecke elements of H(M_{self.levi}) and H(M_{other.levi}) cannot be combined"
            )

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        result = dict(self.coeffs)
        for x, c in other.coeffs.items():
            result[x] = int(self.field(result.get(x, 0)) + self.field(c))
        return HeckeElt(self.levi, self.field, result)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.levi, self.field, {x: int(-self.field(c)) for x, c in self.coeffs.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, coeff: Scalar) -> "HeckeElt":
        factor = _to_field(self.field, coeff)
        return HeckeElt(
            self.levi, self.field, {x: int(self.field(c) * factor) for x, c in self.coeffs.items()}
        )

    def coefficient(self, x: AffWeylElt) -> FieldArray:
        return self.field(self.coeffs.get(x, 0))

    def items(self) -> Iterator[Tuple[AffWeylElt, FieldArray]]:
        for x, c in self.coeffs.items():
            yield x, self.field(c)

    def support(self) -> Iterable[AffWeylElt]:
        return self.coeffs.keys()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.levi == other.levi and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.levi, frozenset(self.coeffs.items())))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}·T{x.lam}" for x, c in self.coeffs.items()) or "0"
        return f"HeckeElt[{self.levi}]({terms})"


def _to_field(field: FieldClass, value: Scalar) -> FieldArray:
    if isinstance(value, int):
        if 0 <= value < field.order:
            return field(value)
        # integers such as -1 or c_s products land in the prime field
        return field(value % field.characteristic)
    return field(int(value))


class CentralElement(BaseModel):
    """An element of H(M_K) attached to a proper Levi J, central once verified."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    levi: ParabolicSubset
    ambient: ParabolicSubset
    seed: Tuple[int, ...]
    elt: HeckeElt
    verified: bool = False
    solution_dim: int = 0
