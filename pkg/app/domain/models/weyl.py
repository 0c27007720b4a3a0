"""Extended affine Weyl group elements W = Λ ⋊ W₀."""

from functools import lru_cache
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.domain.models.root_datum import ParabolicSubset

Matrix = Tuple[Tuple[int, ...], ...]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def as_matrix(array: np.ndarray) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in np.asarray(array))


@lru_cache(maxsize=None)
def inverse_matrix(w: Matrix) -> Matrix:
    return as_matrix(np.rint(np.linalg.inv(np.array(w, dtype=float))).astype(np.int64))


@lru_cache(maxsize=65536)
def matrix_product(w1: Matrix, w2: Matrix) -> Matrix:
    return as_matrix(np.array(w1, dtype=np.int64) @ np.array(w2, dtype=np.int64))


@lru_cache(maxsize=65536)
def _apply(w: Matrix, lam: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(int(v) for v in np.array(w, dtype=np.int64) @ np.array(lam, dtype=np.int64))


class AffWeylElt:
    """
    t_λ w with λ in the cocharacter lattice and w an integer matrix acting on it.

    The product is (λ₁, w₁)(λ₂, w₂) = (λ₁ + w₁λ₂, w₁w₂). Elements are immutable
    and hashable, so they key the coefficient maps of Hecke elements.
    """

    __slots__ = ("lam", "w", "_hash")

    def __init__(self, lam: Tuple[int, ...], w: Matrix):
        self.lam = tuple(int(v) for v in lam)
        self.w = w
        self._hash = hash((self.lam, self.w))

    @classmethod
    def identity(cls, rank: int) -> "AffWeylElt":
        return cls((0,) * rank, identity_matrix(rank))

    @classmethod
    def translation(cls, lam: Tuple[int, ...]) -> "AffWeylElt":
        return cls(lam, identity_matrix(len(lam)))

    @classmethod
    def finite(cls, w: Matrix) -> "AffWeylElt":
        return cls((0,) * len(w), w)

    @property
    def rank(self) -> int:
        return len(self.lam)

    def is_identity(self) -> bool:
        return not any(self.lam) and self.w == identity_matrix(self.rank)

    def __mul__(self, other: "AffWeylElt") -> "AffWeylElt":
        moved = _apply(self.w, other.lam)
        lam = tuple(a + b for a, b in zip(self.lam, moved))
        return AffWeylElt(lam, matrix_product(self.w, other.w))

    def inverse(self) -> "AffWeylElt":
        w_inv = inverse_matrix(self.w)
        lam = tuple(-v for v in _apply(w_inv, self.lam))
        return AffWeylElt(lam, w_inv)

    def __pow__(self, exponent: int) -> "AffWeylElt":
        base = self if exponent >= 0 else self.inverse()
        result = AffWeylElt.identity(self.rank)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def act(self, vector: Tuple[int, ...]) -> Tuple[int, ...]:
        """Affine action v -> λ + w v on the cocharacter lattice."""
        moved = _apply(self.w, tuple(vector))
        return tuple(a + b for a, b in zip(self.lam, moved))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffWeylElt):
            return NotImplemented
        return self.lam == other.lam and self.w == other.w

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"AffWeylElt(lam={self.lam}, w={self.w})"


class CosetReps(BaseModel):
    """Minimal-length representatives of W_{0,J}\\W_{0,K}, sorted by (length, word)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    levi: ParabolicSubset
    ambient: ParabolicSubset
    reps: Tuple[AffWeylElt, ...]

    def __len__(self) -> int:
        return len(self.reps)

    def index(self, element: AffWeylElt) -> int:
        return self.reps.index(element)
