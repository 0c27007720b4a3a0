"""Finite fields, Frobenius and field towers."""

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Set, Tuple

import galois
import numpy as np

from app.core.config import settings
from app.core.utils import divisors, is_prime
from app.domain.errors import SizeLimitError, ValidationError
from app.infrastructure.linalg.gf_matrix import FieldArray, FieldClass

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def build_field(p: int, k: int) -> FieldClass:
    """F_{p^k} defined by the lexicographically least irreducible polynomial."""
    if k == 1:
        return galois.GF(p)
    poly = galois.irreducible_poly(p, k, method="min")
    return galois.GF(p**k, irreducible_poly=poly)


def field_degree(field: FieldClass) -> int:
    return int(field.degree)


def field_characteristic(field: FieldClass) -> int:
    return int(field.characteristic)


class FieldTower:
    """
    Compatible embeddings F_{p^k} -> F_{p^N} for every k dividing N.

    F_{p^k} is embedded by sending its generator to the smallest root (by
    integer representation) of its defining polynomial in F_{p^N}. Maps between
    two intermediate levels go through the top field, so they compose.
    """

    def __init__(self, p: int, top_degree: int):
        self.p = p
        self.top_degree = top_degree
        self.top = build_field(p, top_degree)
        self.degrees = divisors(top_degree)
        self._up: Dict[int, np.ndarray] = {}
        self._down: Dict[int, Dict[int, int]] = {}
        for k in self.degrees:
            self._index_level(k)

    def _index_level(self, k: int) -> None:
        small = build_field(self.p, k)
        if k == 1 or k == self.top_degree:
            image = np.arange(small.order, dtype=np.int64)
        else:
            coeffs = [int(c) for c in small.irreducible_poly.coeffs]
            poly = galois.Poly(coeffs, field=self.top)
            root = min(int(r) for r in poly.roots())
            powers = self.top(root) ** np.arange(k - 1, -1, -1)
            vectors = np.asarray(small.elements.vector(), dtype=np.int64)
            image = np.asarray(np.sum(self.top(vectors) * powers, axis=-1), dtype=np.int64)
        self._up[k] = image
        self._down[k] = {int(y): x for x, y in enumerate(image)}

    def _check(self, k: int) -> None:
        if k not in self._up:
            raise ValidationError(
                f"F_{self.p}^{k} is not a level of the tower of degree {self.top_degree}"
            )

    def to_top(self, values: FieldArray, k: int) -> FieldArray:
        self._check(k)
        return self.top(self._up[k][np.asarray(values, dtype=np.int64)])

    def from_top(self, values: FieldArray, k: int) -> FieldArray:
        """Pull elements of the top field back to F_{p^k}; they must lie in its image."""
        self._check(k)
        table = self._down[k]
        flat = np.asarray(values, dtype=np.int64).ravel()
        try:
            pulled = [table[int(y)] for y in flat]
        except KeyError as exc:
            raise ValidationError(
                f"Element {exc.args[0]} of F_{self.p}^{self.top_degree} is not in F_{self.p}^{k}"
            )
        field = build_field(self.p, k)
        return field(np.array(pulled, dtype=np.int64).reshape(np.shape(values)))

    def embed(self, values: FieldArray, k: int, k_prime: int) -> FieldArray:
        if k_prime % k:
            raise ValidationError(f"Cannot embed F_{self.p}^{k} into F_{self.p}^{k_prime}")
        return self.from_top(self.to_top(values, k), k_prime)

    def contains(self, values: FieldArray, k_big: int, k_small: int) -> bool:
        """Whether elements of F_{p^k_big} lie in the copy of F_{p^k_small}."""
        table = self._down[k_small]
        return all(int(y) in table for y in np.asarray(self.to_top(values, k_big)).ravel())


class ScalarRestriction:
    """
    F_{p^d}-structure of F_{p^k}: the basis 1, g, ..., g^{r-1} (g primitive,
    r = k/d) and coordinates with respect to it.
    """

    def __init__(self, big: FieldClass, small_degree: int, tower: FieldTower):
        k = field_degree(big)
        if k % small_degree:
            raise ValidationError(f"F_p^{small_degree} is not a subfield of F_p^{k}")
        self.big = big
        self.small = build_field(field_characteristic(big), small_degree)
        self.rank = k // small_degree
        p = field_characteristic(big)
        prime = build_field(p, 1)
        self.basis = big.primitive_element ** np.arange(self.rank)
        # polynomial basis x^{d-1}, ..., 1 of the small field, embedded
        small_poly_basis = self.small(p ** np.arange(small_degree - 1, -1, -1))
        embedded = tower.to_top(small_poly_basis, small_degree)
        rows = [
            np.asarray((b * s).vector(), dtype=np.int64)
            for b in self.basis
            for s in embedded
        ]
        self._solver = np.linalg.inv(prime(np.array(rows)))
        self._small_degree = small_degree

    def coordinates(self, values: FieldArray) -> FieldArray:
        """Coordinates over the small field; adds a trailing axis of length r."""
        vectors = values.vector()
        flat = vectors.reshape(-1, vectors.shape[-1]) @ self._solver
        shaped = flat.reshape(values.shape + (self.rank, self._small_degree))
        return self.small.Vector(shaped)

    def restrict_matrix(self, matrix: FieldArray) -> FieldArray:
        """Matrix over the small field of the same operator on the restricted space."""
        n = matrix.shape[0]
        products = matrix[:, :, None] * self.basis[None, None, :]
        coords = self.coordinates(products)  # [i, j, a, b]
        return self.small(
            np.asarray(coords).transpose(0, 2, 1, 3).reshape(n * self.rank, n * self.rank)
        )


class FieldService:
    """
    Finite-field arithmetic handles for the workbench.

    Responsibilities:
    - Build F_{p^k} with the lexicographically least irreducible polynomial
    - Frobenius orbits and minimal subfields
    - Field towers and embeddings between levels
    - Restriction of scalars to subfields
    """

    def __init__(self, size_limit: int = settings.FIELD_SIZE_LIMIT):
        self.size_limit = size_limit
        self._towers: Dict[Tuple[int, int], FieldTower] = {}
        self._restrictions: Dict[Tuple[int, int, int], ScalarRestriction] = {}

    def field(self, p: int, k: int) -> FieldClass:
        """
        Field handle for F_{p^k}.

        Raises:
            ValidationError: p not prime or k < 1
            SizeLimitError: p^k above the desk-scale bound
        """
        if not is_prime(p) or k < 1:
            raise ValidationError(f"Invalid field parameters p={p}, k={k}")
        if p**k > self.size_limit:
            raise SizeLimitError(
                f"F_{p}^{k} exceeds the field size bound", limit=self.size_limit
            )
        return build_field(p, k)

    def tower(self, p: int, top_degree: int) -> FieldTower:
        key = (p, top_degree)
        if key not in self._towers:
            self.field(p, top_degree)
            logger.debug(f"Building field tower over F_{p} of degree {top_degree}")
            self._towers[key] = FieldTower(p, top_degree)
        return self._towers[key]

    def embed(self, values: FieldArray, k_prime: int) -> FieldArray:
        """Embed values of F_{p^k} into F_{p^k'} through the tower of degree k'."""
        field = type(values)
        k = field_degree(field)
        if k == k_prime:
            return values
        return self.tower(field_characteristic(field), k_prime).embed(values, k, k_prime)

    def pull_back(self, values: FieldArray, k: int) -> FieldArray:
        """Inverse of `embed` for values lying in the copy of F_{p^k}."""
        field = type(values)
        top = field_degree(field)
        if top == k:
            return values
        return self.tower(field_characteristic(field), top).from_top(values, k)

    def restriction(self, big: FieldClass, small_degree: int) -> ScalarRestriction:
        key = (field_characteristic(big), field_degree(big), small_degree)
        if key not in self._restrictions:
            tower = self.tower(key[0], key[1])
            self._restrictions[key] = ScalarRestriction(big, small_degree, tower)
        return self._restrictions[key]

    def frobenius_orbit(self, x: FieldArray) -> List[FieldArray]:
        """{x, x^p, ..., x^{p^(k-1)}} without repetition, in order of appearance."""
        field = type(x)
        p = field_characteristic(field)
        orbit: List[FieldArray] = []
        seen: Set[int] = set()
        current = x
        for _ in range(field_degree(field)):
            if int(current) in seen:
                break
            seen.add(int(current))
            orbit.append(current)
            current = current**p
        return orbit

    def minimal_subfield(self, values: Iterable[FieldArray]) -> int:
        """Smallest d dividing the ambient degree with every value fixed by x -> x^(p^d)."""
        arrays = [v for v in values if isinstance(v, galois.FieldArray) and v.size]
        if not arrays:
            return 1
        field = type(arrays[0])
        k = field_degree(field)
        p = field_characteristic(field)
        items = [np.asarray(v, dtype=np.int64).ravel() for v in arrays]
        flat = field(np.concatenate(items))
        for d in divisors(k):
            if np.array_equal(flat ** (p**d), flat):
                return d
        return k

    def frobenius_table(self, field: FieldClass, power: int = 1) -> np.ndarray:
        """Integer table of x -> x^(p^power) over the elements of `field`."""
        p = field_characteristic(field)
        return np.asarray(field.elements ** (p**power), dtype=np.int64)

    def subfield_mask(self, field: FieldClass, d: int) -> np.ndarray:
        """Boolean mask over integer representations marking the copy of F_{p^d}."""
        return self.frobenius_table(field, d) == np.arange(field.order)
