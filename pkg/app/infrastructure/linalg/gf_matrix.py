"""
Exact linear algebra over finite fields on top of galois FieldArrays.

Vectors are rows; an operator A acts on a row vector v as v @ A. All bases
returned here are in reduced row echelon form unless a function says otherwise.
"""

from typing import Iterable, List, Optional, Sequence, Tuple, Type

import galois
import numpy as np

FieldArray = galois.FieldArray
FieldClass = Type[galois.FieldArray]

def zeros(field: FieldClass, rows: int, cols: int) -> FieldArray:
    return field.Zeros((rows, cols))

def identity(field: FieldClass, n: int) -> FieldArray:
    return field.Identity(n)

def scalar(field: FieldClass, value: int) -> FieldArray:
    """The image of an integer in the prime subfield of `field`."""
    return field(value % field.characteristic)

def is_zero(matrix: FieldArray) -> bool:
    return bool(np.all(matrix == 0))

def rref(matrix: FieldArray) -> Tuple[FieldArray, List[int]]:
    """Nonzero rows of the reduced row echelon form, with pivot columns."""
    field = type(matrix)
    if matrix.shape[0] == 0:
        return zeros(field, 0, matrix.shape[1]), []
    reduced = matrix.row_reduce()
    keep = np.any(reduced != 0, axis=1)
    reduced = reduced[keep]
    pivots = [int(np.flatnonzero(row != 0)[0]) for row in reduced]
    return reduced, pivots

def row_basis(rows: FieldArray) -> FieldArray:
    return rref(rows)[0]

def rank(matrix: FieldArray) -> int:
    if matrix.shape[0] == 0 or matrix.shape[1] == 0:
        return 0
    return int(np.linalg.matrix_rank(matrix))

def stack(field: FieldClass, rows: Sequence[FieldArray], width: int) -> FieldArray:
    if not rows:
        return zeros(field, 0, width)
    return field(np.vstack([np.atleast_2d(r) for r in rows]))

def null_space(matrix: FieldArray) -> FieldArray:
    """Rows x with matrix @ x = 0."""
    return matrix.null_space()

def left_null_space(matrix: FieldArray) -> FieldArray:
    """Rows y with y @ matrix = 0."""
    return matrix.left_null_space()

def reduce_against(basis: FieldArray, pivots: Sequence[int], vector: FieldArray) -> FieldArray:
    """Subtract from `vector` its component along an RREF basis."""
    if len(pivots) == 0:
        return vector.copy()
    return vector - vector[list(pivots)] @ basis

def in_span(basis: FieldArray, pivots: Sequence[int], vector: FieldArray) -> bool:
    return is_zero(reduce_against(basis, pivots, vector))

def coordinates(basis: FieldArray, vectors: FieldArray) -> FieldArray:
    """
    Coordinates of each row of `vectors` in terms of the rows of `basis`.

    `basis` must have full row rank; rows of `vectors` must lie in its span.
    """
    _, pivots = rref(basis)
    square = basis[:, pivots]
    return np.atleast_2d(vectors)[:, pivots] @ np.linalg.inv(square)

def spin(
    seeds: FieldArray,
    operators: Sequence[FieldArray],
    limit: Optional[int] = None,
) -> FieldArray:
    """
    Smallest subspace containing `seeds` and stable under every operator.

    Returns an RREF basis. Stops early once the dimension reaches `limit`.
    """
    field = type(seeds)
    width = seeds.shape[-1]
    basis, pivots = rref(np.atleast_2d(seeds))
    queue: List[FieldArray] = [row for row in basis]
    while queue:
        vector = queue.pop()
        for op in operators:
            image = reduce_against(basis, pivots, vector @ op)
            if is_zero(image):
                continue
            basis, pivots = rref(stack(field, [basis, image], width))
            queue.append(image)
            if limit is not None and basis.shape[0] >= limit:
                return basis
    return basis

def intersect(first: FieldArray, second: FieldArray) -> FieldArray:
    """RREF basis of the intersection of two row spaces."""
    field = type(first)
    width = first.shape[1]
    if first.shape[0] == 0 or second.shape[0] == 0:
        return zeros(field, 0, width)
    relations = left_null_space(stack(field, [first, second], width))
    if relations.shape[0] == 0:
        return zeros(field, 0, width)
    return row_basis(relations[:, : first.shape[0]] @ first)

def span_sum(field: FieldClass, spaces: Iterable[FieldArray], width: int) -> FieldArray:
    parts = [space for space in spaces if space.shape[0] > 0]
    return row_basis(stack(field, parts, width)) if parts else zeros(field, 0, width)

def complement_columns(pivots: Sequence[int], width: int) -> List[int]:
    chosen = set(pivots)
    return [c for c in range(width) if c not in chosen]

def quotient_operator(basis: FieldArray, pivots: Sequence[int], op: FieldArray) -> FieldArray:
    """Matrix of `op` on V / span(basis), in the standard complement basis."""
    field = type(op)
    width = op.shape[0]
    free = complement_columns(pivots, width)
    result = zeros(field, len(free), len(free))
    for i, column in enumerate(free):
        image = reduce_against(basis, pivots, op[column])
        result[i] = image[free]
    return result

def restricted_operator(basis: FieldArray, op: FieldArray) -> FieldArray:
    """Matrix of `op` on an invariant subspace, in the given basis."""
    return coordinates(basis, basis @ op)

def kron(a: FieldArray, b: FieldArray) -> FieldArray:
    """Kronecker product; row index (i, k), column index (j, l)."""
    field = type(a)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    product = a[:, None, :, None] * b[None, :, None, :]
    return field(np.asarray(product).reshape(rows, cols))

def block_matrix(field: FieldClass, blocks: Sequence[Sequence[FieldArray]]) -> FieldArray:
    return field(np.block([[np.asarray(b) for b in row] for row in blocks]))

def matrix_power(matrix: FieldArray, exponent: int) -> FieldArray:
    if exponent < 0:
        return np.linalg.matrix_power(np.linalg.inv(matrix), -exponent)
    return np.linalg.matrix_power(matrix, exponent)

def is_invertible(matrix: FieldArray) -> bool:
    return matrix.shape[0] == matrix.shape[1] and rank(matrix) == matrix.shape[0]

def stable_image(matrix: FieldArray) -> FieldArray:
    """RREF basis of the image of matrix^n for n = dim (the Fitting invertible part)."""
    power = matrix_power(matrix, matrix.shape[0])
    return row_basis(power)

def random_combination(
    basis: Sequence[FieldArray], rng: np.random.Generator
) -> FieldArray:
    field = type(basis[0])
    coeffs = field(rng.integers(0, field.order, size=len(basis)))
    total = field.Zeros(basis[0].shape)
    for c, element in zip(coeffs, basis):
        total = total + c * element
    return total
