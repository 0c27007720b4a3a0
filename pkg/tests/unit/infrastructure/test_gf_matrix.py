"""Unit tests for the finite-field linear algebra helpers."""

import galois
import numpy as np
import pytest

from app.infrastructure.linalg import gf_matrix as gf

GF2 = galois.GF(2)
GF4 = galois.GF(4)


class TestEchelon:
    """Row reduction, rank and spans."""

    def test_rref_drops_zero_rows(self):
        reduced, pivots = gf.rref(GF2([[1, 1, 0], [1, 1, 0], [0, 1, 1]]))
        assert pivots == [0, 1]
        assert np.array_equal(reduced, GF2([[1, 0, 1], [0, 1, 1]]))

    def test_rref_of_empty(self):
        reduced, pivots = gf.rref(gf.zeros(GF2, 0, 3))
        assert reduced.shape == (0, 3)
        assert pivots == []

    def test_rank(self):
        assert gf.rank(GF2([[1, 1], [1, 1]])) == 1
        assert gf.rank(gf.identity(GF4, 3)) == 3
        assert gf.rank(gf.zeros(GF2, 0, 2)) == 0

    def test_in_span(self):
        basis, pivots = gf.rref(GF2([[1, 0, 1], [0, 1, 1]]))
        assert gf.in_span(basis, pivots, GF2([1, 1, 0]))
        assert not gf.in_span(basis, pivots, GF2([0, 0, 1]))

    def test_scalar_reduces_into_prime_field(self):
        assert int(gf.scalar(GF4, -1)) == 1
        assert int(gf.scalar(galois.GF(5), -1)) == 4


class TestSubspaces:
    """Kernels, intersections and invariant subspaces."""

    def test_null_space(self):
        matrix = GF2([[1, 1, 0], [0, 1, 1]])
        kernel = gf.null_space(matrix)
        assert kernel.shape[0] == 1
        assert gf.is_zero(matrix @ kernel.T)

    def test_left_null_space(self):
        matrix = GF2([[1, 0], [0, 1], [1, 1]])
        kernel = gf.left_null_space(matrix)
        assert np.array_equal(kernel, GF2([[1, 1, 1]]))

    def test_intersect(self):
        first = GF2([[1, 0, 0], [0, 1, 0]])
        second = GF2([[0, 1, 0], [0, 0, 1]])
        assert np.array_equal(gf.intersect(first, second), GF2([[0, 1, 0]]))

    def test_intersect_trivial(self):
        result = gf.intersect(GF2([[1, 0]]), GF2([[0, 1]]))
        assert result.shape == (0, 2)

    def test_spin_closes_under_operators(self):
        shift = GF2([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert gf.spin(GF2([[1, 0, 0]]), [shift]).shape[0] == 3
        assert gf.spin(GF2([[0, 0, 1]]), [shift]).shape[0] == 1

    def test_spin_limit(self):
        shift = GF2([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert gf.spin(GF2([[1, 0, 0]]), [shift], limit=2).shape[0] == 2

    def test_stable_image_of_nilpotent_plus_identity_block(self):
        matrix = GF2([[1, 0, 0], [0, 0, 1], [0, 0, 0]])
        image = gf.stable_image(matrix)
        assert np.array_equal(image, GF2([[1, 0, 0]]))


class TestOperators:
    """Induced operators on quotients, subspaces and tensor products."""

    @pytest.fixture
    def upper(self):
        return GF2([[1, 1], [0, 1]])

    def test_quotient_operator(self, upper):
        # span(e2) is invariant for row action v @ upper
        basis, pivots = gf.rref(GF2([[0, 1]]))
        assert np.array_equal(gf.quotient_operator(basis, pivots, upper), GF2([[1]]))

    def test_restricted_operator(self, upper):
        basis = GF2([[0, 1]])
        assert np.array_equal(gf.restricted_operator(basis, upper), GF2([[1]]))

    def test_kron_matches_numpy_layout(self, upper):
        product = gf.kron(upper, gf.identity(GF2, 2))
        expected = GF2(np.kron(np.asarray(upper), np.eye(2, dtype=int)))
        assert np.array_equal(product, expected)

    def test_matrix_power_negative(self, upper):
        inverse = gf.matrix_power(upper, -1)
        assert np.array_equal(inverse @ upper, gf.identity(GF2, 2))

    def test_is_invertible(self, upper):
        assert gf.is_invertible(upper)
        assert not gf.is_invertible(GF2([[1, 1], [1, 1]]))
        assert not gf.is_invertible(GF2([[1, 0]]))

    def test_coordinates(self):
        basis = GF4([[1, 0, 1], [0, 1, 1]])
        vectors = GF4([[2, 3, 1]])
        coords = gf.coordinates(basis, vectors)
        assert np.array_equal(coords @ basis, vectors)

    def test_random_combination_stays_in_span(self):
        rng = np.random.default_rng(7)
        basis = [GF2([[1, 0], [0, 0]]), GF2([[0, 0], [0, 1]])]
        combo = gf.random_combination(basis, rng)
        assert int(combo[0, 1]) == 0 and int(combo[1, 0]) == 0
