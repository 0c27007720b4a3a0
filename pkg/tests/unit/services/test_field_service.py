"""Unit tests for FieldService and field towers."""

import numpy as np
import pytest

from app.domain.errors import SizeLimitError, ValidationError
from app.domain.services.field_service import FieldService


class TestFieldService:
    """Test cases for FieldService."""

    @pytest.fixture
    def fields(self):
        return FieldService()

    # ========================================================================
    # FIELD HANDLES
    # ========================================================================

    def test_field_orders(self, fields: FieldService):
        assert fields.field(2, 1).order == 2
        assert fields.field(2, 3).order == 8
        assert fields.field(3, 2).order == 9

    def test_same_parameters_give_same_handle(self, fields: FieldService):
        assert fields.field(2, 2) is fields.field(2, 2)

    @pytest.mark.parametrize("p, k", [(4, 1), (2, 0), (1, 3)])
    def test_invalid_parameters(self, fields: FieldService, p, k):
        with pytest.raises(ValidationError):
            fields.field(p, k)

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            FieldService(size_limit=16).field(2, 5)

    # ========================================================================
    # FROBENIUS
    # ========================================================================

    def test_frobenius_orbit_of_generator_has_full_length(self, fields: FieldService):
        F8 = fields.field(2, 3)
        orbit = fields.frobenius_orbit(F8.primitive_element)
        assert len(orbit) == 3
        assert orbit[1] == orbit[0] ** 2

    def test_frobenius_orbit_of_prime_field_element(self, fields: FieldService):
        F4 = fields.field(2, 2)
        assert len(fields.frobenius_orbit(F4(1))) == 1

    def test_minimal_subfield(self, fields: FieldService):
        F16 = fields.field(2, 4)
        g = F16.primitive_element
        assert fields.minimal_subfield([F16([0, 1])]) == 1
        assert fields.minimal_subfield([g ** 5]) == 2
        assert fields.minimal_subfield([F16([1]), g]) == 4

    def test_subfield_mask_counts(self, fields: FieldService):
        F16 = fields.field(2, 4)
        assert int(fields.subfield_mask(F16, 1).sum()) == 2
        assert int(fields.subfield_mask(F16, 2).sum()) == 4

    # ========================================================================
    # TOWERS
    # ========================================================================

    def test_embedding_is_a_ring_homomorphism(self, fields: FieldService):
        F4 = fields.field(2, 2)
        a, b = F4.elements, F4.primitive_element
        up_sum = fields.embed(a + b, 4)
        up_prod = fields.embed(a * b, 4)
        assert np.array_equal(up_sum, fields.embed(a, 4) + fields.embed(b, 4))
        assert np.array_equal(up_prod, fields.embed(a, 4) * fields.embed(b, 4))

    def test_pull_back_inverts_embed(self, fields: FieldService):
        F4 = fields.field(2, 2)
        assert np.array_equal(fields.pull_back(fields.embed(F4.elements, 8), 2), F4.elements)

    def test_embeddings_compose(self, fields: FieldService):
        F2 = fields.field(2, 1)
        tower = fields.tower(2, 4)
        via_f4 = tower.embed(tower.embed(F2.elements, 1, 2), 2, 4)
        assert np.array_equal(via_f4, tower.embed(F2.elements, 1, 4))

    def test_no_embedding_of_f4_into_f8(self, fields: FieldService):
        F4 = fields.field(2, 2)
        with pytest.raises(ValidationError):
            fields.embed(F4.elements, 3)

    def test_pull_back_outside_subfield(self, fields: FieldService):
        F16 = fields.field(2, 4)
        with pytest.raises(ValidationError):
            fields.pull_back(F16.primitive_element, 2)

    # ========================================================================
    # RESTRICTION OF SCALARS
    # ========================================================================

    def test_restricted_multiplication_satisfies_minimal_polynomial(self, fields: FieldService):
        F4 = fields.field(2, 2)
        g = F4.primitive_element
        restriction = fields.restriction(F4, 1)
        matrix = F4([[int(g)]])
        restricted = restriction.restrict_matrix(matrix)
        assert restricted.shape == (2, 2)
        # multiplication by g has minimal polynomial x^2 + x + 1 over F_2
        I = fields.field(2, 1).Identity(2)
        assert not np.any(restricted @ restricted + restricted + I)

    def test_restriction_needs_a_subfield(self, fields: FieldService):
        with pytest.raises(ValidationError):
            fields.restriction(fields.field(2, 3), 2)
