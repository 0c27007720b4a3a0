"""Unit tests for WeylService and Levi systems."""

import pytest

from app.domain.errors import ElementNotInLeviError, ValidationError
from app.domain.models.weyl import AffWeylElt
from app.infrastructure.container import ServiceContainer
from tests._fixtures import LeviFactory, gl2, gl3, sl2


class TestLeviSystem:
    """Generators, Ω and lengths of W_J."""

    def test_sl2_generators(self, sl2: ServiceContainer):
        system = sl2.weyl_service.system()
        assert system.generators == ["s0_alpha", "s_alpha"]
        assert system.omega_labels == []

    def test_gl2_has_omega_of_order_two(self, gl2: ServiceContainer):
        system = gl2.weyl_service.system()
        assert system.omega_labels == ["u1"]
        assert system.omega_order["u1"] == 2
        assert system.omega_action["u1"]["s0_alpha"] == "s_alpha"

    def test_gl3_omega_rotates_affine_diagram(self, gl3: ServiceContainer):
        system = gl3.weyl_service.system()
        assert len(system.reflection_labels) == 3
        assert system.omega_order["u1"] == 3
        assert len(system.finite_elements) == 6

    def test_empty_levi_is_a_lattice(self, gl3: ServiceContainer):
        system = gl3.weyl_service.system(LeviFactory.empty(gl3))
        assert system.reflection_labels == []
        assert system.omega_labels == ["u1", "u2", "u3"]
        assert all(system.length(system.omega[u]) == 0 for u in system.omega_labels)

    def test_omega_elements_have_length_zero(self, gl2: ServiceContainer):
        system = gl2.weyl_service.system()
        assert system.length(system.omega["u1"]) == 0

    def test_unknown_generator(self, sl2: ServiceContainer):
        with pytest.raises(ValidationError):
            sl2.weyl_service.system().generator("s7")


class TestLengthAndWords:
    """Length formula and reduced words."""

    def test_sl2_translation_word(self, sl2: ServiceContainer):
        """s0 s1 is the translation by the generator of the coweight lattice, of length 2."""
        system = sl2.weyl_service.system()
        t1 = AffWeylElt.translation((1,))
        assert system.from_word(["s0_alpha", "s_alpha"]) == t1
        assert system.length(t1) == 2
        assert system.reduced_word(t1).letters == ("s0_alpha", "s_alpha")

    def test_gl3_dominant_translation_length(self, gl3: ServiceContainer):
        """ℓ(t) is the sum of |⟨λ,α⟩| over positive roots: 1 + 1 + 2."""
        system = gl3.weyl_service.system()
        assert system.length(AffWeylElt.translation((1, 0, -1))) == 4

    def test_reduced_word_rebuilds_element(self, gl3: ServiceContainer):
        system = gl3.weyl_service.system()
        x = system.from_word(["s_alpha", "s0_alpha+beta", "s_beta"], (1,))
        word = system.reduced_word(x)
        assert len(word.letters) == system.length(x)
        assert system.from_word(word.letters, word.omega_coords) == x

    def test_generators_have_length_one(self, gl3: ServiceContainer):
        system = gl3.weyl_service.system()
        assert all(system.length(system.reflections[s]) == 1 for s in system.reflection_labels)

    def test_reduced_word_outside_levi(self, gl3: ServiceContainer):
        alpha = LeviFactory.create(gl3, ["alpha"])
        outside = gl3.weyl_service.system().reflections["s_beta"]
        with pytest.raises(ElementNotInLeviError):
            gl3.weyl_service.reduced_word(outside, alpha)

    @pytest.mark.parametrize("preset", ["sl2", "gl2"])
    def test_length_oracle_agrees(self, preset, request):
        container: ServiceContainer = request.getfixturevalue(preset)
        assert container.weyl_service.length_oracle(radius=4) == []

    @pytest.mark.slow
    def test_length_oracle_agrees_gl3(self, gl3: ServiceContainer):
        assert gl3.weyl_service.length_oracle(radius=4) == []


class TestCosetsAndCones:
    """Minimal coset representatives and M-positivity."""

    def test_coset_counts(self, gl3: ServiceContainer):
        weyl = gl3.weyl_service
        assert len(weyl.min_coset_reps(LeviFactory.empty(gl3))) == 6
        assert len(weyl.min_coset_reps(LeviFactory.create(gl3, ["alpha"]))) == 3
        assert len(weyl.min_coset_reps(LeviFactory.full(gl3))) == 1

    def test_longest_elements(self, gl3: ServiceContainer):
        weyl = gl3.weyl_service
        assert weyl.length(weyl.longest_element(LeviFactory.full(gl3))) == 3
        assert weyl.length(weyl.longest_element(LeviFactory.create(gl3, ["alpha"]))) == 1
        assert weyl.longest_element(LeviFactory.empty(gl3)).is_identity()

    def test_first_coset_rep_is_identity(self, gl3: ServiceContainer):
        reps = gl3.weyl_service.min_coset_reps(LeviFactory.create(gl3, ["beta"]))
        assert reps.reps[0].is_identity()

    def test_split_coset(self, gl3: ServiceContainer):
        weyl = gl3.weyl_service
        alpha = LeviFactory.create(gl3, ["alpha"])
        x = weyl.system().from_word(["s_alpha", "s_beta"])
        m, d = weyl.split_coset(x, alpha)
        assert weyl.system(alpha).contains(m)
        assert m * d == x

    def test_cones(self, gl3: ServiceContainer):
        weyl = gl3.weyl_service
        empty = LeviFactory.empty(gl3)
        dominant = AffWeylElt.translation((1, 0, -1))
        assert weyl.is_M_positive(dominant, empty)
        assert not weyl.is_M_negative(dominant, empty)
        assert weyl.is_M_negative(dominant.inverse(), empty)

    def test_deep_translation_is_strictly_negative(self, gl3: ServiceContainer):
        weyl = gl3.weyl_service
        alpha = LeviFactory.create(gl3, ["alpha"])
        a = weyl.deep_translation(alpha)
        assert a[0] - a[1] == 0
        assert a[1] - a[2] < 0

    def test_twist_element_conjugates_levi(self, gl3: ServiceContainer):
        weyl = gl3.weyl_service
        alpha = LeviFactory.create(gl3, ["alpha"])
        n = weyl.twist_element(alpha)
        s_alpha = weyl.system().reflections["s_alpha"]
        assert n * s_alpha * n.inverse() == weyl.system().reflections["s_beta"]
