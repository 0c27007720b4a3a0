"""Unit tests for EightInductionsService."""

import pytest

from app.domain.services.eight_inductions_service import (
    VARIANTS,
    EightInductionsService,
    variant_name,
)
from app.infrastructure.container import ServiceContainer
from tests._fixtures import CharacterFactory, LeviFactory, f2, gl2, gl3, sl2


class TestEightInductionsService:
    """Test cases for EightInductionsService."""

    @pytest.fixture
    def trivial(self, sl2: ServiceContainer, f2):
        return CharacterFactory.create(sl2, f2)

    # ========================================================================
    # VARIANTS
    # ========================================================================

    def test_eight_distinct_variant_names(self):
        assert len(VARIANTS) == 8
        assert len({variant_name(v) for v in VARIANTS}) == 8

    def test_every_variant_is_a_module_of_the_same_dimension(self, sl2: ServiceContainer, trivial):
        eight = sl2.get_eight_inductions_service()
        built = eight.build_all(trivial.levi, trivial)
        assert set(built) == set(VARIANTS)
        assert {m.dim for m in built.values()} == {2}
        modules = sl2.get_module_service()
        assert all(modules.check_relations(m).passed for m in built.values())

    def test_tensor_theta_variant_is_induction(self, gl2: ServiceContainer, f2):
        V = CharacterFactory.create(gl2, f2)
        eight = gl2.get_eight_inductions_service()
        built = eight.build(("tensor", "-", "theta"), V.levi, V)
        induced = gl2.get_induction_service().induce(V.levi, V).carrier
        assert gl2.get_module_service().is_isomorphic(built, induced)

    def test_parallel_build_matches_sequential(self, sl2: ServiceContainer, trivial):
        parallel = EightInductionsService(
            sl2.get_induction_service(), sl2.get_module_service(), max_workers=2
        )
        sequential = sl2.get_eight_inductions_service()
        modules = sl2.get_module_service()
        a = parallel.build_all(trivial.levi, trivial)
        b = sequential.build_all(trivial.levi, trivial)
        assert all(modules.is_isomorphic(a[v], b[v]) for v in VARIANTS)

    # ========================================================================
    # COMPARISON ISOMORPHISMS
    # ========================================================================

    def test_report_for_trivial_character(self, sl2: ServiceContainer, trivial):
        """Eight comparison isomorphisms for each of the four (sign, θ) pairs."""
        report = sl2.get_eight_inductions_service().eight_inductions(trivial.levi, trivial)
        assert report.passed
        assert len(report.equations) == 32
        assert sum(len(group) for group in report.isomorphism_classes) == 8

    def test_report_for_levi_character(self, gl3: ServiceContainer, f2):
        V = CharacterFactory.create(gl3, f2, ("alpha",), kind="sign")
        report = gl3.get_eight_inductions_service().eight_inductions(V.levi, V)
        assert set(report.variants.values()) == {3}
        assert report.passed

    def test_expected_pairs_share_a_class(self, sl2: ServiceContainer, f2):
        V = CharacterFactory.create(sl2, f2, kind="trivial")
        report = sl2.get_eight_inductions_service().eight_inductions(LeviFactory.empty(sl2), V)
        for pair in report.expected_classes:
            assert any(set(pair) <= set(group) for group in report.isomorphism_classes)
