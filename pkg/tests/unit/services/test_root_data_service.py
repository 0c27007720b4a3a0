"""Unit tests for RootDataService."""

import pytest

from app.domain.errors import NotFoundError, SizeLimitError, ValidationError
from app.domain.repositories import PresetRepository
from app.domain.services.root_data_service import RootDataService


class TestRootDataService:
    """Test cases for RootDataService."""

    @pytest.fixture
    def service(self):
        return RootDataService(PresetRepository())

    @pytest.fixture
    def gl3(self, service: RootDataService):
        return service.load_preset("GL3_Q2")

    # ========================================================================
    # PRESETS
    # ========================================================================

    def test_load_preset(self, service: RootDataService):
        preset = service.load_preset("GL2_Q2")
        assert preset.rank == 2
        assert preset.simple_roots == ("alpha",)
        assert preset.p == 2

    def test_unknown_preset(self, service: RootDataService):
        with pytest.raises(NotFoundError):
            service.load_preset("E8_Q7")

    def test_root_system_sizes(self, service: RootDataService, gl3):
        roots = service.root_system(gl3)
        assert len(roots.positive) == 3
        assert len(roots.finite_group(gl3.simple_roots)) == 6
        assert len(roots.finite_group(("alpha",))) == 2

    def test_subset_rejects_unknown_labels(self, service: RootDataService, gl3):
        with pytest.raises(ValidationError):
            service.subset(gl3, ["gamma"])

    def test_all_subsets(self, gl3):
        """Ordered by size, then by label."""
        assert [J.key() for J in gl3.all_subsets()] == ["empty", "alpha", "beta", "alpha+beta"]

    # ========================================================================
    # OPPOSITION
    # ========================================================================

    def test_opposition_swaps_simple_roots_of_gl3(self, service: RootDataService, gl3):
        alpha = gl3.subset(["alpha"])
        assert service.opposition(gl3, alpha) == gl3.subset(["beta"])
        assert service.opposition(gl3, gl3.delta) == gl3.delta

    def test_opposition_inside_levi_is_trivial(self, service: RootDataService, gl3):
        alpha = gl3.subset(["alpha"])
        assert service.opposition(gl3, alpha, ambient=alpha) == alpha

    def test_opposition_is_an_involution(self, service: RootDataService, gl3):
        for J in gl3.all_subsets():
            assert service.opposition(gl3, service.opposition(gl3, J)) == J

    def test_opposition_requires_containment(self, service: RootDataService, gl3):
        with pytest.raises(ValidationError):
            service.opposition(gl3, gl3.subset(["beta"]), ambient=gl3.subset(["alpha"]))

    # ========================================================================
    # UPPER SETS
    # ========================================================================

    @pytest.mark.parametrize("ground, count", [((), 2), (("alpha",), 3), (("alpha", "beta"), 6)])
    def test_upper_set_counts(self, service: RootDataService, ground, count):
        lattice = service.upper_sets(ground)
        assert len(lattice.elements) == count
        assert lattice.is_closed()

    def test_upper_sets_are_upward_closed(self, service: RootDataService):
        lattice = service.upper_sets(("alpha", "beta", "gamma"))
        for upper in lattice.elements:
            for mask in upper:
                for i in range(3):
                    assert mask | (1 << i) in upper

    def test_upper_set_bound(self):
        service = RootDataService(PresetRepository(), max_upper_set_ground=2)
        with pytest.raises(SizeLimitError):
            service.upper_sets(("a", "b", "c"))
