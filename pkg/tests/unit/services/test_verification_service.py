"""Unit tests for VerificationService."""

import pytest

from app.domain.errors import ReductionFailureError
from app.infrastructure.container import ServiceContainer
from tests._fixtures import f2, gl2, gl3, sl2


class TestVerificationService:
    """Test cases for VerificationService."""

    def test_suite_order(self, sl2: ServiceContainer):
        names = list(sl2.get_verification_service().suites)
        assert names[0] == "relations"
        assert len(names) == 10
        assert "eight_inductions" in names

    def test_length_oracle_suite(self, sl2: ServiceContainer, f2):
        report = sl2.get_verification_service().run("length_oracle", f2, 2)
        assert report.passed
        assert report.details["mismatches"] == 0

    def test_relations_suite_builds_enough_modules(self, sl2: ServiceContainer, f2):
        """Characters over F_2 and F_4 plus their inductions, coinductions and twists."""
        report = sl2.get_verification_service().run("relations", f2, 2)
        assert report.passed, report.failures
        assert report.checks >= 50

    def test_classification_suite(self, sl2: ServiceContainer, f2):
        report = sl2.get_verification_service().run("classification", f2, 2)
        assert report.passed, report.failures
        assert report.details["simples"] == 4

    def test_supersingular_simples_of_sl2_are_characters(self, sl2: ServiceContainer, f2):
        report = sl2.get_verification_service().run("supersingularity", f2, 2)
        assert report.passed, report.failures
        assert report.details["supersingular_dims"] == [1, 1]

    def test_steinberg_suite(self, sl2: ServiceContainer, f2):
        """St_∅(R) of SL2 is the sign character and stays simple over F_4 and F_8."""
        report = sl2.get_verification_service().run("steinberg", f2, 2)
        assert report.passed, report.failures
        assert report.details["steinberg_dim"] == 1

    def test_adjunctions_suite(self, gl2: ServiceContainer, f2):
        report = gl2.get_verification_service().run("adjunctions", f2, 2)
        assert report.passed, report.failures

    # ========================================================================
    # SAMPLING
    # ========================================================================

    @pytest.mark.parametrize("container", ["sl2", "gl3"])
    def test_eight_induction_samples_favour_proper_levis(self, container, request, f2):
        """At least half of the samples live over a Levi J ⊊ Δ."""
        service = request.getfixturevalue(container).get_verification_service()
        samples = service.eight_induction_samples(f2)
        delta = service.preset.delta
        proper = [V for V in samples if V.levi != delta]
        assert samples
        assert 2 * len(proper) >= len(samples)
        assert all(V.levi <= delta for V in samples)

    def test_eight_inductions_suite_reports_proper_levis(self, sl2: ServiceContainer, f2):
        report = sl2.get_verification_service().run("eight_inductions", f2, 2)
        assert report.passed, report.failures
        assert 2 * report.details["proper_levis"] >= report.checks

    # ========================================================================
    # FAILURE ISOLATION
    # ========================================================================

    def test_domain_error_fails_only_that_suite(self, sl2: ServiceContainer, f2, monkeypatch):
        service = sl2.get_verification_service()

        def broken(field, dim_bound):
            raise ReductionFailureError("reduction did not terminate")

        monkeypatch.setitem(service.suites, "lattice", broken)
        report = service.run("lattice", f2, 2)
        assert not report.passed
        assert "reduction did not terminate" in report.failures[0]
        assert service.run("length_oracle", f2, 2).passed

    def test_unexpected_error_becomes_failed_suite(self, sl2: ServiceContainer, f2, monkeypatch):
        """A bug inside one suite is reported with its exception type, not raised."""
        service = sl2.get_verification_service()

        def broken(field, dim_bound):
            raise AttributeError("'HModule' object has no attribute 'cosets'")

        monkeypatch.setattr(service, "suites", {"relations": broken, "length_oracle": service.length_oracle})
        report = service.run_all(f2, 2)
        assert [s.name for s in report.suites] == ["relations", "length_oracle"]
        assert not report.suites[0].passed
        assert report.suites[0].failures[0].startswith("AttributeError")
        assert report.suites[1].passed
        assert not report.passed

    @pytest.mark.slow
    def test_run_all_sl2(self, sl2: ServiceContainer, f2):
        report = sl2.get_verification_service().run_all(f2, 2)
        failed = {s.name: s.failures for s in report.suites if not s.passed}
        assert report.passed, failed
        assert [s.name for s in report.suites] == list(sl2.get_verification_service().suites)

    @pytest.mark.slow
    def test_run_all_gl2(self, gl2: ServiceContainer, f2):
        report = gl2.get_verification_service().run_all(f2, 2)
        assert report.passed, {s.name: s.failures for s in report.suites if not s.passed}
