"""Unit tests for ClassificationService."""

import pytest

from app.domain.services.classification_service import field_label
from app.infrastructure.container import ServiceContainer
from tests._fixtures import CharacterFactory, LeviFactory, f2, f4, gl2, gl3, sl2


class TestCharacters:
    """Enumeration of characters and supersingularity."""

    def test_field_label(self, f4):
        assert field_label(f4) == "2^2"

    def test_sl2_characters(self, sl2: ServiceContainer, f2):
        classification = sl2.get_classification_service()
        characters = classification.enumerate_characters(LeviFactory.full(sl2), f2)
        assert len(characters) == 4
        assert all(chi.name.startswith("chi[alpha](") for chi in characters)

    def test_torus_characters(self, gl3: ServiceContainer, f2, f4):
        classification = gl3.get_classification_service()
        empty = LeviFactory.empty(gl3)
        assert len(classification.enumerate_characters(empty, f2)) == 1
        assert len(classification.enumerate_characters(empty, f4)) == 3 ** 3

    def test_gl3_characters_are_constant_on_reflections(self, gl3: ServiceContainer, f2):
        classification = gl3.get_classification_service()
        assert len(classification.enumerate_characters(LeviFactory.full(gl3), f2)) == 2

    def test_supersingular_characters_of_sl2(self, sl2: ServiceContainer, f2):
        classification = sl2.get_classification_service()
        characters = classification.enumerate_characters(LeviFactory.full(sl2), f2)
        flags = [classification.is_supersingular(chi) for chi in characters]
        assert sum(flags) == 2

    def test_torus_modules_are_supersingular(self, gl2: ServiceContainer, f2):
        classification = gl2.get_classification_service()
        assert classification.is_supersingular(CharacterFactory.create(gl2, f2))

    def test_centrals_cover_proper_levis(self, gl3: ServiceContainer):
        classification = gl3.get_classification_service()
        alpha = LeviFactory.create(gl3, ["alpha"])
        centrals = classification.centrals(alpha)
        assert list(centrals) == [LeviFactory.empty(gl3)]
        assert all(c.verified for c in centrals.values())


class TestClassify:
    """Simple modules matched against the triples."""

    def test_empty_bound(self, sl2: ServiceContainer, f2):
        report = sl2.get_classification_service().classify(f2, 0)
        assert report.passed
        assert report.simple_modules == []
        assert report.triples == []

    def test_sl2_over_f2(self, sl2: ServiceContainer, f2):
        report = sl2.get_classification_service().classify(f2, 2)
        assert report.passed, report.failures
        assert len(report.simple_modules) == 4
        assert len(report.triples) == 4
        assert report.supersingular_consistent
        assert not report.unmatched_simples
        assert not report.unmatched_triples
        assert sum(report.supersingular.values()) == 2

    def test_triples_have_supersingular_v(self, sl2: ServiceContainer, f2):
        classification = sl2.get_classification_service()
        for t in classification.triples(f2, 2):
            assert classification.is_supersingular(t.V)
            assert t.P <= t.Q <= t.p_of_v
            assert t.module.dim <= 2

    def test_report_serializes(self, sl2: ServiceContainer, f2):
        report = sl2.get_classification_service().classify(f2, 1)
        text = report.to_json()
        assert '"preset": "SL2_Q2"' in text
        assert '"field": "2^1"' in text

    def test_gl2_over_f2(self, gl2: ServiceContainer, f2):
        report = gl2.get_classification_service().classify(f2, 2)
        assert report.passed, report.failures

    @pytest.mark.slow
    def test_sl2_over_f4(self, sl2: ServiceContainer, f4):
        report = sl2.get_classification_service().classify(f4, 2)
        assert report.passed, report.failures

    @pytest.mark.slow
    def test_gl3_over_f2(self, gl3: ServiceContainer, f2):
        report = gl3.get_classification_service().classify(f2, 3)
        assert report.passed, report.failures


class TestTheorems:
    """Lattice of induced modules and decomposition after scalar extension."""

    def test_lattice_theorem_sl2(self, sl2: ServiceContainer, f2):
        report = sl2.get_classification_service().verify_lattice_theorem(f2)
        assert report.passed
        assert {case["levi"] for case in report.cases} == {"empty", "alpha"}

    def test_lattice_case_of_torus_character(self, sl2: ServiceContainer, f2):
        case = sl2.get_classification_service().lattice_case(CharacterFactory.create(sl2, f2))
        assert case["passed"]
        assert case["nodes"] == 3
        assert case["upper_sets"] == 3

    def test_lattice_socle_is_the_largest_triple(self, sl2: ServiceContainer, f2):
        """The socle of Ind_B(1) is I(∅, 1, Δ) and the top is I(∅, 1, ∅), matching upper sets."""
        classification = sl2.get_classification_service()
        induction = sl2.get_induction_service()
        modules = sl2.get_module_service()
        V = CharacterFactory.create(sl2, f2)
        induced = induction.induce(V.levi, V).carrier
        lattice = modules.submodule_lattice(induced)
        line = lattice.nodes[lattice.dimensions().index(1)]
        socle = modules.submodule(induced, line)
        top = modules.quotient(induced, line)
        assert modules.is_isomorphic(socle, induction.triple_module(V.levi, V, LeviFactory.full(sl2)).module)
        assert modules.is_isomorphic(top, induction.triple_module(V.levi, V, V.levi).module)
        assert classification.lattice_case(V)["passed"]

    def test_lattice_case_rejects_lower_sets(self, sl2: ServiceContainer, f2, monkeypatch):
        """With the two triples swapped the submodules give lower sets, which must fail."""
        classification = sl2.get_classification_service()
        induction = classification.induction
        V = CharacterFactory.create(sl2, f2)
        full, empty = LeviFactory.full(sl2), LeviFactory.empty(sl2)
        triple_module = induction.triple_module

        def swapped(P, V, Q, require_simple=False):
            return triple_module(P, V, empty if Q == full else full, require_simple)

        monkeypatch.setattr(induction, "triple_module", swapped)
        case = classification.lattice_case(V)
        assert not case["passed"]
        assert case["witness"] == "image is the set of lower sets"

    @pytest.mark.slow
    def test_lattice_theorem_gl3(self, gl3: ServiceContainer, f2):
        report = gl3.get_classification_service().verify_lattice_theorem(f2)
        assert report.passed

    def test_decomposition_sample_dimensions(self, sl2: ServiceContainer, f2):
        classification = sl2.get_classification_service()
        assert [classification.decomposition_sample(f2, e).dim for e in (1, 2, 3)] == [1, 2, 3]

    def test_decomposition_theorem(self, sl2: ServiceContainer, f2):
        report = sl2.get_classification_service().verify_decomposition_theorem(f2, degrees=(1, 2, 3))
        assert report.passed
        assert [case.length for case in report.cases] == [1, 2, 3]
        assert [case.descent_degrees for case in report.cases] == [[1], [2, 2], [3, 3, 3]]
