"""Named verification suites, one per acceptance property, and their aggregate."""

import logging
import time
from typing import Callable, Dict, List, Tuple

from app.core.config import settings
from app.domain.errors import DomainError
from app.domain.models.module import HModule
from app.domain.models.root_datum import ParabolicSubset
from app.domain.schemas.reports import SuiteReport, VerificationReport
from app.domain.services.classification_service import ClassificationService, field_label
from app.domain.services.eight_inductions_service import EightInductionsService
from app.domain.services.field_service import FieldService
from app.infrastructure.linalg.gf_matrix import FieldClass
from app.infrastructure.monitoring.logging_setup import log_performance

logger = logging.getLogger(__name__)

MIN_RELATION_MODULES = 50
EIGHT_INDUCTION_SAMPLES = 5
ADJUNCTION_SAMPLES = 10
STEINBERG_EXTENSION_DEGREES = (2, 3)


class VerificationService:
    """
    Runs the verification suites against one preset.

    Every suite returns a SuiteReport with the number of checks and a
    witness per failure; any exception inside a suite fails that suite only.
    """

    def __init__(
        self,
        classification_service: ClassificationService,
        eight_inductions_service: EightInductionsService,
        field_service: FieldService,
        length_radius: int = settings.LENGTH_ORACLE_RADIUS,
    ):
        self.classification = classification_service
        self.eight = eight_inductions_service
        self.fields = field_service
        self.induction = classification_service.induction
        self.modules = classification_service.modules
        self.weyl = classification_service.weyl
        self.preset = classification_service.preset
        self.length_radius = length_radius
        self.suites: Dict[str, Callable[[FieldClass, int], SuiteReport]] = {
            "relations": self.relations,
            "length_oracle": self.length_oracle,
            "classification": self.classification_suite,
            "supersingularity": self.supersingularity,
            "lattice": self.lattice,
            "decomposition": self.decomposition,
            "eight_inductions": self.eight_inductions,
            "adjunctions": self.adjunctions,
            "steinberg": self.steinberg,
            "scalar_naturality": self.scalar_naturality,
        }

    def run(self, name: str, field: FieldClass, dim_bound: int) -> SuiteReport:
        started = time.time()
        try:
            report = self.suites[name](field, dim_bound)
        except DomainError as exc:
            exc.log()
            report = SuiteReport(name=name, passed=False, checks=1, failures=[str(exc)])
        except Exception as exc:
            logger.error(f"Unexpected error in suite {name}: {exc}", exc_info=True)
            report = SuiteReport(
                name=name, passed=False, checks=1, failures=[f"{type(exc).__name__}: {exc}"]
            )
        log_performance(
            logger,
            f"suite.{name}",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"passed": report.passed, "checks": report.checks},
        )
        return report

    def run_all(self, field: FieldClass, dim_bound: int) -> VerificationReport:
        suites = [self.run(name, field, dim_bound) for name in self.suites]
        return VerificationReport(preset=self.preset.name, field=field_label(field), suites=suites)

    # ========================================================================
    # SAMPLES
    # ========================================================================

    def _fields(self, field: FieldClass) -> List[FieldClass]:
        p = int(field.characteristic)
        degrees = sorted({1, 2, int(field.degree)})
        return [self.fields.field(p, k) for k in degrees]

    def _characters(self, field: FieldClass, proper_only: bool = False) -> List[HModule]:
        found = []
        for J in self.preset.all_subsets():
            if proper_only and J == self.preset.delta:
                continue
            found.extend(self.classification.enumerate_characters(J, field))
        return found

    @staticmethod
    def _suite(name: str, checks: int, failures: List[str], **details) -> SuiteReport:
        return SuiteReport(name=name, passed=not failures, checks=checks, failures=failures, details=details)

    # ========================================================================
    # SUITES
    # ========================================================================

    def relations(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        """Characters, inductions, twists, duals and Steinberg modules all satisfy the relations."""
        built: List[HModule] = []
        failures: List[str] = []
        delta = self.preset.delta
        for F in self._fields(field):
            for chi in self._characters(F):
                steps: List[Tuple[str, Callable[[], HModule]]] = [
                    ("dual", lambda chi=chi: self.modules.dual(chi)),
                    ("iota", lambda chi=chi: self.modules.iota_twist(chi)),
                    ("twist", lambda chi=chi: self.modules.twist_module(chi)),
                ]
                if chi.levi != delta:
                    steps.append(("induce", lambda chi=chi: self.induction.induce(chi.levi, chi).carrier))
                    steps.append(("coinduce", lambda chi=chi: self.induction.coinduce(chi.levi, chi).carrier))
                    steps.append(("steinberg", lambda chi=chi: self.induction.steinberg(chi, chi.levi)))
                built.append(chi)
                for label, step in steps:
                    try:
                        built.append(step())
                    except DomainError as exc:
                        failures.append(f"{label}({chi.name}): {exc}")
        for m in built:
            report = self.modules.check_relations(m)
            if not report.passed:
                failures.append(f"{m.name}: {report.failures}")
        if len(built) < MIN_RELATION_MODULES:
            failures.append(f"only {len(built)} modules constructed")
        return self._suite("relations", len(built), failures, modules=len(built))

    def length_oracle(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        mismatches = self.weyl.length_oracle(self.length_radius)
        failures = [f"{x}: formula {formula}, distance {distance}" for x, formula, distance in mismatches[:10]]
        return self._suite("length_oracle", 1, failures, radius=self.length_radius, mismatches=len(mismatches))

    def classification_suite(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        report = self.classification.classify(field, dim_bound)
        checks = len(report.simple_modules) + len(report.triples)
        return self._suite(
            "classification",
            checks,
            list(report.failures),
            simples=len(report.simple_modules),
            triples=len(report.triples),
            characters=len(report.characters),
        )

    def supersingularity(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        """T_M-nilpotence agrees with the triples and survives scalar extension."""
        report = self.classification.classify(field, dim_bound)
        failures = [] if report.supersingular_consistent else ["nilpotence flags disagree with the triples"]
        simples = self.classification.simple_modules(self.preset.delta, field, dim_bound)
        for X in simples:
            extended = self.modules.scalar_extend(X, 2 * int(field.degree))
            if self.classification.is_supersingular(extended) != report.supersingular.get(X.name):
                failures.append(f"supersingularity of {X.name} changes under scalar extension")
        dims = sorted(X.dim for X in simples if report.supersingular.get(X.name))
        return self._suite("supersingularity", len(simples) + 1, failures, supersingular_dims=dims)

    def lattice(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        report = self.classification.verify_lattice_theorem(field)
        failures = [f"{case['levi']}/{case['module']}: {case.get('witness', 'order')}" for case in report.cases if not case["passed"]]
        return self._suite("lattice", len(report.cases), failures, cases=report.cases)

    def decomposition(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        report = self.classification.verify_decomposition_theorem(field)
        failures = [] if report.passed else [f"{case.module}: factors {case.factor_dims}" for case in report.cases]
        return self._suite("decomposition", len(report.cases), failures, lengths=[case.length for case in report.cases])

    def eight_induction_samples(self, field: FieldClass) -> List[HModule]:
        """Characters with J ⊊ Δ first; characters of H(G) never outnumber them."""
        proper = [V for F in self._fields(field) for V in self._characters(F, proper_only=True)]
        full = self.classification.enumerate_characters(self.preset.delta, field)
        n_full = min(len(full), len(proper), EIGHT_INDUCTION_SAMPLES // 2)
        return proper[: EIGHT_INDUCTION_SAMPLES - n_full] + full[:n_full]

    def eight_inductions(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        samples = self.eight_induction_samples(field)
        failures = []
        for V in samples:
            report = self.eight.eight_inductions(V.levi, V)
            if not report.passed:
                failed = [label for label, ok in report.equations.items() if not ok]
                failures.append(f"{V.name}: {failed or report.isomorphism_classes}")
        proper = sum(V.levi != self.preset.delta for V in samples)
        return self._suite("eight_inductions", len(samples), failures, proper_levis=proper)

    def adjunctions(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        """
        dim Hom(Ind V, X) = dim Hom(V, R X), dim Hom(L X, V) = dim Hom(X, Ind V)
        and L(Ind V) ≅ V on pairs (V over a proper Levi, X over H(G)).
        """
        delta = self.preset.delta
        sources = self._characters(field, proper_only=True)
        targets = self.classification.enumerate_characters(delta, field)
        targets += [self.induction.induce(V.levi, V).carrier for V in sources]
        pairs = [(V, X) for X in targets for V in sources][: max(ADJUNCTION_SAMPLES, len(sources))]
        failures: List[str] = []
        for V, X in pairs:
            J: ParabolicSubset = V.levi
            induced = self.induction.induce(J, V).carrier
            right = self.induction.adjoint_R(J, X)
            left = self.induction.adjoint_L(J, X)
            lhs, rhs = len(self.modules.hom_space(induced, X)), len(self.modules.hom_space(V, right))
            if lhs != rhs:
                failures.append(f"Hom(Ind {V.name}, {X.name}) = {lhs} but Hom(V, R X) = {rhs}")
            lhs, rhs = len(self.modules.hom_space(left, V)), len(self.modules.hom_space(X, induced))
            if lhs != rhs:
                failures.append(f"Hom(L {X.name}, {V.name}) = {lhs} but Hom(X, Ind V) = {rhs}")
        for V in sources:
            unit = self.induction.adjoint_L(V.levi, self.induction.induce(V.levi, V).carrier)
            if not self.modules.is_isomorphic(unit, V):
                failures.append(f"L(Ind {V.name}) is not isomorphic to {V.name}")
        return self._suite("adjunctions", 2 * len(pairs) + len(sources), failures, pairs=len(pairs))

    def steinberg(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        """Both Steinberg constructions agree and St_∅(R) stays simple over larger fields."""
        failures: List[str] = []
        checks = 0
        for V in self._characters(field):
            p_of_v = self.induction.P_of_V(V)
            for Q in self.preset.all_subsets():
                if V.levi <= Q <= p_of_v:
                    checks += 1
                    try:
                        self.induction.steinberg(V, Q)
                    except DomainError as exc:
                        failures.append(f"St_{Q.key()}({V.name}): {exc}")
        empty = self.preset.subset(())
        prime = self.fields.field(int(field.characteristic), 1)
        unit = self.induction.steinberg_trivial(empty, self.preset.delta, prime)
        for degree in (1,) + STEINBERG_EXTENSION_DEGREES:
            checks += 1
            extended = unit if degree == 1 else self.modules.scalar_extend(unit, degree)
            if not self.modules.is_simple(extended):
                failures.append(f"St_∅(R) is not simple over F_{prime.characteristic}^{degree}")
        return self._suite("steinberg", checks, failures, steinberg_dim=unit.dim)

    def scalar_naturality(self, field: FieldClass, dim_bound: int) -> SuiteReport:
        """Induction and triples commute with scalar extension to the quadratic extension."""
        big = 2 * int(field.degree)
        failures: List[str] = []
        triples = self.classification.triples(field, dim_bound)
        for t in triples:
            st = self.modules.scalar_extend(t.steinberg, big)
            induced = self.induction.induce(t.p_of_v, st).carrier
            if not self.modules.is_isomorphic(induced, self.modules.scalar_extend(t.module, big)):
                failures.append(f"induce does not commute with extension for {t.label()}")
            extended = self.induction.triple_module(t.P, self.modules.scalar_extend(t.V, big), t.Q)
            if not self.modules.is_isomorphic(extended.module, self.modules.scalar_extend(t.module, big)):
                failures.append(f"triple {t.label()} does not commute with extension")
        return self._suite("scalar_naturality", 2 * len(triples), failures)
