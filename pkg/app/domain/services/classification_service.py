"""Characters, supersingular simples, triples and the end-to-end classification checks."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Dict, List, Optional, Tuple

from app.core.config import settings
from app.core.utils import divisors
from app.domain.errors import DomainError, MultiplicityNotFreeError
from app.domain.models.hecke import CentralElement
from app.domain.models.module import HModule
from app.domain.models.root_datum import ParabolicSubset
from app.domain.models.triple import Triple
from app.domain.models.weyl import AffWeylElt
from app.domain.schemas.reports import (
    ClassificationReport,
    DecompositionReport,
    LatticeTheoremReport,
    ModuleSummary,
    TripleSummary,
)
from app.domain.services.induction_service import InductionService
from app.domain.services.root_data_service import RootDataService
from app.domain.services.simple_module_search import SimpleModuleSearchService, SpinPlan
from app.infrastructure.linalg import gf_matrix as gf
from app.infrastructure.linalg.gf_matrix import FieldClass
from app.infrastructure.monitoring.logging_setup import log_computation, log_performance

logger = logging.getLogger(__name__)

DECOMPOSITION_DEGREES = (1, 2, 3)


def field_label(field: FieldClass) -> str:
    return f"{int(field.characteristic)}^{int(field.degree)}"


class ClassificationService:
    """
    Simple H(G)-modules of bounded dimension against the triples (P, V, Q).

    Responsibilities:
    - Characters of every H(M_J)
    - Supersingular simple modules per Levi, certified by central elements
    - Triples, their modules I(P, V, Q) and the bijection with the simple modules
    - Submodule lattices of inductions versus upper sets
    - Decomposition of simple modules after scalar extension
    """

    def __init__(
        self,
        root_data_service: RootDataService,
        induction_service: InductionService,
        search_service: SimpleModuleSearchService,
        max_workers: int = settings.MAX_WORKERS,
    ):
        self.root_data = root_data_service
        self.induction = induction_service
        self.search = search_service
        self.modules = induction_service.modules
        self.hecke = induction_service.hecke
        self.weyl = induction_service.weyl
        self.preset = induction_service.preset
        self.max_workers = max_workers
        self._centrals: Dict[ParabolicSubset, Dict[ParabolicSubset, CentralElement]] = {}
        self._simples: Dict[Tuple[ParabolicSubset, str, int], List[HModule]] = {}
        self._triples: Dict[Tuple[str, int], List[Triple]] = {}

    # ========================================================================
    # CHARACTERS AND SUPERSINGULARITY
    # ========================================================================

    def enumerate_characters(self, J: ParabolicSubset, field: FieldClass) -> List[HModule]:
        """
        Every character of H(M_J) over `field`: T(s) -> 0 or c_s, T(u) -> a unit,
        kept when the defining relations hold.
        """
        system = self.weyl.system(J)
        reflection_values = [(0, self.hecke.c_s(s)) for s in system.reflection_labels]
        unit_values = [range(1, field.order)] * len(system.omega_labels)
        characters: List[HModule] = []
        for values in product(*reflection_values, *unit_values):
            action = {
                g: field([[int(gf.scalar(field, v)) if i < len(system.reflection_labels) else int(v)]])
                for i, (g, v) in enumerate(zip(system.generators, values))
            }
            tag = ",".join(f"{g}={int(action[g][0, 0])}" for g in system.generators)
            candidate = HModule(J, field, action, system.generators, f"chi[{J.key()}]({tag})", 1)
            if self.modules.check_relations(candidate).passed:
                characters.append(candidate)
        logger.debug(f"{len(characters)} characters of H(M_{J}) over F_{field_label(field)}")
        return characters

    def centrals(self, K: ParabolicSubset) -> Dict[ParabolicSubset, CentralElement]:
        """Certified central elements of H(M_K) for every proper Levi inside K."""
        if K not in self._centrals:
            found = {}
            for J in self.preset.all_subsets():
                if J < K:
                    found[J] = self.hecke.find_central(J, ambient=K)
            self._centrals[K] = found
        return self._centrals[K]

    def is_supersingular(self, m: HModule) -> bool:
        return self.modules.is_supersingular(m, self.centrals(m.levi))

    def coset_index(self, J: ParabolicSubset) -> int:
        return len(self.weyl.min_coset_reps(J, self.preset.delta))

    def _prefilter(self, P: ParabolicSubset, dim_bound: int):
        """Rejects central characters whose modules cannot reach an I(P, V, Q) within the bound."""
        plan = SpinPlan(self.weyl.system(P))
        orthogonal = self.induction.orthogonal_roots(P)

        def accept(system, big, zeta, dim) -> bool:
            values = [big(z) for z in zeta]
            reachable = list(P.labels)
            for a in orthogonal:
                x = AffWeylElt.translation(self.preset.coroots[a])
                value = self.search.central_value(plan, values, x)
                if value is None or int(value) == 1:
                    reachable.append(a)
            return dim * self.coset_index(self.preset.subset(reachable)) <= dim_bound

        return accept

    def simple_modules(self, P: ParabolicSubset, field: FieldClass, dim_bound: int) -> List[HModule]:
        """Simple H(M_P)-modules of dimension ≤ dim_bound; for proper P only those reaching the bound."""
        key = (P, field_label(field), dim_bound)
        if key not in self._simples:
            accept = None if P == self.preset.delta else self._prefilter(P, dim_bound)
            self._simples[key] = self.search.search(P, field, dim_bound, accept)
        return self._simples[key]

    def supersingular_simples(self, P: ParabolicSubset, field: FieldClass, dim_bound: int) -> List[HModule]:
        return [V for V in self.simple_modules(P, field, dim_bound) if self.is_supersingular(V)]

    # ========================================================================
    # TRIPLES
    # ========================================================================

    def triples(self, field: FieldClass, dim_bound: int) -> List[Triple]:
        """Every I(P, V, Q) of dimension ≤ dim_bound with V supersingular simple, in canonical order."""
        key = (field_label(field), dim_bound)
        if key in self._triples:
            return self._triples[key]
        jobs: List[Tuple[ParabolicSubset, HModule, ParabolicSubset]] = []
        for P in self.preset.all_subsets():
            for V in self.supersingular_simples(P, field, dim_bound):
                p_of_v = self.induction.P_of_V(V)
                if V.dim * self.coset_index(p_of_v) > dim_bound:
                    continue
                for Q in self.preset.all_subsets():
                    if P <= Q <= p_of_v:
                        jobs.append((P, V, Q))
        if self.max_workers > 1:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                built = list(pool.map(lambda job: self.induction.triple_module(*job), jobs))
        else:
            built = [self.induction.triple_module(*job) for job in jobs]
        self._triples[key] = [t for t in built if t.module.dim <= dim_bound]
        return self._triples[key]

    def _summary(self, m: HModule, name: Optional[str] = None) -> ModuleSummary:
        return ModuleSummary(name=name or m.name, levi=list(m.levi.labels), field=field_label(m.field), dim=m.dim)

    def _triple_summary(self, t: Triple) -> TripleSummary:
        return TripleSummary(
            parabolic=list(t.P.labels),
            v=self._summary(t.V),
            q=list(t.Q.labels),
            p_of_v=list(t.p_of_v.labels),
            dim=t.module.dim,
            supersingular_v=self.is_supersingular(t.V),
        )

    # ========================================================================
    # CLASSIFICATION
    # ========================================================================

    def classify(self, field: FieldClass, dim_bound: int) -> ClassificationReport:
        """
        Simple H(G)-modules of dimension ≤ dim_bound matched against the triples.

        Passes when every triple module is simple, no two are isomorphic, each
        simple module found by the exhaustive search matches exactly one triple,
        and T_M-nilpotence agrees with "not reached from a proper P".
        """
        started = time.time()
        log_computation(logger, "classify", self.preset.name, {"q": field.order, "dim_bound": dim_bound})
        delta = self.preset.delta
        report = ClassificationReport(preset=self.preset.name, field=field_label(field), dim_bound=dim_bound)
        if dim_bound < 1:
            return report

        report.characters = [chi.name for chi in self.enumerate_characters(delta, field)]
        triples = self.triples(field, dim_bound)
        simples = self.simple_modules(delta, field, dim_bound)
        report.triples = [self._triple_summary(t) for t in triples]
        report.simple_modules = [self._summary(X) for X in simples]
        failures: List[str] = []

        for t in triples:
            if not self.modules.is_simple(t.module):
                failures.append(f"not simple: {t.label()}")
        for i, a in enumerate(triples):
            for b in triples[i + 1:]:
                if a.module.dim == b.module.dim and self.modules.is_isomorphic(a.module, b.module):
                    failures.append(f"isomorphic triples: {a.label()} ~ {b.label()}")

        hit = set()
        consistent = True
        for X in simples:
            matches = [
                j for j, t in enumerate(triples)
                if t.module.dim == X.dim and self.modules.is_isomorphic(X, t.module)
            ]
            flagged = self.is_supersingular(X)
            report.supersingular[X.name] = flagged
            if len(matches) != 1:
                report.unmatched_simples.append(X.name)
                failures.append(f"{X.name} matches {len(matches)} triples")
                continue
            t = triples[matches[0]]
            hit.add(matches[0])
            report.matched[X.name] = t.label()
            if flagged != (t.P == delta):
                consistent = False
                failures.append(f"supersingularity of {X.name} disagrees with {t.label()}")
        report.unmatched_triples = [t.label() for j, t in enumerate(triples) if j not in hit]
        failures.extend(f"unmatched triple {label}" for label in report.unmatched_triples)

        report.supersingular_consistent = consistent
        report.failures = failures
        report.passed = not failures
        log_performance(
            logger,
            "classify",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"q": field.order, "simples": len(simples), "triples": len(triples), "failures": len(failures)},
        )
        return report

    # ========================================================================
    # LATTICES OF INDUCED MODULES
    # ========================================================================

    def lattice_case(self, V: HModule) -> Dict[str, object]:
        """
        Ind_P(V) for a supersingular simple V over H(M_P): its submodules against
        the upper sets of the power set of Δ_{P(V)} ∖ Δ_P.

        A submodule goes to the set of Δ_{Q'} ∩ (Δ_{P(V)} ∖ Δ_P) over its
        composition factors I(P, V, Q'); the map must be an order isomorphism
        onto the upper sets. Small submodules carry large Q': the socle is
        I(P, V, P(V)) and the top is I(P, V, P).
        """
        P = V.levi
        ground = list(self.induction.delta_V(V).labels)
        induced = self.induction.induce(P, V).carrier
        case: Dict[str, object] = {"levi": P.key(), "module": V.name, "ground": ground}
        factors = self.modules.composition_series(induced)
        case["factors"] = len(factors)
        try:
            lattice = self.modules.submodule_lattice(induced)
        except MultiplicityNotFreeError as exc:
            case.update(multiplicity_free=False, passed=False, witness=str(exc))
            return case
        case["multiplicity_free"] = True
        case["nodes"] = lattice.size
        uppers = self.root_data.upper_sets(ground)

        labelled: List[Tuple[int, HModule]] = []
        for Q in self.preset.all_subsets():
            if P <= Q <= self.induction.P_of_V(V):
                triple = self.induction.triple_module(P, V, Q)
                labelled.append((uppers.subset_mask(a for a in Q.labels if a in ground), triple.module))

        def masks_of(node) -> frozenset:
            if node.shape[0] == 0:
                return frozenset()
            found = set()
            for factor in self.modules.composition_series(self.modules.submodule(induced, node)):
                matches = [mask for mask, module in labelled if self.modules.is_isomorphic(factor, module)]
                if len(matches) != 1:
                    raise MultiplicityNotFreeError(f"Factor of {induced!r} matches {len(matches)} triples")
                found.add(matches[0])
            return frozenset(found)

        images = [masks_of(node) for node in lattice.nodes]
        targets = set(uppers.elements)
        if set(images) != targets:
            universe = frozenset(range(1 << len(ground)))
            flipped = {universe - image for image in images} == targets
            witness = "image is the set of lower sets" if flipped else "image is not the set of upper sets"
            case.update(upper_sets=len(targets), passed=False, witness=witness)
            return case
        monotone = all(
            lattice.order[i][j] == (images[i] <= images[j])
            for i in range(lattice.size)
            for j in range(lattice.size)
        )
        injective = len(set(images)) == lattice.size
        case.update(upper_sets=len(targets), passed=monotone and injective)
        return case

    def verify_lattice_theorem(self, field: FieldClass) -> LatticeTheoremReport:
        """Lattice cases for every Levi and every supersingular character of it."""
        started = time.time()
        report = LatticeTheoremReport(preset=self.preset.name, field=field_label(field))
        for P in self.preset.all_subsets():
            for V in self.enumerate_characters(P, field):
                if not self.is_supersingular(V):
                    continue
                try:
                    case = self.lattice_case(V)
                except DomainError as exc:
                    exc.log()
                    case = {"levi": P.key(), "module": V.name, "passed": False, "witness": str(exc)}
                report.cases.append(case)
        report.passed = all(bool(case["passed"]) for case in report.cases)
        log_performance(
            logger,
            "verify_lattice_theorem",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"cases": len(report.cases), "passed": report.passed},
        )
        return report

    # ========================================================================
    # DECOMPOSITION AFTER SCALAR EXTENSION
    # ========================================================================

    def decomposition_sample(self, field: FieldClass, e: int) -> HModule:
        """
        A simple module over `field` with commutant of degree e: the restriction
        of scalars of a character of H(M_∅) sending u1 to a generator of the
        degree-e extension.
        """
        p, k = int(field.characteristic), int(field.degree)
        big = self.search.fields.field(p, k * e)
        empty = self.preset.subset(())
        system = self.weyl.system(empty)
        values = {u: 1 for u in system.omega_labels}
        values[system.omega_labels[0]] = int(big.primitive_element)
        character = self.modules.character(empty, big, values, name=f"chi_{e}")
        if e == 1:
            return character
        return self.modules.restrict_scalars(character, k).renamed(f"res_{e}")

    def verify_decomposition_theorem(
        self, field: FieldClass, degrees: Tuple[int, ...] = DECOMPOSITION_DEGREES
    ) -> DecompositionReport:
        """
        Each sample splits over the degree-e extension into e absolutely simple,
        distinct, Frobenius-conjugate factors; a factor restricts back to the
        sample; over intermediate fields the length is the field degree. No
        factor descends below F_{p^{ke}}, and the extension of a sample of
        degree 1 descends back to F_{p^k}.
        """
        k = int(field.degree)
        report = DecompositionReport(preset=self.preset.name, field=field_label(field), extension_degree=max(degrees))
        passed = True
        for e in degrees:
            sample = self.decomposition_sample(field, e)
            case = self.modules.decompose_extension(sample, k * e)
            ok = case.length == e and case.absolutely_simple and case.pairwise_distinct and case.galois_transitive
            restored = self.modules.restrict_scalars(case.factors[0], k)
            ok = ok and self.modules.is_isomorphic(restored, sample)
            for d in divisors(e):
                ok = ok and self.modules.extension_length(sample, k * d) == d
            case.descent_degrees = [self.modules.descend(factor)[1] for factor in case.factors]
            ok = ok and all(degree == k * e for degree in case.descent_degrees)
            if e == 1:
                ok = ok and self._descends_back(sample, k)
            if not ok:
                logger.warning(f"Decomposition of {sample.name} over F_{field.characteristic}^{k * e} failed")
            passed = passed and ok
            report.cases.append(case)
        report.passed = passed
        return report

    def _descends_back(self, sample: HModule, k: int) -> bool:
        extended = self.modules.scalar_extend(sample, 2 * k)
        model, degree = self.modules.descend(extended)
        if degree != k:
            logger.warning(f"{extended.name} descends to F_{sample.p}^{degree}, expected F_{sample.p}^{k}")
            return False
        return self.modules.is_isomorphic(self.modules.scalar_extend(model, 2 * k), extended)
