"""Finite-dimensional H(M_J)-modules: relations, homs, MeatAxe, lattices, descent."""

import logging
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.utils import divisors
from app.domain.errors import (
    BusinessRuleViolationError,
    ContextMismatchError,
    ExtensionTooSmallError,
    MissingLeviError,
    MultiplicityNotFreeError,
    RelationCheckError,
    SizeLimitError,
    UnverifiedCentralError,
    ValidationError,
)
from app.domain.models.hecke import CentralElement, HeckeElt
from app.domain.models.module import CommutantReport, HModule, RelationReport, SubmoduleLattice
from app.domain.models.root_datum import ParabolicSubset
from app.domain.models.weyl import AffWeylElt
from app.domain.schemas.reports import ExtensionDecomposition
from app.domain.services.field_service import FieldService
from app.domain.services.hecke_service import HeckeService
from app.domain.services.weyl_service import LeviSystem, WeylService
from app.infrastructure.linalg import gf_matrix as gf
from app.infrastructure.linalg.gf_matrix import FieldArray, FieldClass

logger = logging.getLogger(__name__)

EXHAUSTIVE_VECTOR_LIMIT = 4096
EXHAUSTIVE_HOM_LIMIT = 256
MEATAXE_CANDIDATES = 40


class ModuleService:
    """
    Right H(M_J)-modules over finite fields.

    Responsibilities:
    - Construction gated by the defining relations
    - Evaluation of Hecke elements, intertwiners and isomorphism tests
    - MeatAxe simplicity, composition series, submodule lattices, commutants
    - Twists, duals, scalar extension, restriction and descent
    - Supersingularity against certified central elements
    """

    def __init__(
        self,
        weyl_service: WeylService,
        hecke_service: HeckeService,
        field_service: FieldService,
        seed: int = settings.DEFAULT_SEED,
        isomorphism_trials: int = settings.ISOMORPHISM_TRIALS,
        max_dim: int = settings.MAX_MODULE_DIM,
    ):
        self.weyl = weyl_service
        self.hecke = hecke_service
        self.fields = field_service
        self.seed = seed
        self.isomorphism_trials = isomorphism_trials
        self.max_dim = max_dim

    def _rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.seed + salt)

    # ========================================================================
    # CONSTRUCTION AND RELATIONS
    # ========================================================================

    def system(self, m: HModule) -> LeviSystem:
        return self.weyl.system(m.levi)

    def build_module(
        self,
        levi: ParabolicSubset,
        field: FieldClass,
        action: Mapping[str, object],
        name: str = "",
    ) -> HModule:
        """
        Module from generator matrices, checked against every defining relation.

        Raises:
            ValidationError: missing generators or the zero module
            SizeLimitError: dimension above the configured bound
            RelationCheckError: a defining relation fails
        """
        system = self.weyl.system(levi)
        missing = [g for g in system.generators if g not in action]
        if missing:
            raise ValidationError(f"Missing generator matrices {missing} for {levi}")
        matrices = {g: field(np.atleast_2d(np.asarray(action[g], dtype=np.int64))) for g in system.generators}
        dim = int(min(matrices[system.generators[0]].shape))
        if dim < 1:
            raise ValidationError(f"Module {name or levi} must have dimension at least 1")
        if dim > self.max_dim:
            raise SizeLimitError(f"Module dimension {dim} exceeds the bound", limit=self.max_dim)
        module = HModule(levi, field, matrices, system.generators, name, dim)
        report = self.check_relations(module)
        if not report.passed:
            raise RelationCheckError(
                f"Module {name or levi} violates {report.failures}", failures=report.failures
            )
        return module

    def character(
        self, levi: ParabolicSubset, field: FieldClass, values: Mapping[str, object], name: str = ""
    ) -> HModule:
        """
        One-dimensional module with T(γ) acting by values[γ].

        Nonnegative integers are integer representations of field elements;
        negative integers are read in the prime field.
        """
        action = {
            g: [[int(gf.scalar(field, v)) if isinstance(v, int) and v < 0 else int(v)]]
            for g, v in values.items()
        }
        return self.build_module(levi, field, action, name)

    def trivial_character(self, levi: ParabolicSubset, field: FieldClass) -> HModule:
        """T(s) -> 0 for affine reflections and T(u) -> 1."""
        system = self.weyl.system(levi)
        values = {s: 0 for s in system.reflection_labels}
        values.update({u: 1 for u in system.omega_labels})
        return self.character(levi, field, values, name="trivial")

    def sign_character(self, levi: ParabolicSubset, field: FieldClass) -> HModule:
        """T(s) -> c_s for affine reflections and T(u) -> 1."""
        system = self.weyl.system(levi)
        values = {s: self.hecke.c_s(s) for s in system.reflection_labels}
        values.update({u: 1 for u in system.omega_labels})
        return self.character(levi, field, values, name="sign")

    def check_relations(self, m: HModule) -> RelationReport:
        """Quadratic, braid and Ω relations on the generator matrices."""
        system = self.system(m)
        failures: List[str] = []
        checked = 0
        if m.generators != system.generators:
            return RelationReport(passed=False, failures=["generators"], checked=1)
        for g in m.generators:
            checked += 1
            if m.action[g].shape != (m.dim, m.dim):
                failures.append(f"shape[{g}]")
        if failures:
            return RelationReport(passed=False, failures=failures, checked=checked)

        for s in system.reflection_labels:
            checked += 1
            rho = m.action[s]
            if not np.array_equal(rho @ rho, rho * gf.scalar(m.field, self.hecke.c_s(s))):
                failures.append(f"quadratic[{s}]")
        for (s, t), order in system.braid_orders.items():
            if order is None:
                continue
            checked += 1
            if not np.array_equal(self._alternating(m, s, t, order), self._alternating(m, t, s, order)):
                failures.append(f"braid[{s},{t}]")
        for u in system.omega_labels:
            checked += 1
            if not gf.is_invertible(m.action[u]):
                failures.append(f"omega_invertible[{u}]")
        for i, u in enumerate(system.omega_labels):
            for v in system.omega_labels[i + 1:]:
                checked += 1
                if not np.array_equal(m.action[u] @ m.action[v], m.action[v] @ m.action[u]):
                    failures.append(f"omega_commute[{u},{v}]")
        for u in system.omega_labels:
            for s, image in system.omega_action[u].items():
                checked += 1
                if not np.array_equal(m.action[u] @ m.action[s], m.action[image] @ m.action[u]):
                    failures.append(f"conjugation[{u},{s}]")
        return RelationReport(passed=not failures, failures=failures, checked=checked)

    @staticmethod
    def _alternating(m: HModule, s: str, t: str, length: int) -> FieldArray:
        result = m.identity()
        for i in range(length):
            result = result @ m.action[s if i % 2 == 0 else t]
        return result

    # ========================================================================
    # EVALUATION AND HOMS
    # ========================================================================

    def basis_matrix(self, m: HModule, x: AffWeylElt) -> FieldArray:
        """ρ(T(x)) along the canonical reduced word times the Ω part."""
        cached = m._cache.get(x)
        if cached is not None:
            return cached
        system = self.system(m)
        word = system.reduced_word(x)
        result = m.identity()
        for label in word.letters:
            result = result @ m.action[label]
        for u, exponent in zip(system.omega_labels, word.omega_coords):
            result = result @ gf.matrix_power(m.action[u], int(exponent))
        m._cache[x] = result
        return result

    def star_matrix(self, m: HModule, x: AffWeylElt) -> FieldArray:
        """ρ(T*(x)) = Π (ρ(s) - c_s) along the canonical reduced word, times the Ω part."""
        key = ("star", x)
        cached = m._cache.get(key)
        if cached is not None:
            return cached
        system = self.system(m)
        word = system.reduced_word(x)
        result = m.identity()
        for label in word.letters:
            result = result @ (m.action[label] - gf.scalar(m.field, self.hecke.c_s(label)) * m.identity())
        for u, exponent in zip(system.omega_labels, word.omega_coords):
            result = result @ gf.matrix_power(m.action[u], int(exponent))
        m._cache[key] = result
        return result

    def evaluate(self, m: HModule, a: HeckeElt) -> FieldArray:
        """
        Matrix of a acting on m.

        Raises:
            ContextMismatchError: a does not live in H(M_{m.levi})
        """
        if a.levi != m.levi:
            raise ContextMismatchError(f"Element of H(M_{a.levi}) cannot act on a module over {m.levi}")
        total = m.field.Zeros((m.dim, m.dim))
        for x, c in a.items():
            total = total + self._coefficient(m, c) * self.basis_matrix(m, x)
        return total

    def _coefficient(self, m: HModule, c: FieldArray) -> FieldArray:
        if type(c) is m.field or int(c) < m.p:
            return m.field(int(c))
        return self.fields.embed(c, m.k)

    def _same_context(self, a: HModule, b: HModule) -> None:
        if a.levi != b.levi or a.field is not b.field:
            raise ContextMismatchError(
                f"Modules over {a.levi}, F_{a.p}^{a.k} and {b.levi}, F_{b.p}^{b.k} are not comparable"
            )

    def hom_space(self, a: HModule, b: HModule) -> List[FieldArray]:
        """Basis of the Φ (dim a × dim b) with ρ_a(γ)Φ = Φρ_b(γ) for every generator."""
        self._same_context(a, b)
        if a.dim == 0 or b.dim == 0:
            return []
        field = a.field
        blocks = [
            gf.kron(a.action[g], field.Identity(b.dim)) - gf.kron(field.Identity(a.dim), b.action[g].T)
            for g in a.generators
        ]
        if not blocks:
            system = field.Zeros((1, a.dim * b.dim))
        else:
            system = field(np.vstack([np.asarray(block) for block in blocks]))
        solutions = gf.null_space(system)
        return [row.reshape(a.dim, b.dim) for row in solutions]

    def _hom_combinations(self, basis: Sequence[FieldArray], salt: int):
        field = type(basis[0])
        if field.order ** len(basis) <= EXHAUSTIVE_HOM_LIMIT:
            for coeffs in product(range(field.order), repeat=len(basis)):
                total = field.Zeros(basis[0].shape)
                for c, element in zip(coeffs, basis):
                    total = total + field(c) * element
                yield total
            return
        rng = self._rng(salt)
        for _ in range(self.isomorphism_trials):
            yield gf.random_combination(basis, rng)

    def is_isomorphic(self, a: HModule, b: HModule) -> bool:
        """Searches Hom(a, b) for an invertible map, exhaustively when it is small."""
        if a.dim != b.dim:
            return False
        self._same_context(a, b)
        basis = self.hom_space(a, b)
        if not basis:
            return False
        return any(gf.is_invertible(phi) for phi in self._hom_combinations(basis, salt=a.dim))

    def invariants(self, m: HModule) -> Tuple:
        """Cheap isomorphism invariants: dimension and characteristic polynomials of generators."""
        polys = tuple(
            tuple(int(c) for c in m.action[g].characteristic_poly().coeffs) for g in m.generators
        )
        return (m.dim, polys)

    # ========================================================================
    # SUBMODULES
    # ========================================================================

    def submodule(self, m: HModule, basis: FieldArray, name: str = "") -> HModule:
        action = {g: gf.restricted_operator(basis, m.action[g]) for g in m.generators}
        return HModule(m.levi, m.field, action, m.generators, name, int(basis.shape[0]))

    def quotient(self, m: HModule, basis: FieldArray, name: str = "") -> HModule:
        basis, pivots = gf.rref(basis)
        action = {g: gf.quotient_operator(basis, pivots, m.action[g]) for g in m.generators}
        return HModule(m.levi, m.field, action, m.generators, name, m.dim - len(pivots))

    def direct_sum(self, a: HModule, b: HModule) -> HModule:
        self._same_context(a, b)
        field = a.field
        action = {
            g: gf.block_matrix(
                field,
                [[a.action[g], field.Zeros((a.dim, b.dim))], [field.Zeros((b.dim, a.dim)), b.action[g]]],
            )
            for g in a.generators
        }
        return HModule(a.levi, field, action, a.generators, f"{a.name}+{b.name}", a.dim + b.dim)

    def spin(self, m: HModule, vectors: FieldArray) -> FieldArray:
        return gf.spin(vectors, [m.action[g] for g in m.generators])

    def _candidate_elements(self, m: HModule) -> List[FieldArray]:
        mats = [m.action[g] for g in m.generators]
        candidates = list(mats)
        for i, a in enumerate(mats):
            for b in mats[i + 1:]:
                candidates.append(a + b)
                candidates.append(a @ b + b)
        rng = self._rng(m.dim)
        while len(candidates) < MEATAXE_CANDIDATES and mats:
            word = m.identity()
            for _ in range(int(rng.integers(1, 4))):
                word = word @ mats[int(rng.integers(0, len(mats)))]
            candidates.append(word + gf.random_combination(mats, rng))
        return candidates

    def _kernel_test(self, m: HModule, kernel: FieldArray, dual: bool, single: bool) -> Optional[FieldArray]:
        """Proper submodule of m found from kernel vectors, or None when all spin to everything."""
        ops = [m.action[g].T if dual else m.action[g] for g in m.generators]
        for v in self._kernel_vectors(kernel, single):
            span = gf.spin(v, ops)
            if span.shape[0] < m.dim:
                if not dual:
                    return span
                return gf.row_basis(gf.left_null_space(span.T))
        return None

    @staticmethod
    def _kernel_vectors(kernel: FieldArray, single: bool):
        if single:
            yield kernel[:1]
            return
        field = type(kernel)
        n = kernel.shape[0]
        for lead in range(n):
            for tail in product(range(field.order), repeat=n - lead - 1):
                coeffs = field([0] * lead + [1] + list(tail))
                yield np.atleast_2d(coeffs @ kernel)

    def find_submodule(self, m: HModule) -> Optional[FieldArray]:
        """
        A proper nonzero submodule, or None if m is simple.

        For an algebra element A and an irreducible factor f of its characteristic
        polynomial, every nonzero vector of ker f(A) (and of ker f(A)ᵀ on the dual)
        must spin to the whole space; the test is complete.
        """
        if m.dim <= 1:
            return None
        best: Optional[Tuple[int, FieldArray, FieldArray]] = None
        for A in self._candidate_elements(m):
            factors, _ = A.characteristic_poly().factors()
            for f in factors:
                fA = f(A, elementwise=False)
                kernel = gf.left_null_space(fA)
                nullity = int(kernel.shape[0])
                if nullity == f.degree:
                    found = self._kernel_test(m, kernel, dual=False, single=True)
                    if found is not None:
                        return found
                    dual_kernel = gf.left_null_space(fA.T)
                    return self._kernel_test(m, dual_kernel, dual=True, single=True)
                if best is None or nullity < best[0]:
                    best = (nullity, kernel, gf.left_null_space(fA.T))
        assert best is not None
        nullity, kernel, dual_kernel = best
        if m.field.order ** nullity > EXHAUSTIVE_VECTOR_LIMIT:
            raise SizeLimitError(
                f"Simplicity certificate needs {m.field.order}^{nullity} kernel vectors",
                limit=EXHAUSTIVE_VECTOR_LIMIT,
            )
        found = self._kernel_test(m, kernel, dual=False, single=False)
        if found is not None:
            return found
        return self._kernel_test(m, dual_kernel, dual=True, single=False)

    def is_simple(self, m: HModule) -> bool:
        return m.dim >= 1 and self.find_submodule(m) is None

    def composition_series(self, m: HModule) -> List[HModule]:
        """Simple subquotients, top-down."""
        basis = self.find_submodule(m)
        if basis is None:
            return [m]
        return self.composition_series(self.quotient(m, basis)) + self.composition_series(
            self.submodule(m, basis)
        )

    def distinct_factors(self, factors: Sequence[HModule]) -> List[HModule]:
        distinct: List[HModule] = []
        for factor in factors:
            if not any(self.is_isomorphic(factor, other) for other in distinct):
                distinct.append(factor)
        return distinct

    def submodule_lattice(self, m: HModule) -> SubmoduleLattice:
        """
        Every submodule of a multiplicity-free module, found breadth-first by
        adding the unique copy of each simple factor in the socle of m/U.

        Raises:
            MultiplicityNotFreeError: a composition factor repeats
        """
        factors = self.composition_series(m)
        distinct = self.distinct_factors(factors)
        if len(distinct) != len(factors):
            raise MultiplicityNotFreeError(
                f"{m!r} has {len(factors)} composition factors but only {len(distinct)} classes"
            )
        field = m.field
        start = field.Zeros((0, m.dim))
        nodes: List[FieldArray] = [start]
        keys = {_key(start): 0}
        queue = [start]
        while queue:
            current = queue.pop(0)
            basis, pivots = gf.rref(current)
            free = gf.complement_columns(pivots, m.dim)
            if not free:
                continue
            top = self.quotient(m, basis)
            for simple in distinct:
                images = [phi for phi in self.hom_space(simple, top) if not gf.is_zero(phi)]
                if not images:
                    continue
                image = gf.span_sum(field, images, len(free))
                lifted = field.Zeros((image.shape[0], m.dim))
                lifted[:, free] = image
                bigger = gf.span_sum(field, [basis, lifted], m.dim)
                key = _key(bigger)
                if key not in keys:
                    keys[key] = len(nodes)
                    nodes.append(bigger)
                    queue.append(bigger)

        n = len(nodes)
        rref = [gf.rref(node) for node in nodes]
        order = [
            [
                nodes[i].shape[0] <= nodes[j].shape[0]
                and all(gf.in_span(rref[j][0], rref[j][1], v) for v in nodes[i])
                for j in range(n)
            ]
            for i in range(n)
        ]
        joins = [[keys[_key(gf.span_sum(field, [nodes[i], nodes[j]], m.dim))] for j in range(n)] for i in range(n)]
        meets = [[keys[_key(gf.intersect(nodes[i], nodes[j]))] for j in range(n)] for i in range(n)]
        logger.debug(f"Submodule lattice of {m!r}: {n} nodes")
        return SubmoduleLattice(module=m, nodes=nodes, order=order, joins=joins, meets=meets)

    # ========================================================================
    # COMMUTANT
    # ========================================================================

    def commutant(self, m: HModule) -> CommutantReport:
        """End(m) with its center degree and whether it is a field."""
        basis = self.hom_space(m, m)
        n = len(basis)
        field = m.field
        commutative = all(
            np.array_equal(a @ b, b @ a) for i, a in enumerate(basis) for b in basis[i + 1:]
        )
        if n == 0:
            return CommutantReport(module=m, commutant_dim=0, center_degree=0, is_field=False)

        columns = []
        for a in basis:
            column = [np.asarray(a @ b - b @ a).ravel() for b in basis]
            columns.append(np.concatenate(column))
        center = gf.null_space(field(np.array(columns).T))
        center_degree = int(center.shape[0])

        is_field = False
        if commutative:
            for phi in self._hom_combinations(basis, salt=7):
                poly = phi.minimal_poly()
                if poly.degree == n and poly.is_irreducible():
                    is_field = True
                    break
        return CommutantReport(module=m, commutant_dim=n, center_degree=center_degree, is_field=is_field)

    # ========================================================================
    # TWISTS
    # ========================================================================

    def _from_elements(self, m: HModule, levi: ParabolicSubset, matrices: Dict[str, FieldArray], name: str) -> HModule:
        system = self.weyl.system(levi)
        module = HModule(levi, m.field, matrices, system.generators, name, m.dim)
        report = self.check_relations(module)
        if not report.passed:
            raise RelationCheckError(f"{name} violates {report.failures}", failures=report.failures)
        return module

    def dual(self, m: HModule) -> HModule:
        """ρ*(γ) = ρ(ζ(T(γ)))ᵀ."""
        system = self.system(m)
        matrices = {
            g: self.evaluate(m, self.hecke.zeta(self._monomial(m, system.generator(g)))).T
            for g in m.generators
        }
        return self._from_elements(m, m.levi, matrices, f"dual({m.name})")

    def iota_twist(self, m: HModule, ambient: Optional[ParabolicSubset] = None) -> HModule:
        """V^ι with T(γ) acting by ι(T(γ))."""
        system = self.system(m)
        matrices = {
            g: self.evaluate(m, self.hecke.iota(self._monomial(m, system.generator(g)), ambient))
            for g in m.generators
        }
        return self._from_elements(m, m.levi, matrices, f"iota({m.name})")

    def twist_module(self, m: HModule, ambient: Optional[ParabolicSubset] = None) -> HModule:
        """n(V) over H(M_{J^op}): T(γ') acts by ρ(T(n⁻¹γ'n)), n = w_K w_J."""
        target = self.hecke.opposite(m.levi, ambient)
        n = self.weyl.twist_element(m.levi, ambient)
        n_inv = n.inverse()
        target_system = self.weyl.system(target)
        matrices = {
            g: self.basis_matrix(m, n_inv * target_system.generator(g) * n)
            for g in target_system.generators
        }
        return self._from_elements(m, target, matrices, f"n({m.name})")

    def zero_module(self, levi: ParabolicSubset, field: FieldClass, name: str = "0") -> HModule:
        """The zero module; only adjoint functors produce it."""
        system = self.weyl.system(levi)
        action = {g: field.Zeros((0, 0)) for g in system.generators}
        return HModule(levi, field, action, system.generators, name, 0)

    def _monomial(self, m: HModule, x: AffWeylElt) -> HeckeElt:
        return HeckeElt.monomial(m.levi, self.hecke.field, x)

    def frobenius_twist(self, m: HModule, power: int = 1) -> HModule:
        exponent = m.p ** (power % m.k) if m.k > 1 else 1
        action = {g: m.action[g] ** exponent for g in m.generators}
        return HModule(m.levi, m.field, action, m.generators, f"frob^{power}({m.name})", m.dim)

    # ========================================================================
    # SCALARS
    # ========================================================================

    def scalar_extend(self, m: HModule, k_prime: int) -> HModule:
        if k_prime % m.k:
            raise ValidationError(f"F_{m.p}^{m.k} does not embed in F_{m.p}^{k_prime}")
        big = self.fields.field(m.p, k_prime)
        action = {g: self.fields.embed(m.action[g], k_prime) for g in m.generators}
        return HModule(m.levi, big, action, m.generators, f"{m.name}_{k_prime}", m.dim)

    def restrict_scalars(self, m: HModule, small_degree: int) -> HModule:
        restriction = self.fields.restriction(m.field, small_degree)
        action = {g: restriction.restrict_matrix(m.action[g]) for g in m.generators}
        return HModule(
            m.levi,
            restriction.small,
            action,
            m.generators,
            f"res({m.name})",
            m.dim * restriction.rank,
        )

    def extension_length(self, m: HModule, k_prime: int) -> int:
        return len(self.composition_series(self.scalar_extend(m, k_prime)))

    def decompose_extension(self, m: HModule, k_prime: int) -> ExtensionDecomposition:
        """
        Composition factors of m over F_{p^k'} with the Galois-orbit report.

        Raises:
            BusinessRuleViolationError: m is not simple
            ExtensionTooSmallError: F_{p^k'} does not split the commutant
        """
        if not self.is_simple(m):
            raise BusinessRuleViolationError(f"{m!r} is not simple")
        report = self.commutant(m)
        expected = report.center_degree
        extended = self.scalar_extend(m, k_prime)
        factors = self.composition_series(extended)
        if len(factors) < expected:
            raise ExtensionTooSmallError(
                f"F_{m.p}^{k_prime} gives {len(factors)} factors but [E:R] = {expected}",
                factors=len(factors),
                expected=expected,
            )
        absolutely_simple = all(self.commutant(f).commutant_dim == 1 for f in factors)
        distinct = len(self.distinct_factors(factors)) == len(factors)
        reached = set()
        current = factors[0]
        for _ in range(len(factors)):
            for i, other in enumerate(factors):
                if i not in reached and self.is_isomorphic(current, other):
                    reached.add(i)
                    break
            current = self.frobenius_twist(current, m.k)
        transitive = len(reached) == len(factors)
        return ExtensionDecomposition(
            module=m.name,
            base_degree=m.k,
            extension_degree=k_prime,
            center_degree=expected,
            factor_dims=[f.dim for f in factors],
            absolutely_simple=absolutely_simple,
            pairwise_distinct=distinct,
            galois_transitive=transitive,
            factors=factors,
        )

    def descend(self, m: HModule) -> Tuple[HModule, int]:
        """
        Model of m over the smallest F_{p^d} with m ≅ Frob^d(m), from the
        standard basis spun from a one-dimensional eigenspace.
        """
        d_min = next(d for d in divisors(m.k) if d == m.k or self.is_isomorphic(m, self.frobenius_twist(m, d)))
        if d_min == m.k:
            return m, m.k
        mask = self.fields.subfield_mask(m.field, d_min)
        eigenvalues = m.field(np.flatnonzero(mask))
        for A in self._candidate_elements(m):
            for value in eigenvalues:
                kernel = gf.left_null_space(A - value * m.identity())
                if kernel.shape[0] != 1:
                    continue
                basis = self._standard_basis(m, kernel[0])
                if basis.shape[0] < m.dim:
                    continue
                inverse = np.linalg.inv(basis)
                try:
                    action = {
                        g: self.fields.pull_back(basis @ m.action[g] @ inverse, d_min)
                        for g in m.generators
                    }
                except ValidationError:
                    continue
                small = self.fields.field(m.p, d_min)
                model = HModule(m.levi, small, action, m.generators, f"{m.name}_desc", m.dim)
                return model, d_min
        logger.warning(f"No descent model found for {m!r}; keeping F_{m.p}^{m.k}")
        return m, m.k

    def _standard_basis(self, m: HModule, v: FieldArray) -> FieldArray:
        rows = [v]
        basis, pivots = gf.rref(np.atleast_2d(v))
        index = 0
        while index < len(rows):
            for g in m.generators:
                image = rows[index] @ m.action[g]
                if not gf.in_span(basis, pivots, image):
                    rows.append(image)
                    basis, pivots = gf.rref(gf.stack(m.field, rows, m.dim))
            index += 1
        return gf.stack(m.field, rows, m.dim)

    # ========================================================================
    # SUPERSINGULARITY
    # ========================================================================

    def is_supersingular(self, m: HModule, centrals: Mapping[ParabolicSubset, CentralElement]) -> bool:
        """
        Every certified central element attached to a proper Levi of m.levi acts nilpotently.

        Raises:
            MissingLeviError: no central element supplied for some proper Levi
            UnverifiedCentralError: a supplied central element is not certified
        """
        preset = self.weyl.preset
        for J in preset.all_subsets():
            if not J < m.levi:
                continue
            central = centrals.get(J)
            if central is None or central.ambient != m.levi:
                raise MissingLeviError(f"No central element for {J} inside {m.levi}")
            if not central.verified:
                raise UnverifiedCentralError(f"Central element for {J} is not verified")
            action = self.evaluate(m, central.elt)
            if not gf.is_zero(gf.matrix_power(action, m.dim)):
                return False
        return True


def _key(basis: FieldArray) -> Tuple:
    reduced, _ = gf.rref(basis) if basis.shape[0] else (basis, [])
    return (int(reduced.shape[0]),) + tuple(int(v) for v in np.asarray(reduced).ravel())
