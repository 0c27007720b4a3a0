"""Parabolic induction, coinduction, adjoints, e(V), Steinberg modules and triples."""

import logging
import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.domain.errors import (
    ContextMismatchError,
    CrossCheckFailureError,
    InvalidTripleError,
    KNotWithinPVError,
    ReductionFailureError,
    VerificationFailureError,
)
from app.domain.models.module import HModule
from app.domain.models.root_datum import ParabolicSubset
from app.domain.models.triple import InducedModule, Triple
from app.domain.models.weyl import AffWeylElt
from app.domain.services.hecke_service import HeckeService
from app.domain.services.module_service import ModuleService
from app.domain.services.weyl_service import LeviSystem, WeylService
from app.infrastructure.linalg import gf_matrix as gf
from app.infrastructure.linalg.gf_matrix import FieldArray
from app.infrastructure.monitoring.logging_setup import log_performance

logger = logging.getLogger(__name__)


class InductionService:
    """
    Functors between module categories of H(M_J) and H(M_K) for J ⊆ K.

    Induced modules are built on the coset basis v ⊗ T(d), d a minimal
    representative of W_{0,J}\\W_{0,K}. A product T(d)T(γ) is a single
    monomial c·T(y); y is pushed into the M-negative cone by left
    multiplication with a deep central translation t_a until y = m·d' with
    additive lengths, and then v ⊗ T(y) = v·ρ(T(t_a))⁻ⁿ ρ(T(m)) ⊗ T(d').
    The Hom-side constructions mirror this with right multiplication.

    Responsibilities:
    - induce (⊗, -, θ) and coinduce (Hom, -, θ*), plus the T*-variants
    - Left and right adjoints by localization at t_a
    - Δ_V, P(V), e(V) and generalized Steinberg modules
    - Triples (P, V, Q) and the recovery of e(V) from them
    """

    def __init__(
        self,
        weyl_service: WeylService,
        hecke_service: HeckeService,
        module_service: ModuleService,
        max_power: int = settings.REDUCTION_MAX_POWER,
    ):
        self.weyl = weyl_service
        self.hecke = hecke_service
        self.modules = module_service
        self.preset = weyl_service.preset
        self.max_power = max_power

    def _ambient(self, ambient: Optional[ParabolicSubset]) -> ParabolicSubset:
        return ambient if ambient is not None else self.preset.delta

    def _rho(self, m: HModule, x: AffWeylElt, star: bool) -> FieldArray:
        return self.modules.star_matrix(m, x) if star else self.modules.basis_matrix(m, x)

    # ========================================================================
    # INDUCTION AND COINDUCTION
    # ========================================================================

    def induce(
        self, J: ParabolicSubset, V: HModule, ambient: Optional[ParabolicSubset] = None
    ) -> InducedModule:
        """
        V ⊗_{H(M_J⁻),θ} H(M_K) on the coset basis.

        Raises:
            ContextMismatchError: V is not a module over H(M_J)
            ReductionFailureError: the reduce-and-split step did not terminate
            RelationCheckError: the constructed action violates a relation
        """
        K = self._ambient(ambient)
        carrier = self.tensor_variant(J, V, K, star=False)
        return InducedModule(
            base=V,
            levi=J,
            ambient=K,
            cosets=self.weyl.min_coset_reps(J, K),
            carrier=carrier,
            variant="tensor-theta",
        )

    def coinduce(
        self, J: ParabolicSubset, V: HModule, ambient: Optional[ParabolicSubset] = None
    ) -> InducedModule:
        """Hom_{H(M_J⁻),θ*}(H(M_K), V), built independently of `induce`."""
        K = self._ambient(ambient)
        return InducedModule(
            base=V,
            levi=J,
            ambient=K,
            cosets=self.weyl.min_coset_reps(J, K),
            carrier=self.hom_variant(J, V, K, star=True),
            variant="hom-theta-star",
        )

    def tensor_variant(
        self, J: ParabolicSubset, V: HModule, K: ParabolicSubset, star: bool
    ) -> HModule:
        """V ⊗ over θ (star=False) or θ* (star=True); coordinates (d, v) with d outer."""
        started = time.time()
        self._check_levi(J, V)
        if J == K:
            return V
        reps = self.weyl.min_coset_reps(J, K).reps
        index = {d: i for i, d in enumerate(reps)}
        system = self.weyl.system(K)
        t_a = AffWeylElt.translation(self.weyl.deep_translation(J, K))
        tau_inv = np.linalg.inv(self._rho(V, t_a, star))

        action: Dict[str, FieldArray] = {}
        for g in system.generators:
            gamma = system.generator(g)
            blocks = self._empty_blocks(V, len(reps))
            for i, d in enumerate(reps):
                y, c = self.hecke.monomial_product(d, gamma, K, star)
                z, A = self._reduce_left(J, K, V, y, c, t_a, tau_inv, star)
                blocks[i][index[z]] = blocks[i][index[z]] + A
            action[g] = self._assemble(V, blocks, g, system, star)

        name = f"{'IndStar' if star else 'Ind'}_{J.key()}({V.name})"
        module = self.modules.build_module(K, V.field, action, name)
        log_performance(
            logger,
            "tensor_variant",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"levi": J.key(), "ambient": K.key(), "dim": module.dim, "star": star},
        )
        return module

    def hom_variant(
        self, J: ParabolicSubset, V: HModule, K: ParabolicSubset, star: bool
    ) -> HModule:
        """
        Hom over θ (star=False) or θ* (star=True).

        A map f is recorded by its values f_d = f(T(d⁻¹)); via ζ this is the
        Hom over the M-negative part acting on the left.
        """
        started = time.time()
        self._check_levi(J, V)
        if J == K:
            return V
        reps = self.weyl.min_coset_reps(J, K).reps
        index = {d: i for i, d in enumerate(reps)}
        system = self.weyl.system(K)
        t_b = AffWeylElt.translation(tuple(-v for v in self.weyl.deep_translation(J, K)))
        tau_inv = np.linalg.inv(self._rho(V, t_b, star))

        action: Dict[str, FieldArray] = {}
        for g in system.generators:
            gamma = system.generator(g)
            blocks = self._empty_blocks(V, len(reps))
            for i, d in enumerate(reps):
                y, c = self.hecke.monomial_product(gamma, d.inverse(), K, star)
                z, A = self._reduce_right(J, K, V, y, c, t_b, tau_inv, star)
                blocks[index[z]][i] = blocks[index[z]][i] + A
            action[g] = self._assemble(V, blocks, g, system, star)

        name = f"{'CoindStar' if star else 'Coind'}_{J.key()}({V.name})"
        module = self.modules.build_module(K, V.field, action, name)
        log_performance(
            logger,
            "hom_variant",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"levi": J.key(), "ambient": K.key(), "dim": module.dim, "star": star},
        )
        return module

    def _check_levi(self, J: ParabolicSubset, V: HModule) -> None:
        if V.levi != J:
            raise ContextMismatchError(f"{V!r} is not a module over H(M_{J})")

    @staticmethod
    def _empty_blocks(V: HModule, n: int) -> List[List[FieldArray]]:
        return [[V.field.Zeros((V.dim, V.dim)) for _ in range(n)] for _ in range(n)]

    def _assemble(
        self, V: HModule, blocks: List[List[FieldArray]], g: str, system: LeviSystem, star: bool
    ) -> FieldArray:
        matrix = gf.block_matrix(V.field, blocks)
        if star and g in system.reflections:
            matrix = matrix + gf.scalar(V.field, self.hecke.c_s(g)) * V.field.Identity(matrix.shape[0])
        return matrix

    def _reduce_left(
        self,
        J: ParabolicSubset,
        K: ParabolicSubset,
        V: HModule,
        y: AffWeylElt,
        scalar: int,
        t_a: AffWeylElt,
        tau_inv: FieldArray,
        star: bool,
    ) -> Tuple[AffWeylElt, FieldArray]:
        """Coset rep d' and the operator A with v ⊗ c·T(y) = v·A ⊗ T(d')."""
        system = self.weyl.system(K)
        z = y
        for power in range(self.max_power + 1):
            m, d = self.weyl.split_coset(z, J, K)
            if self.weyl.is_M_negative(m, J, K) and system.length(z) == system.length(m) + system.length(d):
                A = gf.matrix_power(tau_inv, power) @ self._rho(V, m, star)
                return d, gf.scalar(V.field, scalar) * A
            z, c = self.hecke.monomial_product(t_a, z, K, star)
            scalar *= c
        raise ReductionFailureError(
            f"No additive splitting of {y} after {self.max_power} deep translations",
            details={"levi": J.key(), "ambient": K.key()},
        )

    def _reduce_right(
        self,
        J: ParabolicSubset,
        K: ParabolicSubset,
        V: HModule,
        y: AffWeylElt,
        scalar: int,
        t_b: AffWeylElt,
        tau_inv: FieldArray,
        star: bool,
    ) -> Tuple[AffWeylElt, FieldArray]:
        """Coset rep d' and A with f(c·T(y)) = f(T(d'⁻¹))·A for f in the Hom carrier."""
        system = self.weyl.system(K)
        z = y
        for power in range(self.max_power + 1):
            m_inv, d = self.weyl.split_coset(z.inverse(), J, K)
            m = m_inv.inverse()
            if self.weyl.is_M_positive(m, J, K) and system.length(z) == system.length(m) + system.length(d):
                A = self._rho(V, m, star) @ gf.matrix_power(tau_inv, power)
                return d, gf.scalar(V.field, scalar) * A
            z, c = self.hecke.monomial_product(z, t_b, K, star)
            scalar *= c
        raise ReductionFailureError(
            f"No additive splitting of {y} after {self.max_power} deep translations",
            details={"levi": J.key(), "ambient": K.key()},
        )

    # ========================================================================
    # ADJOINTS
    # ========================================================================

    def adjoint_R(self, J: ParabolicSubset, X: HModule) -> HModule:
        """Right adjoint: the stable image of ρ_X(T(t_a)) with the transported H(M_J)-action."""
        return self._localize(J, X, star=False)

    def adjoint_L(self, J: ParabolicSubset, X: HModule) -> HModule:
        """Left adjoint: X modulo the generalized kernel of ρ_X(T*(t_a))."""
        return self._localize(J, X, star=True)

    def _localize(self, J: ParabolicSubset, X: HModule, star: bool) -> HModule:
        K = X.levi
        if J == K:
            return X
        t_a = AffWeylElt.translation(self.weyl.deep_translation(J, K))
        tau = self._rho(X, t_a, star)
        small = self.weyl.system(J)
        label = f"{'L' if star else 'R'}_{J.key()}({X.name})"

        if star:
            kernel = gf.row_basis(gf.left_null_space(gf.matrix_power(tau, X.dim)))
            basis, pivots = gf.rref(kernel)
            width = X.dim - len(pivots)

            def restrict(op: FieldArray) -> FieldArray:
                return gf.quotient_operator(basis, pivots, op)

        else:
            image = gf.stable_image(tau)
            width = int(image.shape[0])

            def restrict(op: FieldArray) -> FieldArray:
                return gf.restricted_operator(image, op)

        if width == 0:
            return self.modules.zero_module(J, X.field, label)

        tau_inv = np.linalg.inv(restrict(tau))
        action: Dict[str, FieldArray] = {}
        for g in small.generators:
            x, power = self._push_negative(J, K, small.generator(g), t_a)
            op = gf.matrix_power(tau_inv, power) @ restrict(self._rho(X, x, star))
            if star and g in small.reflections:
                op = op + gf.scalar(X.field, self.hecke.c_s(g)) * X.field.Identity(width)
            action[g] = op
        return self.modules.build_module(J, X.field, action, label)

    def _push_negative(
        self, J: ParabolicSubset, K: ParabolicSubset, x: AffWeylElt, t_a: AffWeylElt
    ) -> Tuple[AffWeylElt, int]:
        for power in range(self.max_power + 1):
            if self.weyl.is_M_negative(x, J, K):
                return x, power
            x = t_a * x
        raise ReductionFailureError(f"{x} does not reach the M-negative cone", details={"levi": J.key()})

    def adjoint_transitivity(
        self, J: ParabolicSubset, J1: ParabolicSubset, V: HModule, left: bool = False
    ) -> Tuple[int, int]:
        """
        Dimensions of R_{J1}(Ind_J V) and Ind_{J∩J1}^{J1}(R_{J∩J1} V), or of
        the L-versions when `left` is set; equal dimensions are expected.
        """
        adjoint = self.adjoint_L if left else self.adjoint_R
        meet = self.preset.subset([a for a in J.labels if a in J1])
        lhs = adjoint(J1, self.induce(J, V).carrier)
        inner = adjoint(meet, V)
        if inner.dim == 0:
            return lhs.dim, 0
        rhs = self.induce(meet, inner, ambient=J1).carrier
        return lhs.dim, rhs.dim

    # ========================================================================
    # Δ_V, P(V) AND e(V)
    # ========================================================================

    def orthogonal_roots(self, J: ParabolicSubset) -> List[str]:
        return [
            a
            for a in self.preset.simple_roots
            if a not in J and all(self.preset.pairing(a, b) == 0 == self.preset.pairing(b, a) for b in J.labels)
        ]

    def delta_V(self, V: HModule) -> ParabolicSubset:
        """Simple roots α orthogonal to J on which T*(t_{α∨}) acts as the identity."""
        qualifying = []
        for a in self.orthogonal_roots(V.levi):
            z = AffWeylElt.translation(self.preset.coroots[a])
            if np.array_equal(self.modules.star_matrix(V, z), V.identity()):
                qualifying.append(a)
        return self.preset.subset(qualifying)

    def P_of_V(self, V: HModule) -> ParabolicSubset:
        return self.preset.subset(list(V.levi.labels) + list(self.delta_V(V).labels))

    def extend_e(self, V: HModule, K: ParabolicSubset) -> HModule:
        """
        e_K(V): the T*-basis of the part generated by K∖J acts trivially and
        T*(m) acts as on V for m in W_J.

        Raises:
            KNotWithinPVError: K is not between J and P(V)
        """
        J = V.levi
        if not J <= K:
            raise KNotWithinPVError(f"{K} does not contain {J}")
        delta = self.delta_V(V)
        outside = [a for a in K.labels if a not in J]
        if any(a not in delta for a in outside):
            raise KNotWithinPVError(
                f"{K} is not contained in P(V) = {self.P_of_V(V)}",
                details={"delta_v": list(delta.labels)},
            )
        if J == K:
            return V
        system = self.weyl.system(K)
        small = self.weyl.system(J)
        action: Dict[str, FieldArray] = {}
        for g in system.reflection_labels:
            if g in small.reflections:
                action[g] = V.action[g]
            else:
                action[g] = gf.scalar(V.field, 1 + self.hecke.c_s(g)) * V.identity()
        for u in system.omega_labels:
            inner = self._levi_part(system.generator(u), J, K)
            action[u] = self.modules.star_matrix(V, inner)
        return self.modules.build_module(K, V.field, action, f"e_{K.key()}({V.name})")

    def _levi_part(self, x: AffWeylElt, J: ParabolicSubset, K: ParabolicSubset) -> AffWeylElt:
        """(λ, w_J) for x = (λ, w_J w') with w' in the finite Weyl group of K∖J."""
        roots = self.weyl.roots
        inner = set(roots.finite_group(J.labels))
        for w2 in roots.finite_group([a for a in K.labels if a not in J]):
            candidate = x * AffWeylElt.finite(w2).inverse()
            if candidate.w in inner:
                return candidate
        raise KNotWithinPVError(f"{x} has no factorization through the Levi of {J}")

    # ========================================================================
    # STEINBERG MODULES
    # ========================================================================

    def steinberg(
        self, V: HModule, Q: ParabolicSubset, K: Optional[ParabolicSubset] = None
    ) -> HModule:
        """
        St_Q(V) inside H(M_K), K = P(V) by default, computed as a cokernel and
        as e_K(V) ⊗ St_Q(R) with diagonal T*-action; the two must agree.

        Raises:
            KNotWithinPVError: the parabolic chain J ⊆ Q ⊆ K ⊆ P(V) fails
            CrossCheckFailureError: the two constructions are not isomorphic
        """
        started = time.time()
        K = K if K is not None else self.P_of_V(V)
        if not (V.levi <= Q <= K):
            raise KNotWithinPVError(f"Need {V.levi} ⊆ {Q} ⊆ {K}")
        by_cokernel = self._steinberg_cokernel(lambda L: self.extend_e(V, L), Q, K)
        e_v = self.extend_e(V, K)
        unit = self._steinberg_cokernel(lambda L: self.modules.trivial_character(L, V.field), Q, K)
        by_tensor = self.tensor_diagonal(e_v, unit)
        if not self.modules.is_isomorphic(by_cokernel, by_tensor):
            raise CrossCheckFailureError(
                f"St_{Q.key()}({V.name}) differs between the cokernel and tensor constructions",
                details={"cokernel_dim": by_cokernel.dim, "tensor_dim": by_tensor.dim},
            )
        log_performance(
            logger,
            "steinberg",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"levi": Q.key(), "ambient": K.key(), "dim": by_cokernel.dim},
        )
        return by_cokernel.renamed(f"St_{Q.key()}({V.name})")

    def steinberg_trivial(self, Q: ParabolicSubset, K: ParabolicSubset, field) -> HModule:
        """St_Q(R) over H(M_K) for the trivial character."""
        return self._steinberg_cokernel(lambda L: self.modules.trivial_character(L, field), Q, K)

    def _steinberg_cokernel(self, extend, Q: ParabolicSubset, K: ParabolicSubset) -> HModule:
        """Ind_Q(e_Q) modulo the canonical images of Ind_{Q1}(e_{Q1}) for Q1 = Q ∪ {α}."""
        top = self.induce(Q, extend(Q), ambient=K)
        images = []
        for label in K.labels:
            if label in Q:
                continue
            Q1 = self.preset.subset(list(Q.labels) + [label])
            source = self.induce(Q1, extend(Q1), ambient=K)
            images.append(self.canonical_inclusion(source, top))
        if not images:
            return top.carrier
        span = gf.span_sum(top.carrier.field, images, top.dim)
        return self.modules.quotient(top.carrier, span, name=f"St_{Q.key()}")

    def canonical_inclusion(self, source: InducedModule, top: InducedModule) -> FieldArray:
        """
        The map Ind_{Q1}(e_{Q1}) -> Ind_Q(e_Q) sending v ⊗ 1 to the sum of
        v ⊗ T(w) over the representatives w of W_{0,Q}\\W_{0,Q1}, extended
        H(M_K)-linearly: v ⊗ T(d) goes to that sum times T(d).

        Raises:
            CrossCheckFailureError: the resulting matrix is not a module map
        """
        Q, Q1 = top.levi, source.levi
        carrier = top.carrier
        field = carrier.field
        dim_v = top.base.dim
        inner = [top.cosets.index(w) for w in self.weyl.min_coset_reps(Q, Q1).reps]
        symmetrizer = field.Zeros((dim_v, carrier.dim))
        for d in inner:
            symmetrizer[:, d * dim_v : (d + 1) * dim_v] = field.Identity(dim_v)
        rows = [symmetrizer @ self.modules.basis_matrix(carrier, d) for d in source.cosets.reps]
        inclusion = field(np.vstack([np.asarray(r) for r in rows]))
        for g in carrier.generators:
            if not np.array_equal(source.carrier.action[g] @ inclusion, inclusion @ carrier.action[g]):
                raise CrossCheckFailureError(
                    f"Inclusion Ind_{Q1.key()} -> Ind_{Q.key()} does not commute with T({g})",
                    details={"source_dim": source.dim, "target_dim": top.dim},
                )
        return inclusion

    def tensor_diagonal(self, a: HModule, b: HModule) -> HModule:
        """a ⊗ b with T*(s) acting as T*(s) ⊗ T*(s) and T(u) as T(u) ⊗ T(u)."""
        system = self.weyl.system(a.levi)
        field = a.field
        action: Dict[str, FieldArray] = {}
        for g in system.generators:
            if g in system.reflections:
                c = gf.scalar(field, self.hecke.c_s(g))
                star = gf.kron(a.action[g] - c * a.identity(), b.action[g] - c * b.identity())
                action[g] = star + c * field.Identity(a.dim * b.dim)
            else:
                action[g] = gf.kron(a.action[g], b.action[g])
        return self.modules.build_module(a.levi, field, action, f"{a.name}⊗{b.name}")

    # ========================================================================
    # TRIPLES
    # ========================================================================

    def triple_module(
        self, P: ParabolicSubset, V: HModule, Q: ParabolicSubset, require_simple: bool = False
    ) -> Triple:
        """
        I(P, V, Q) = Ind_{P(V)}(St_Q(V)) with every derived module.

        Raises:
            InvalidTripleError: V is not over H(M_P), Q is not between P and
                P(V), or V is required to be simple and is not
        """
        if V.levi != P:
            raise InvalidTripleError(f"{V!r} is not a module over H(M_{P})")
        p_of_v = self.P_of_V(V)
        if not (P <= Q <= p_of_v):
            raise InvalidTripleError(
                f"Q = {Q} is not between P = {P} and P(V) = {p_of_v}",
                details={"P": list(P.labels), "Q": list(Q.labels), "P(V)": list(p_of_v.labels)},
            )
        if require_simple and not self.modules.is_simple(V):
            raise InvalidTripleError(f"{V!r} is not simple")
        e_v = self.extend_e(V, p_of_v)
        st = self.steinberg(V, Q, p_of_v)
        module = self.induce(p_of_v, st).carrier
        label = f"I({P.key()},{V.name},{Q.key()})"
        logger.info(f"Triple {label}: P(V) = {p_of_v}, dim {module.dim}")
        return Triple(
            P=P,
            V=V,
            Q=Q,
            delta_v=self.delta_V(V),
            p_of_v=p_of_v,
            e_v=e_v,
            steinberg=st,
            module=module.renamed(label),
            name=label,
        )

    def recover_extension(self, triple: Triple) -> HModule:
        """
        e(V) rebuilt from I and P(V) as the maps St_Q(R) -> L_{P(V)}(I)
        commuting with the part of H(M(V)) generated by P(V)∖P.

        Raises:
            VerificationFailureError: the result is not isomorphic to e(V)
        """
        K = triple.p_of_v
        J = triple.P
        localized = self.adjoint_L(K, triple.module)
        unit = self.steinberg_trivial(triple.Q, K, triple.V.field)
        system = self.weyl.system(K)
        small = self.weyl.system(J)
        outer = [g for g in system.reflection_labels if g not in small.reflections]

        maps = self._relative_homs(unit, localized, outer)
        if len(maps) != triple.V.dim:
            raise VerificationFailureError(
                f"Expected {triple.V.dim} maps St_Q(R) -> L(I), found {len(maps)}",
                details={"triple": triple.label()},
            )
        field = triple.V.field
        flat = field(np.array([np.asarray(phi).ravel() for phi in maps]))

        def transport(images: List[FieldArray]) -> FieldArray:
            rows = field(np.array([np.asarray(phi).ravel() for phi in images]))
            return gf.coordinates(flat, rows)

        action: Dict[str, FieldArray] = {}
        for g in system.generators:
            if g in outer:
                action[g] = gf.scalar(field, 1 + self.hecke.c_s(g)) * field.Identity(len(maps))
            elif g in system.reflections:
                c = gf.scalar(field, self.hecke.c_s(g))
                star = localized.action[g] - c * localized.identity()
                action[g] = transport([phi @ star for phi in maps]) + c * field.Identity(len(maps))
            else:
                unit_inv = np.linalg.inv(unit.action[g])
                action[g] = transport([unit_inv @ phi @ localized.action[g] for phi in maps])
        rebuilt = self.modules.build_module(K, field, action, f"e_rec({triple.V.name})")
        if not self.modules.is_isomorphic(rebuilt, triple.e_v):
            raise VerificationFailureError(
                f"Recovered e(V) is not isomorphic to e(V) for {triple.label()}"
            )
        return rebuilt

    def _relative_homs(self, a: HModule, b: HModule, generators: List[str]) -> List[FieldArray]:
        """Maps Φ: a -> b with ρ_a(g)Φ = Φρ_b(g) for the listed generators only."""
        field = a.field
        if not generators:
            return [row.reshape(a.dim, b.dim) for row in field.Identity(a.dim * b.dim)]
        blocks = [
            gf.kron(a.action[g], field.Identity(b.dim)) - gf.kron(field.Identity(a.dim), b.action[g].T)
            for g in generators
        ]
        solutions = gf.null_space(field(np.vstack([np.asarray(block) for block in blocks])))
        return [row.reshape(a.dim, b.dim) for row in solutions]

    # ========================================================================
    # LATTICE TRANSPORT
    # ========================================================================

    def verify_lattice_transport(self, V: HModule, Q: ParabolicSubset) -> Dict[str, object]:
        """Submodule lattices of St_Q(V) and of its induction have the same shape."""
        st = self.steinberg(V, Q)
        induced = self.induce(self.P_of_V(V), st).carrier
        before = self.modules.submodule_lattice(st)
        after = self.modules.submodule_lattice(induced)
        same = before.size == after.size and len(before.covers()) == len(after.covers())
        return {
            "module": V.name,
            "Q": Q.key(),
            "steinberg_nodes": before.size,
            "induced_nodes": after.size,
            "passed": same,
        }
