"""The pro-p Iwahori-Hecke algebra in characteristic p as a rewriting system."""

import logging
import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.domain.errors import (
    ContextMismatchError,
    ElementNotInLeviError,
    NoCentralElementFoundError,
    ValidationError,
    VerificationFailureError,
)
from app.domain.models.hecke import CentralElement, HeckeElt, Scalar
from app.domain.models.root_datum import ParabolicSubset
from app.domain.models.weyl import AffWeylElt
from app.domain.services.root_data_service import RootSystem
from app.domain.services.weyl_service import LeviSystem, WeylService
from app.infrastructure.linalg import gf_matrix as gf
from app.infrastructure.linalg.gf_matrix import FieldClass
from app.infrastructure.monitoring.logging_setup import log_performance

logger = logging.getLogger(__name__)

StarCoeffs = Dict[AffWeylElt, int]


class HeckeService:
    """
    Arithmetic in H(M_J) over F_{p^k} for every Levi J of one preset.

    In characteristic p the quadratic relation is T(s)² = c_s T(s), so the
    product of two basis elements is again a multiple of a basis element.

    Responsibilities:
    - T and T* bases and the change of basis between them
    - Multiplication
    - θ, θ*, the involutions ι, ζ and the twist by w_K w_J
    - Search and certification of central elements
    """

    def __init__(
        self,
        weyl_service: WeylService,
        field: FieldClass,
        support_slack: int = settings.CENTRAL_SUPPORT_SLACK,
        support_bound: Optional[int] = settings.CENTRAL_SUPPORT_BOUND,
    ):
        self.weyl = weyl_service
        self.preset = weyl_service.preset
        self.field = field
        self.support_slack = support_slack
        self.support_bound = support_bound
        self._products: Dict[Tuple[ParabolicSubset, AffWeylElt, AffWeylElt], Tuple[AffWeylElt, int]] = {}
        self._stars: Dict[Tuple[ParabolicSubset, AffWeylElt], HeckeElt] = {}

    # ========================================================================
    # BASES
    # ========================================================================

    def _levi(self, J: Optional[ParabolicSubset]) -> ParabolicSubset:
        return J if J is not None else self.preset.delta

    def unit(self, J: Optional[ParabolicSubset] = None) -> HeckeElt:
        J = self._levi(J)
        return HeckeElt.monomial(J, self.field, self.weyl.system(J).identity())

    def zero(self, J: Optional[ParabolicSubset] = None) -> HeckeElt:
        return HeckeElt.zero(self._levi(J), self.field)

    def basis_T(self, x: AffWeylElt, J: Optional[ParabolicSubset] = None) -> HeckeElt:
        J = self._levi(J)
        if not self.weyl.system(J).contains(x):
            raise ElementNotInLeviError(f"{x} is not in W of {J}")
        return HeckeElt.monomial(J, self.field, x)

    def generator(self, label: str, J: Optional[ParabolicSubset] = None) -> HeckeElt:
        J = self._levi(J)
        return HeckeElt.monomial(J, self.field, self.weyl.system(J).generator(label))

    def c_s(self, label: str) -> int:
        return self.preset.c_s(label)

    def basis_Tstar(self, x: AffWeylElt, J: Optional[ParabolicSubset] = None) -> HeckeElt:
        """T*(x) = Π (T(s) - c_s) along the canonical reduced word, times T(ω)."""
        J = self._levi(J)
        key = (J, x)
        if key not in self._stars:
            system = self.weyl.system(J)
            word = system.reduced_word(x)
            result = self.unit(J)
            for label in word.letters:
                step = self.generator(label, J) - self.unit(J).scale(self.c_s(label))
                result = self.multiply(result, step)
            result = self.multiply(result, HeckeElt.monomial(J, self.field, word.omega))
            self._stars[key] = result
        return self._stars[key]

    def to_tstar(self, a: HeckeElt) -> StarCoeffs:
        """Coefficients of a in the T*-basis; T*(x) = T(x) + shorter terms."""
        system = self.weyl.system(a.levi)
        remaining = a
        result: Dict[AffWeylElt, int] = {}
        while not remaining.is_zero():
            top = max(remaining.support(), key=lambda x: (system.length(x), system.sort_key(x)))
            coeff = remaining.coefficient(top)
            result[top] = int(self.field(result.get(top, 0)) + coeff)
            remaining = remaining - self.basis_Tstar(top, a.levi).scale(coeff)
        return {x: c for x, c in result.items() if c}

    def from_tstar(self, coeffs: StarCoeffs, J: Optional[ParabolicSubset] = None) -> HeckeElt:
        J = self._levi(J)
        total = self.zero(J)
        for x, c in coeffs.items():
            total = total + self.basis_Tstar(x, J).scale(self.field(c))
        return total

    # ========================================================================
    # MULTIPLICATION
    # ========================================================================

    def _monomial_product(
        self, J: ParabolicSubset, x: AffWeylElt, y: AffWeylElt
    ) -> Tuple[AffWeylElt, int]:
        """T(x)T(y) = c·T(z) with c an integer product of the c_s."""
        key = (J, x, y)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        system = self.weyl.system(J)
        word = system.reduced_word(y)
        current, scalar = x, 1
        current_length = system.length(x)
        for label in word.letters:
            moved = current * system.reflections[label]
            moved_length = system.length(moved)
            if moved_length > current_length:
                current, current_length = moved, moved_length
            else:
                scalar *= self.c_s(label)
        result = (current * word.omega, scalar)
        self._products[key] = result
        return result

    def monomial_product(
        self, x: AffWeylElt, y: AffWeylElt, J: Optional[ParabolicSubset] = None, star: bool = False
    ) -> Tuple[AffWeylElt, int]:
        """
        T(x)T(y) = c·T(z), or T*(x)T*(y) = c*·T*(z) when star is set.

        T*(s)² = -c_s T*(s), so the starred scalar is the product of the -c_s.
        """
        J = self._levi(J)
        z, scalar = self._monomial_product(J, x, y)
        if star:
            drops = self._drops(J, x, y)
            scalar = scalar * (-1) ** drops
        return z, scalar

    def _drops(self, J: ParabolicSubset, x: AffWeylElt, y: AffWeylElt) -> int:
        system = self.weyl.system(J)
        return (system.length(x) + system.length(y) - system.length(self._monomial_product(J, x, y)[0])) // 2

    def multiply(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        """
        Bilinear product in H(M_J).

        Raises:
            ContextMismatchError: a and b live in different Levi algebras
        """
        if a.levi != b.levi:
            raise ContextMismatchError(f"Cannot multiply elements of H(M_{a.levi}) and H(M_{b.levi})")
        field = self.field
        result: Dict[AffWeylElt, object] = {}
        for x, cx in a.items():
            for y, cy in b.items():
                z, scalar = self._monomial_product(a.levi, x, y)
                term = cx * cy * gf.scalar(field, scalar)
                result[z] = result.get(z, field(0)) + term
        return HeckeElt(a.levi, field, {z: int(c) for z, c in result.items()})

    def power(self, a: HeckeElt, exponent: int) -> HeckeElt:
        result = self.unit(a.levi)
        for _ in range(exponent):
            result = self.multiply(result, a)
        return result

    def commutator(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        return self.multiply(a, b) - self.multiply(b, a)

    # ========================================================================
    # STRUCTURE MAPS
    # ========================================================================

    def theta(
        self, J: ParabolicSubset, a: HeckeElt, ambient: Optional[ParabolicSubset] = None
    ) -> HeckeElt:
        """T^J(m) -> T^K(m); multiplicative only on the M-positive and M-negative parts."""
        K = self._levi(ambient)
        self._require(a, J)
        return HeckeElt(K, self.field, a.coeffs)

    def theta_star(
        self, J: ParabolicSubset, a: HeckeElt, ambient: Optional[ParabolicSubset] = None
    ) -> HeckeElt:
        """T^{J,*}(m) -> T^{K,*}(m)."""
        K = self._levi(ambient)
        self._require(a, J)
        return self.from_tstar(self.to_tstar(a), K)

    def iota(self, a: HeckeElt, ambient: Optional[ParabolicSubset] = None) -> HeckeElt:
        """ι^M_{ℓ-ℓ_M}: T^M(w) -> (-1)^{ℓ(w)} T^{M,*}(w), ℓ the length of the ambient Levi."""
        return self.iota_sign(self.iota_levi(a), ambient)

    def iota_levi(self, a: HeckeElt) -> HeckeElt:
        """ι^M: T^M(w) -> (-1)^{ℓ_M(w)} T^{M,*}(w)."""
        system = self.weyl.system(a.levi)
        total = self.zero(a.levi)
        for x, c in a.items():
            sign = -1 if system.length(x) % 2 else 1
            total = total + self.basis_Tstar(x, a.levi).scale(c * gf.scalar(self.field, sign))
        return total

    def iota_sign(self, a: HeckeElt, ambient: Optional[ParabolicSubset] = None) -> HeckeElt:
        """ι_{ℓ-ℓ_M}: T^M(w) -> (-1)^{ℓ(w)-ℓ_M(w)} T^M(w), which also fixes the T*-basis up to the same sign."""
        big = self.weyl.system(self._levi(ambient))
        small = self.weyl.system(a.levi)
        coeffs = {}
        for x, c in a.items():
            sign = -1 if (big.length(x) - small.length(x)) % 2 else 1
            coeffs[x] = int(c * gf.scalar(self.field, sign))
        return HeckeElt(a.levi, self.field, coeffs)

    def zeta(self, a: HeckeElt) -> HeckeElt:
        """The anti-involution T(w) -> T(w⁻¹)."""
        return HeckeElt(a.levi, self.field, {x.inverse(): c for x, c in a.coeffs.items()})

    def opposite(self, J: ParabolicSubset, ambient: Optional[ParabolicSubset] = None) -> ParabolicSubset:
        """J^op, read off from n s_α n⁻¹ with n = w_K w_J."""
        n = self.weyl.twist_element(J, ambient)
        roots: RootSystem = self.weyl.roots
        image = []
        for label in J.labels:
            conj = n * AffWeylElt.finite(roots.simple_reflection(label)) * n.inverse()
            match = [b for b in self.preset.simple_roots if roots.simple_reflection(b) == conj.w]
            if not match:
                raise ValidationError(f"w_K w_J does not carry s_{label} to a simple reflection")
            image.append(match[0])
        return self.preset.subset(image)

    def twist(
        self, J: ParabolicSubset, a: HeckeElt, ambient: Optional[ParabolicSubset] = None
    ) -> HeckeElt:
        """H(M_J) -> H(M_{J^op}), T(w) -> T(n w n⁻¹) with n = w_K w_J."""
        self._require(a, J)
        n = self.weyl.twist_element(J, ambient)
        target = self.opposite(J, ambient)
        n_inv = n.inverse()
        return HeckeElt(target, self.field, {n * x * n_inv: c for x, c in a.coeffs.items()})

    def _require(self, a: HeckeElt, J: ParabolicSubset) -> None:
        if a.levi != J:
            raise ContextMismatchError(f"Element of H(M_{a.levi}) given where H(M_{J}) is expected")

    # ========================================================================
    # CENTRAL ELEMENTS
    # ========================================================================

    def is_central(self, z: HeckeElt) -> bool:
        system = self.weyl.system(z.levi)
        return all(
            self.commutator(z, self.generator(label, z.levi)).is_zero()
            for label in system.generators
        )

    def alcove_walk(self, x: AffWeylElt, system: LeviSystem) -> HeckeElt:
        """
        Product along the reduced word of x of T(s) when the crossed root is
        positive for the current finite part and T*(s) otherwise, times T(ω).
        """
        J = system.J
        result = self.unit(J)
        current = system.identity()
        word = system.reduced_word(x)
        for label in word.letters:
            image = system.roots.act_on_char(current.w, system.crossed_root[label])
            factor = self.generator(label, J)
            if not system.roots.is_positive(image):
                factor = factor - self.unit(J).scale(self.c_s(label))
            result = self.multiply(result, factor)
            current = current * system.reflections[label]
        return self.multiply(result, HeckeElt.monomial(J, self.field, word.omega))

    def find_central(
        self,
        J: ParabolicSubset,
        seed: Optional[Tuple[int, ...]] = None,
        support_bound: Optional[int] = None,
        ambient: Optional[ParabolicSubset] = None,
    ) -> CentralElement:
        """
        Central element of H(M_K) attached to the proper Levi J.

        Solves z·T(γ) = T(γ)·z over elements supported on the Ω-class of t_seed
        up to the support bound, then takes the W₀-orbit sum of alcove walks
        of t_μ and certifies it lies in the solution space and is central.

        Raises:
            NoCentralElementFoundError: empty solution space or orbit outside the support
            VerificationFailureError: the orbit sum fails either certificate
        """
        started = time.time()
        K = self._levi(ambient)
        if not J < K:
            raise ValidationError(f"{J} must be a proper subset of {K}")
        system = self.weyl.system(K)
        seed = tuple(seed) if seed is not None else self.weyl.default_seed(J, K)

        if not any(seed):
            return CentralElement(
                levi=J, ambient=K, seed=seed, elt=self.unit(K), verified=True, solution_dim=1
            )

        t_seed = AffWeylElt.translation(seed)
        bound = support_bound if support_bound is not None else self.support_bound
        if bound is None:
            bound = system.length(t_seed) + self.support_slack

        support = self._class_ball(system, t_seed, bound)
        index = {x: i for i, x in enumerate(support)}
        solutions = self._commutation_nullspace(system, support, index)
        if solutions.shape[0] == 0:
            raise NoCentralElementFoundError(
                f"No central element supported within length {bound} for {J}",
                details={"seed": list(seed), "bound": bound},
            )

        orbit = sorted(
            {AffWeylElt.translation(AffWeylElt.finite(w).act(seed)) for w in system.finite_elements},
            key=system.sort_key,
        )
        z = self.zero(K)
        for t_mu in orbit:
            z = z + self.alcove_walk(t_mu, system)

        outside = [x for x in z.support() if x not in index]
        if outside:
            raise NoCentralElementFoundError(
                f"Central orbit sum for {J} leaves the support bound {bound}",
                details={"seed": list(seed), "bound": bound},
            )
        vector = self.field.Zeros(len(support))
        for x, c in z.items():
            vector[index[x]] = c
        basis, pivots = gf.rref(solutions)
        if not gf.in_span(basis, pivots, vector):
            raise VerificationFailureError(
                f"Orbit sum for {J} is not in the commutation solution space",
                details={"seed": list(seed)},
            )
        if not self.is_central(z):
            raise VerificationFailureError(f"Orbit sum for {J} does not commute with H(M_{K})")

        log_performance(
            logger,
            "find_central",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"levi": J.key(), "support": len(support), "solutions": int(solutions.shape[0])},
        )
        return CentralElement(
            levi=J,
            ambient=K,
            seed=seed,
            elt=z,
            verified=True,
            solution_dim=int(solutions.shape[0]),
        )

    def _class_ball(self, system: LeviSystem, x: AffWeylElt, bound: int) -> List[AffWeylElt]:
        """Elements of length ≤ bound in the Ω-class of x, by length."""
        start = system.reduced_word(x).omega
        seen = {start: 0}
        frontier = [start]
        for depth in range(1, bound + 1):
            nxt = []
            for element in frontier:
                for label in system.reflection_labels:
                    y = system.reflections[label] * element
                    if y not in seen:
                        seen[y] = depth
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=system.sort_key)

    def _commutation_nullspace(
        self, system: LeviSystem, support: List[AffWeylElt], index: Dict[AffWeylElt, int]
    ):
        rows: Dict[Tuple[str, AffWeylElt], int] = {}
        entries: List[Tuple[int, int, object]] = []
        for label in system.generators:
            gamma = self.generator(label, system.J)
            for x in support:
                difference = self.commutator(HeckeElt.monomial(system.J, self.field, x), gamma)
                for y, c in difference.items():
                    row = rows.setdefault((label, y), len(rows))
                    entries.append((row, index[x], c))
        matrix = self.field.Zeros((max(len(rows), 1), len(support)))
        for row, col, c in entries:
            matrix[row, col] += c
        return gf.null_space(matrix)

    def random_element(
        self,
        rng: np.random.Generator,
        J: Optional[ParabolicSubset] = None,
        support_size: int = 4,
        max_length: int = 3,
    ) -> HeckeElt:
        """Random element with support of bounded size drawn from a length ball."""
        J = self._levi(J)
        system = self.weyl.system(J)
        ball = [x for x, d in system.ball(max_length).items()]
        ball.sort(key=system.sort_key)
        picks = rng.choice(len(ball), size=min(support_size, len(ball)), replace=False)
        coeffs = {ball[int(i)]: int(rng.integers(1, self.field.order)) for i in picks}
        return HeckeElt(J, self.field, coeffs)

    def scalar(self, value: Scalar):
        return gf.scalar(self.field, value) if isinstance(value, int) else value
