"""Extended affine Weyl groups of Levi subgroups: length, reduced words, Ω, cosets."""

import logging
import time
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.domain.errors import (
    ElementNotInLeviError,
    NoCentralElementFoundError,
    PresetError,
    ValidationError,
)
from app.domain.models.root_datum import ParabolicSubset, RootDatumPreset
from app.domain.models.weyl import AffWeylElt, CosetReps, Matrix
from app.domain.services.root_data_service import Root, RootSystem, dot
from app.infrastructure.monitoring.logging_setup import log_performance

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
MAX_BRAID_ORDER = 12


class ReducedWord(NamedTuple):
    """x = s_1 ... s_l · omega with l = length(x) and omega of length zero."""

    letters: Tuple[str, ...]
    omega: AffWeylElt
    omega_coords: Tuple[int, ...]


def finite_label(label: str) -> str:
    return f"s_{label}"


def affine_label(theta_support: Sequence[str]) -> str:
    return "s0_" + "+".join(theta_support)


class LeviSystem:
    """
    The extended affine Weyl group W_J = Λ ⋊ W_{0,J} of the Levi attached to J.

    Generators of H(M_J) are the affine simple reflections (one affine reflection
    per irreducible component of J, then the finite simple reflections) and the
    generators u_i of the length-zero subgroup Ω_J.
    """

    def __init__(self, roots: RootSystem, J: ParabolicSubset, omega_radius: int):
        self.roots = roots
        self.preset: RootDatumPreset = roots.preset
        self.J = J
        self.rank = roots.rank
        self.positive: List[Root] = [r for r in roots.positive if roots.supported_on(r, J.labels)]
        self.finite_elements: List[Matrix] = roots.finite_group(J.labels)
        self._finite_set = set(self.finite_elements)
        self._length_cache: Dict[AffWeylElt, int] = {}
        self._word_cache: Dict[AffWeylElt, ReducedWord] = {}

        self.reflections: Dict[str, AffWeylElt] = {}
        self.crossed_root: Dict[str, Vector] = {}
        self.components: List[Tuple[str, ...]] = self._components()
        for component in self.components:
            theta = max(
                (r for r in self.positive if roots.supported_on(r, component)),
                key=lambda r: (r.height, r.coords),
            )
            support = tuple(a for i, a in enumerate(roots.simple) if theta.coords[i])
            label = affine_label(support)
            self.reflections[label] = AffWeylElt(theta.coroot, roots.reflection(theta))
            self.crossed_root[label] = tuple(-c for c in theta.char)
        for a in J.labels:
            label = finite_label(a)
            self.reflections[label] = AffWeylElt.finite(roots.simple_reflection(a))
            self.crossed_root[label] = tuple(roots.simple_root(a).char)
        self.reflection_labels: List[str] = list(self.reflections)
        self.affine_labels = [label for label in self.reflection_labels if label.startswith("s0_")]
        self.finite_labels = [label for label in self.reflection_labels if not label.startswith("s0_")]

        self._build_omega(omega_radius)
        self.generators: List[str] = self.reflection_labels + self.omega_labels
        self.braid_orders = self._braid_orders()

    # ========================================================================
    # STRUCTURE
    # ========================================================================

    def _components(self) -> List[Tuple[str, ...]]:
        labels = list(self.J.labels)
        components: List[Tuple[str, ...]] = []
        seen: set = set()
        for start in labels:
            if start in seen:
                continue
            stack, part = [start], []
            seen.add(start)
            while stack:
                a = stack.pop()
                part.append(a)
                for b in labels:
                    if b not in seen and self.preset.pairing(a, b) != 0:
                        seen.add(b)
                        stack.append(b)
            components.append(tuple(x for x in labels if x in part))
        return components

    def _build_omega(self, radius: int) -> None:
        """Unimodular completion of the coroots of J and length-zero lifts of its vectors."""
        rows = [list(self.preset.coroots[a]) for a in self.J.labels]
        basis: List[List[int]] = []
        for i in range(self.rank):
            if len(rows) + len(basis) == self.rank:
                break
            candidate = [int(i == j) for j in range(self.rank)]
            if np.linalg.matrix_rank(np.array(rows + basis + [candidate])) > len(rows) + len(basis):
                basis.append(candidate)
        full = np.array(rows + basis, dtype=float).reshape(self.rank, self.rank)
        det = int(round(np.linalg.det(full)))
        if abs(det) != 1:
            raise PresetError(
                f"No unimodular completion of the coroots of {self.J}; Ω cannot be presented",
                self.preset.name,
            )
        self._coordinate_matrix = np.rint(np.linalg.inv(full)).astype(np.int64)
        self._n_coroots = len(rows)

        self.omega: Dict[str, AffWeylElt] = {}
        for index, vector in enumerate(basis, start=1):
            self.omega[f"u{index}"] = self._lift(tuple(vector), radius)
        self.omega_labels: List[str] = list(self.omega)

        self.omega_action: Dict[str, Dict[str, str]] = {}
        self.omega_order: Dict[str, int] = {}
        for u, element in self.omega.items():
            action = {}
            for s, reflection in self.reflections.items():
                image = element * reflection * element.inverse()
                match = [t for t, other in self.reflections.items() if other == image]
                if not match:
                    raise PresetError(f"{u} does not normalize the affine reflections", self.preset.name)
                action[s] = match[0]
            self.omega_action[u] = action
            self.omega_order[u] = _permutation_order(action)

    def _lift(self, vector: Vector, radius: int) -> AffWeylElt:
        coroots = [self.preset.coroots[a] for a in self.J.labels]
        shifts = sorted(
            product(range(-radius, radius + 1), repeat=len(coroots)),
            key=lambda c: (sum(abs(x) for x in c), c),
        )
        for shift in shifts:
            lam = tuple(
                v + sum(c * coroot[i] for c, coroot in zip(shift, coroots))
                for i, v in enumerate(vector)
            )
            for w in self.finite_elements:
                candidate = AffWeylElt(lam, w)
                if self.length(candidate) == 0:
                    return candidate
        raise PresetError(f"No length-zero lift of {vector} within radius {radius}", self.preset.name)

    def _braid_orders(self) -> Dict[Tuple[str, str], Optional[int]]:
        orders: Dict[Tuple[str, str], Optional[int]] = {}
        labels = self.reflection_labels
        for i, s in enumerate(labels):
            for t in labels[i + 1:]:
                st = self.reflections[s] * self.reflections[t]
                power = st
                order: Optional[int] = None
                for m in range(1, MAX_BRAID_ORDER + 1):
                    if power.is_identity():
                        order = m
                        break
                    power = power * st
                orders[(s, t)] = order
        return orders

    # ========================================================================
    # ELEMENTS
    # ========================================================================

    def contains(self, x: AffWeylElt) -> bool:
        return x.w in self._finite_set

    def identity(self) -> AffWeylElt:
        return AffWeylElt.identity(self.rank)

    def pairing(self, lam: Vector, root_char: Vector) -> int:
        return dot(lam, root_char)

    def length(self, x: AffWeylElt) -> int:
        """ℓ_J(t_λ w) = Σ_{α>0, w⁻¹α>0} |<λ,α>| + Σ_{α>0, w⁻¹α<0} |<λ,α> - 1|."""
        cached = self._length_cache.get(x)
        if cached is not None:
            return cached
        total = 0
        for root in self.positive:
            pair = dot(x.lam, root.char)
            image = RootSystem.act_on_char_inverse(x.w, root.char)
            if self.roots.is_positive(image):
                total += abs(pair)
            else:
                total += abs(pair - 1)
        self._length_cache[x] = total
        return total

    def omega_coordinates(self, x: AffWeylElt) -> Tuple[int, ...]:
        """Coordinates of the class of x in Ω_J ≅ Λ / ZΦ_J∨."""
        coords = np.array(x.lam, dtype=np.int64) @ self._coordinate_matrix
        return tuple(int(c) for c in coords[self._n_coroots:])

    def omega_element(self, coords: Sequence[int]) -> AffWeylElt:
        result = self.identity()
        for u, exponent in zip(self.omega_labels, coords):
            result = result * (self.omega[u] ** int(exponent))
        return result

    def reduced_word(self, x: AffWeylElt) -> ReducedWord:
        """
        Canonical reduced expression, taking the first left descent in generator
        order at each step.

        Raises:
            ElementNotInLeviError: x is not in W_J
        """
        cached = self._word_cache.get(x)
        if cached is not None:
            return cached
        if not self.contains(x):
            raise ElementNotInLeviError(f"{x} is not in W of {self.J}")
        letters: List[str] = []
        current = x
        current_length = self.length(current)
        while current_length > 0:
            for label in self.reflection_labels:
                candidate = self.reflections[label] * current
                candidate_length = self.length(candidate)
                if candidate_length < current_length:
                    letters.append(label)
                    current, current_length = candidate, candidate_length
                    break
            else:
                raise PresetError(f"No descent found for {x}", self.preset.name)
        word = ReducedWord(tuple(letters), current, self.omega_coordinates(current))
        self._word_cache[x] = word
        return word

    def from_word(self, letters: Sequence[str], omega_coords: Sequence[int] = ()) -> AffWeylElt:
        result = self.identity()
        for label in letters:
            result = result * self.reflections[label]
        if omega_coords:
            result = result * self.omega_element(omega_coords)
        return result

    def generator(self, label: str) -> AffWeylElt:
        if label in self.reflections:
            return self.reflections[label]
        if label in self.omega:
            return self.omega[label]
        raise ValidationError(f"Unknown generator {label} for {self.J}")

    def finite_word(self, w: Matrix) -> Tuple[str, ...]:
        """Reduced word of a finite Weyl element in the finite simple reflections."""
        letters: List[str] = []
        current = AffWeylElt.finite(w)
        while not current.is_identity():
            for label in self.finite_labels:
                candidate = self.reflections[label] * current
                if self.roots.inversions(candidate.w, self.J.labels) < self.roots.inversions(
                    current.w, self.J.labels
                ):
                    letters.append(label)
                    current = candidate
                    break
            else:
                raise ElementNotInLeviError(f"{w} is not in W_0 of {self.J}")
        return tuple(letters)

    def sort_key(self, x: AffWeylElt) -> Tuple:
        word = self.reduced_word(x)
        return (len(word.letters), word.letters, word.omega_coords)

    def longest_finite(self) -> AffWeylElt:
        w = max(self.finite_elements, key=lambda m: self.roots.inversions(m, self.J.labels))
        return AffWeylElt.finite(w)

    def ball(self, radius: int, omega_window: int = 1) -> Dict[AffWeylElt, int]:
        """
        Breadth-first distances on the Cayley graph with affine reflections
        (weight 1) and Ω (weight 0), from a window of Ω elements.
        """
        distances: Dict[AffWeylElt, int] = {}
        starts = [
            self.omega_element(c)
            for c in product(range(-omega_window, omega_window + 1), repeat=len(self.omega_labels))
        ]
        frontier = []
        for start in starts:
            if start not in distances:
                distances[start] = 0
                frontier.append(start)
        for depth in range(1, radius + 1):
            nxt = []
            for element in frontier:
                for label in self.reflection_labels:
                    y = self.reflections[label] * element
                    if y not in distances:
                        distances[y] = depth
                        nxt.append(y)
            frontier = nxt
        return distances


def _permutation_order(action: Dict[str, str]) -> int:
    order = 1
    for start in action:
        cycle, current = 1, action[start]
        while current != start:
            current = action[current]
            cycle += 1
        order = int(np.lcm(order, cycle))
    return order


class WeylService:
    """
    Affine Weyl group combinatorics for one preset.

    Responsibilities:
    - Levi systems W_J for every J in Δ (cached)
    - Length, reduced words and longest elements
    - Minimal coset representatives relative to an ambient Levi
    - M-positive and M-negative cones, deep central translations, central seeds
    """

    def __init__(
        self,
        roots: RootSystem,
        omega_radius: int = settings.OMEGA_LIFT_RADIUS,
        translation_box: int = settings.DEEP_TRANSLATION_BOX,
    ):
        self.roots = roots
        self.preset = roots.preset
        self.omega_radius = omega_radius
        self.translation_box = translation_box
        self._systems: Dict[ParabolicSubset, LeviSystem] = {}
        self._reps: Dict[Tuple[ParabolicSubset, ParabolicSubset], CosetReps] = {}
        self._check_declared_omega()

    def _check_declared_omega(self) -> None:
        declared = self.preset.omega_action
        computed = self.system().omega_action
        if declared and declared != computed:
            raise PresetError(
                f"Declared Ω action {declared} differs from the computed {computed}",
                self.preset.name,
            )

    def system(self, J: Optional[ParabolicSubset] = None) -> LeviSystem:
        J = J if J is not None else self.preset.delta
        if J not in self._systems:
            self._systems[J] = LeviSystem(self.roots, J, self.omega_radius)
            logger.debug(
                f"Levi system {J} of {self.preset.name}: generators {self._systems[J].generators}"
            )
        return self._systems[J]

    def _ambient(self, J: ParabolicSubset, ambient: Optional[ParabolicSubset]) -> ParabolicSubset:
        K = ambient if ambient is not None else self.preset.delta
        if not J <= K:
            raise ValidationError(f"{J} is not contained in {K}")
        return K

    def length(self, x: AffWeylElt, J: Optional[ParabolicSubset] = None) -> int:
        return self.system(J).length(x)

    def reduced_word(self, x: AffWeylElt, J: Optional[ParabolicSubset] = None) -> ReducedWord:
        return self.system(J).reduced_word(x)

    def longest_element(self, J: ParabolicSubset) -> AffWeylElt:
        return self.system(J).longest_finite()

    def min_coset_reps(
        self, J: ParabolicSubset, ambient: Optional[ParabolicSubset] = None
    ) -> CosetReps:
        """Minimal-length representatives d of W_{0,J}\\W_{0,K}: no left descent in J."""
        K = self._ambient(J, ambient)
        key = (J, K)
        if key not in self._reps:
            system = self.system(K)
            finite_reflections = [
                AffWeylElt.finite(self.roots.simple_reflection(a)) for a in J.labels
            ]
            reps = []
            for w in system.finite_elements:
                d = AffWeylElt.finite(w)
                if all(system.length(s * d) > system.length(d) for s in finite_reflections):
                    reps.append(d)
            reps.sort(key=system.sort_key)
            self._reps[key] = CosetReps(levi=J, ambient=K, reps=tuple(reps))
        return self._reps[key]

    def split_coset(
        self, x: AffWeylElt, J: ParabolicSubset, ambient: Optional[ParabolicSubset] = None
    ) -> Tuple[AffWeylElt, AffWeylElt]:
        """x = m·d with m in W_J and d a minimal coset representative."""
        levi = self.system(J)
        for d in self.min_coset_reps(J, ambient).reps:
            m = x * d.inverse()
            if levi.contains(m):
                return m, d
        raise ElementNotInLeviError(f"{x} is not in W of {ambient}")

    def _cone_pairings(
        self, x: AffWeylElt, J: ParabolicSubset, ambient: Optional[ParabolicSubset]
    ) -> List[int]:
        K = self._ambient(J, ambient)
        if not self.system(J).contains(x):
            raise ElementNotInLeviError(f"{x} is not in W of {J}")
        inner = set(self.system(J).positive)
        return [dot(x.lam, r.char) for r in self.system(K).positive if r not in inner]

    def is_M_positive(
        self, x: AffWeylElt, J: ParabolicSubset, ambient: Optional[ParabolicSubset] = None
    ) -> bool:
        """<λ, α> ≥ 0 for every α in Φ_K⁺ outside Φ_J⁺."""
        return all(v >= 0 for v in self._cone_pairings(x, J, ambient))

    def is_M_negative(
        self, x: AffWeylElt, J: ParabolicSubset, ambient: Optional[ParabolicSubset] = None
    ) -> bool:
        return all(v <= 0 for v in self._cone_pairings(x, J, ambient))

    def twist_element(
        self, J: ParabolicSubset, ambient: Optional[ParabolicSubset] = None
    ) -> AffWeylElt:
        """n = w_K w_J, which conjugates W_J onto W_{J^op}."""
        K = self._ambient(J, ambient)
        return self.longest_element(K) * self.longest_element(J)

    def deep_translation(
        self, J: ParabolicSubset, ambient: Optional[ParabolicSubset] = None
    ) -> Vector:
        """
        The smallest a in Λ with <a,α> = 0 on J and <a,α> < 0 on K∖J, found in a box.

        t_a is central of length zero in W_J and strictly M-negative.
        """
        K = self._ambient(J, ambient)
        box = range(-self.translation_box, self.translation_box + 1)
        inside = [self.roots.simple_root(a).char for a in J.labels]
        outside = [self.roots.simple_root(a).char for a in K.labels if a not in J]
        best: Optional[Tuple] = None
        for a in product(box, repeat=self.roots.rank):
            if any(dot(a, r) != 0 for r in inside):
                continue
            if any(dot(a, r) >= 0 for r in outside):
                continue
            key = (sum(-dot(a, r) for r in outside), sum(abs(v) for v in a), a)
            if best is None or key < best:
                best = key
        if best is None:
            raise NoCentralElementFoundError(
                f"No deep central translation for {J} in {K} within box {self.translation_box}"
            )
        return best[2]

    def default_seed(
        self, J: ParabolicSubset, ambient: Optional[ParabolicSubset] = None
    ) -> Vector:
        """Smallest λ in ZΦ_K∨ with <λ,α> = 0 on J and > 0 on K∖J, unless the preset fixes one."""
        K = self._ambient(J, ambient)
        if K == self.preset.delta and J.key() in self.preset.central_seeds:
            return tuple(self.preset.central_seeds[J.key()])
        if J == K:
            return (0,) * self.roots.rank
        coroots = [self.preset.coroots[a] for a in K.labels]
        inside = [self.roots.simple_root(a).char for a in J.labels]
        outside = [self.roots.simple_root(a).char for a in K.labels if a not in J]
        box = range(-2 * self.translation_box, 2 * self.translation_box + 1)
        best: Optional[Tuple] = None
        for coeffs in product(box, repeat=len(coroots)):
            lam = tuple(
                sum(c * coroot[i] for c, coroot in zip(coeffs, coroots))
                for i in range(self.roots.rank)
            )
            if any(dot(lam, r) != 0 for r in inside) or any(dot(lam, r) <= 0 for r in outside):
                continue
            key = (sum(dot(lam, r) for r in outside), sum(abs(v) for v in lam), lam)
            if best is None or key < best:
                best = key
        if best is None:
            raise NoCentralElementFoundError(f"No central seed for {J} in {K}")
        return best[2]

    def length_oracle(self, radius: int = settings.LENGTH_ORACLE_RADIUS) -> List[Tuple[AffWeylElt, int, int]]:
        """Elements of the BFS ball whose formula length differs from graph distance."""
        started = time.time()
        system = self.system()
        ball = system.ball(radius)
        mismatches = [(x, system.length(x), d) for x, d in ball.items() if system.length(x) != d]
        log_performance(
            logger,
            "length_oracle",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"elements": len(ball), "mismatches": len(mismatches)},
        )
        return mismatches
