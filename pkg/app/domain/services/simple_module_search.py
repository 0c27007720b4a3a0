"""Exhaustive search for simple modules of bounded dimension by spin normal forms."""

import logging
import time
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.utils import divisors
from app.domain.errors import SizeLimitError
from app.domain.models.module import HModule
from app.domain.models.root_datum import ParabolicSubset
from app.domain.models.weyl import AffWeylElt
from app.domain.services.field_service import FieldService
from app.domain.services.module_service import ModuleService
from app.domain.services.weyl_service import LeviSystem, WeylService
from app.infrastructure.linalg import gf_matrix as gf
from app.infrastructure.linalg.gf_matrix import FieldArray, FieldClass
from app.infrastructure.monitoring.logging_setup import log_performance

logger = logging.getLogger(__name__)

Zeta = Tuple[int, ...]
AcceptCallback = Callable[[LeviSystem, FieldClass, Zeta, int], bool]


class SpinPlan:
    """
    Spinning data of a Levi system: Ω-orbit representatives of the affine
    reflections, the conjugations recovering the other reflections, and the
    order m_u of each Ω generator on the reflections (u^{m_u} is central).
    """

    def __init__(self, system: LeviSystem):
        self.system = system
        self.representatives: List[str] = []
        self.derived: Dict[str, Tuple[str, str]] = {}
        reached: set = set()
        for s in system.reflection_labels:
            if s in reached:
                continue
            self.representatives.append(s)
            reached.add(s)
            frontier = [s]
            while frontier:
                current = frontier.pop(0)
                for u in system.omega_labels:
                    image = system.omega_action[u][current]
                    if image not in reached:
                        reached.add(image)
                        self.derived[image] = (u, current)
                        frontier.append(image)
        self.omega = list(system.omega_labels)
        self.orders: Dict[str, int] = dict(system.omega_order)
        self.generators: List[str] = self.representatives + self.omega


class SimpleModuleSearchService:
    """
    Simple H(M_J)-modules over F_q of dimension at most a bound, up to isomorphism.

    The central elements T(u)^{m_u} act on a simple module Y over K by
    scalars ζ_u; K = F_q(ζ) has some degree e over F_q and every simple module
    over F_q is the restriction of scalars of such a Y. For each ζ up to
    Frobenius, the candidates over K are enumerated as spin normal forms: the
    standard basis spun from an eigenvector of the first reflection, with
    every image either a new basis vector or a combination of the basis so
    far. The quadratic relation and u^{m_u} = ζ_u force many slots; partial
    relation checks prune the rest.
    """

    def __init__(
        self,
        weyl_service: WeylService,
        module_service: ModuleService,
        field_service: FieldService,
        max_dim_bound: int = settings.MAX_DIM_BOUND,
    ):
        self.weyl = weyl_service
        self.modules = module_service
        self.fields = field_service
        self.hecke = module_service.hecke
        self.max_dim_bound = max_dim_bound

    # ========================================================================
    # CENTRAL CHARACTERS
    # ========================================================================

    def central_characters(self, plan: SpinPlan, p: int, k: int, e: int) -> Iterator[Zeta]:
        """
        Integer tuples ζ over F_{p^{ke}} generating it over F_{p^k}, one per
        orbit of x -> x^{p^k}.
        """
        if not plan.omega:
            if e == 1:
                yield ()
            return
        big = self.fields.field(p, k * e)
        frobenius = self.fields.frobenius_table(big, k)
        masks = [self.fields.subfield_mask(big, k * d) for d in divisors(e) if d < e]
        for zeta in product(range(1, big.order), repeat=len(plan.omega)):
            if any(all(mask[z] for z in zeta) for mask in masks):
                continue
            orbit = [zeta]
            for _ in range(e - 1):
                orbit.append(tuple(int(frobenius[z]) for z in orbit[-1]))
            if zeta == min(orbit):
                yield zeta

    def central_value(self, plan: SpinPlan, zeta: Sequence[FieldArray], x: AffWeylElt) -> Optional[FieldArray]:
        """
        Scalar by which a length-zero x ∈ W_J acts when x is a product of the
        central powers u^{m_u}; None when it is not.
        """
        system = plan.system
        if system.length(x) != 0:
            return None
        coords = system.omega_coordinates(x)
        value = None
        for u, c, z in zip(plan.omega, coords, zeta):
            if c % plan.orders[u]:
                return None
            term = z ** (c // plan.orders[u])
            value = term if value is None else value * term
        return value

    # ========================================================================
    # SPIN NORMAL FORMS
    # ========================================================================

    def spin_normal_forms(
        self, levi: ParabolicSubset, field: FieldClass, n: int, zeta: Sequence[FieldArray]
    ) -> Iterator[HModule]:
        """Every normal form of dimension n over `field` satisfying the relations."""
        plan = SpinPlan(self.weyl.system(levi))
        scalars = {u: z for u, z in zip(plan.omega, zeta)}
        first = plan.representatives[0] if plan.representatives else None
        eigenvalues = [0, self.hecke.c_s(first)] if first is not None else [0]
        for eigenvalue in eigenvalues:
            search = _SpinSearch(self, plan, field, n, scalars)
            yield from search.run(first, gf.scalar(field, eigenvalue))

    def _materialize(
        self, plan: SpinPlan, field: FieldClass, rows: Dict[str, List[FieldArray]], name: str
    ) -> Optional[HModule]:
        action: Dict[str, FieldArray] = {g: field(np.vstack([np.asarray(r) for r in rows[g]])) for g in plan.generators}
        for u in plan.omega:
            if not gf.is_invertible(action[u]):
                return None
        inverses = {u: np.linalg.inv(action[u]) for u in plan.omega}
        pending = dict(plan.derived)
        while pending:
            for image, (u, s) in list(pending.items()):
                if s in action:
                    action[image] = action[u] @ action[s] @ inverses[u]
                    del pending[image]
        system = plan.system
        module = HModule(system.J, field, action, system.generators, name)
        if not self.modules.check_relations(module).passed:
            return None
        return module

    # ========================================================================
    # SEARCH
    # ========================================================================

    def search(
        self,
        J: ParabolicSubset,
        field: FieldClass,
        dim_bound: int,
        accept: Optional[AcceptCallback] = None,
    ) -> List[HModule]:
        """
        All simple H(M_J)-modules over `field` of dimension ≤ dim_bound, up to isomorphism.

        `accept(system, K, ζ, dim)` may reject a central character before
        its normal forms are spun; dim is the dimension over F_q.

        Raises:
            SizeLimitError: dim_bound above the configured search bound
        """
        if dim_bound > self.max_dim_bound:
            raise SizeLimitError(f"Dimension bound {dim_bound} exceeds the search bound", limit=self.max_dim_bound)
        started = time.time()
        plan = SpinPlan(self.weyl.system(J))
        p, k = int(field.characteristic), int(field.degree)
        found: List[HModule] = []
        candidates = 0
        for d in range(1, dim_bound + 1):
            for e in divisors(d):
                try:
                    big = self.fields.field(p, k * e)
                except SizeLimitError:
                    logger.warning(f"Skipping central characters of degree {e} over F_{p}^{k}: field too large")
                    continue
                for zeta in self.central_characters(plan, p, k, e):
                    if accept is not None and not accept(plan.system, big, zeta, d):
                        continue
                    values = [big(z) for z in zeta]
                    same_zeta: List[HModule] = []
                    for Y in self.spin_normal_forms(J, big, d // e, values):
                        candidates += 1
                        X = self.modules.restrict_scalars(Y, k) if e > 1 else Y
                        if not self.modules.is_simple(X):
                            continue
                        if any(self.modules.is_isomorphic(X, other) for other in same_zeta):
                            continue
                        same_zeta.append(X)
                    for X in same_zeta:
                        found.append(X.renamed(f"S{len(found) + 1}[{J.key()}]"))
        log_performance(
            logger,
            "simple_module_search",
            time.time() - started,
            resource=self.weyl.preset.name,
            extra_data={"levi": J.key(), "q": field.order, "bound": dim_bound, "candidates": candidates, "found": len(found)},
        )
        return found


class _SpinSearch:
    """One backtracking pass over the slots (basis vector, spinning generator)."""

    def __init__(
        self,
        owner: SimpleModuleSearchService,
        plan: SpinPlan,
        field: FieldClass,
        n: int,
        scalars: Dict[str, FieldArray],
    ):
        self.owner = owner
        self.plan = plan
        self.field = field
        self.n = n
        self.scalars = scalars
        self.gens = plan.generators
        self.rows: Dict[str, List[Optional[FieldArray]]] = {g: [None] * n for g in self.gens}
        self.count = 0
        # per Ω generator: b_j = b_root · u^depth
        self.root: Dict[str, List[int]] = {u: [0] * n for u in plan.omega}
        self.depth: Dict[str, List[int]] = {u: [0] * n for u in plan.omega}
        self.coefficient = {
            s: gf.scalar(field, owner.hecke.c_s(s)) for s in plan.representatives
        }

    def _unit(self, j: int, scale: Optional[FieldArray] = None) -> FieldArray:
        row = self.field.Zeros(self.n)
        row[j] = scale if scale is not None else 1
        return row

    def _create(self, source: Optional[int], via: Optional[str]) -> List[Tuple[str, int]]:
        """Adds basis vector b_count = b_source · via; returns the forced slots set."""
        j = self.count
        self.count += 1
        forced: List[Tuple[str, int]] = []
        if via in self.coefficient:
            self.rows[via][j] = self._unit(j, self.coefficient[via])
            forced.append((via, j))
        for u in self.plan.omega:
            if via == u and source is not None:
                self.root[u][j] = self.root[u][source]
                self.depth[u][j] = self.depth[u][source] + 1
            else:
                self.root[u][j] = j
                self.depth[u][j] = 0
            if self.depth[u][j] == self.plan.orders[u] - 1:
                self.rows[u][j] = self._unit(self.root[u][j], self.scalars[u])
                forced.append((u, j))
        return forced

    def _undo(self, forced: List[Tuple[str, int]]) -> None:
        for g, j in forced:
            self.rows[g][j] = None
        self.count -= 1

    def _apply(self, g: str, v: FieldArray) -> Optional[FieldArray]:
        total = self.field.Zeros(self.n)
        for j in np.flatnonzero(np.asarray(v)):
            row = self.rows[g][j]
            if row is None:
                return None
            total = total + v[j] * row
        return total

    def _consistent(self) -> bool:
        for s in self.plan.representatives:
            for row in self.rows[s]:
                if row is None:
                    continue
                image = self._apply(s, row)
                if image is not None and not np.array_equal(image, self.coefficient[s] * row):
                    return False
        for u in self.plan.omega:
            m = self.plan.orders[u]
            for i, row in enumerate(self.rows[u]):
                if row is None or i >= self.count:
                    continue
                image: Optional[FieldArray] = row
                for _ in range(m - 1):
                    image = self._apply(u, image)
                    if image is None:
                        break
                if image is not None and not np.array_equal(image, self._unit(i, self.scalars[u])):
                    return False
        return True

    def run(self, first: Optional[str], eigenvalue: FieldArray) -> Iterator[HModule]:
        self._create(None, None)
        if first is not None:
            self.rows[first][0] = self._unit(0, eigenvalue)
        if self._consistent():
            yield from self._step(0)

    def _step(self, position: int) -> Iterator[HModule]:
        i, g_index = divmod(position, len(self.gens))
        if i >= self.n or not self.gens:
            if self.count == self.n:
                module = self.owner._materialize(self.plan, self.field, self.rows, "spin")
                if module is not None:
                    yield module
            return
        if i >= self.count:
            return
        g = self.gens[g_index]
        if self.rows[g][i] is not None:
            yield from self._step(position + 1)
            return
        for coeffs in product(range(self.field.order), repeat=self.count):
            row = self.field.Zeros(self.n)
            row[: self.count] = self.field(list(coeffs))
            self.rows[g][i] = row
            if self._consistent():
                yield from self._step(position + 1)
        self.rows[g][i] = None
        if self.count < self.n:
            j = self.count
            self.rows[g][i] = self._unit(j)
            forced = self._create(i, g)
            if self._consistent():
                yield from self._step(position + 1)
            self._undo(forced)
            self.rows[g][i] = None
