"""The eight inductions {⊗, Hom} × {+, -} × {θ, θ*} and the isomorphisms among them."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Dict, List, Optional, Tuple

from app.core.config import settings
from app.domain.models.module import HModule
from app.domain.models.root_datum import ParabolicSubset
from app.domain.schemas.reports import EightInductionReport
from app.domain.services.induction_service import InductionService
from app.domain.services.module_service import ModuleService
from app.infrastructure.monitoring.logging_setup import log_performance

logger = logging.getLogger(__name__)

Variant = Tuple[str, str, str]

KINDS = ("tensor", "hom")
SIGNS = ("+", "-")
THETAS = ("theta", "theta*")
VARIANTS: List[Variant] = list(product(KINDS, SIGNS, THETAS))


def variant_name(variant: Variant) -> str:
    return f"({variant[0]},{variant[1]},{variant[2]})"


def _flip_sign(sign: str) -> str:
    return "-" if sign == "+" else "+"


def _flip_theta(theta: str) -> str:
    return "theta*" if theta == "theta" else "theta"


class EightInductionsService:
    """
    Builds the eight induction variants of a module and checks the comparison
    isomorphisms between them by explicit intertwiner search.

    The (-)-variants are constructed directly on the coset basis; a
    (+)-variant of V over J is the (-)-variant of n(V) over J^op, with n the
    twist by w_K w_J.
    """

    def __init__(
        self,
        induction_service: InductionService,
        module_service: ModuleService,
        max_workers: int = settings.MAX_WORKERS,
    ):
        self.induction = induction_service
        self.modules = module_service
        self.hecke = induction_service.hecke
        self.preset = induction_service.preset
        self.max_workers = max_workers

    def build(
        self, variant: Variant, J: ParabolicSubset, V: HModule, ambient: Optional[ParabolicSubset] = None
    ) -> HModule:
        kind, sign, theta = variant
        K = ambient if ambient is not None else self.preset.delta
        if sign == "+":
            twisted = self.modules.twist_module(V, K)
            opposite = self.hecke.opposite(J, K)
            return self.build((kind, "-", theta), opposite, twisted, K)
        star = theta == "theta*"
        if kind == "tensor":
            return self.induction.tensor_variant(J, V, K, star)
        return self.induction.hom_variant(J, V, K, star)

    def build_all(
        self, J: ParabolicSubset, V: HModule, ambient: Optional[ParabolicSubset] = None
    ) -> Dict[Variant, HModule]:
        if self.max_workers > 1:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                futures = {v: pool.submit(self.build, v, J, V, ambient) for v in VARIANTS}
                return {v: future.result() for v, future in futures.items()}
        return {v: self.build(v, J, V, ambient) for v in VARIANTS}

    def equations(
        self,
        J: ParabolicSubset,
        V: HModule,
        built: Dict[Variant, HModule],
        ambient: Optional[ParabolicSubset] = None,
    ) -> Dict[str, bool]:
        """Every comparison isomorphism, labelled `<name>[sign,theta]`."""
        K = ambient if ambient is not None else self.preset.delta
        iota_v = self.modules.iota_twist(V, K)
        dual_v = self.modules.dual(V)
        twisted = self.modules.twist_module(V, K)
        opposite = self.hecke.opposite(J, K)

        def iota(X: HModule) -> HModule:
            return self.modules.iota_twist(X, K)

        iso = self.modules.is_isomorphic
        results: Dict[str, bool] = {}

        for sign, theta in product(SIGNS, THETAS):
            other = _flip_theta(theta)
            tensor = built[("tensor", sign, theta)]
            hom = built[("hom", sign, theta)]
            tag = f"[{sign},{theta}]"
            results[f"nothing{tag}"] = iso(tensor, built[("hom", sign, other)])
            results[f"twist2{tag}"] = iso(
                tensor, self.build(("tensor", _flip_sign(sign), theta), opposite, twisted, K)
            )
            results[f"twist3{tag}"] = iso(
                hom, self.build(("hom", _flip_sign(sign), theta), opposite, twisted, K)
            )
            results[f"inv1{tag}"] = iso(iota(tensor), self.build(("tensor", sign, other), J, iota_v, K))
            results[f"inv2e{tag}"] = iso(iota(hom), self.build(("hom", sign, other), J, iota_v, K))
            results[f"inv3e{tag}"] = iso(iota(tensor), self.build(("hom", sign, theta), J, iota_v, K))
            results[f"dual1{tag}"] = iso(
                self.modules.dual(tensor), self.build(("hom", _flip_sign(sign), theta), J, dual_v, K)
            )
            results[f"dual2{tag}"] = iso(
                self.build(("tensor", sign, theta), J, dual_v, K),
                self.modules.dual(built[("hom", _flip_sign(sign), theta)]),
            )
        return results

    def isomorphism_classes(self, built: Dict[Variant, HModule]) -> List[List[str]]:
        classes: List[List[Variant]] = []
        for variant in VARIANTS:
            for group in classes:
                if self.modules.is_isomorphic(built[group[0]], built[variant]):
                    group.append(variant)
                    break
            else:
                classes.append([variant])
        return [[variant_name(v) for v in group] for group in classes]

    def eight_inductions(
        self, J: ParabolicSubset, V: HModule, ambient: Optional[ParabolicSubset] = None
    ) -> EightInductionReport:
        """
        All eight variants of V with the isomorphism pattern among them.

        The report passes when every comparison isomorphism is exhibited and
        (⊗, ε, η) and (Hom, ε, η*) always fall in the same class.
        """
        started = time.time()
        built = self.build_all(J, V, ambient)
        equations = self.equations(J, V, built, ambient)
        classes = self.isomorphism_classes(built)
        expected = [
            [variant_name(("tensor", sign, theta)), variant_name(("hom", sign, _flip_theta(theta)))]
            for sign, theta in product(SIGNS, THETAS)
        ]
        grouped = all(any(set(pair) <= set(group) for group in classes) for pair in expected)
        failed = [label for label, ok in equations.items() if not ok]
        if failed:
            logger.warning(f"Eight inductions of {V.name} over {J}: failed {failed}")
        log_performance(
            logger,
            "eight_inductions",
            time.time() - started,
            resource=self.preset.name,
            extra_data={"levi": J.key(), "classes": len(classes), "failed": len(failed)},
        )
        return EightInductionReport(
            preset=self.preset.name,
            levi=list(J.labels),
            module=V.name,
            variants={variant_name(v): m.dim for v, m in built.items()},
            equations=equations,
            isomorphism_classes=classes,
            expected_classes=expected,
            passed=grouped and not failed,
        )
