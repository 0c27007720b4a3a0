"""
Shared test fixtures and data factories.

Containers are module-scoped: building the Levi systems of a preset is the
expensive part and the services are deterministic for a fixed seed.
"""

from typing import Dict, Optional, Sequence

import pytest

from app.domain.models.hecke import HeckeElt
from app.domain.models.module import HModule
from app.domain.models.root_datum import ParabolicSubset
from app.infrastructure.container import ServiceContainer
from app.infrastructure.linalg.gf_matrix import FieldClass


# ============================================================================
# PYTEST FIXTURES
# ============================================================================

@pytest.fixture(scope="module")
def sl2() -> ServiceContainer:
    """SL(2) with residue field F_2: trivial Ω, two affine reflections."""
    return ServiceContainer("SL2_Q2", max_workers=1)


@pytest.fixture(scope="module")
def gl2() -> ServiceContainer:
    """GL(2) with residue field F_2: one affine reflection and u of order 2."""
    return ServiceContainer("GL2_Q2", max_workers=1)


@pytest.fixture(scope="module")
def gl3() -> ServiceContainer:
    """GL(3) with residue field F_2: three affine reflections and u of order 3."""
    return ServiceContainer("GL3_Q2", max_workers=1)


@pytest.fixture(scope="module")
def f2(sl2: ServiceContainer) -> FieldClass:
    return sl2.field_service.field(2, 1)


@pytest.fixture(scope="module")
def f4(sl2: ServiceContainer) -> FieldClass:
    return sl2.field_service.field(2, 2)


# ============================================================================
# DATA FACTORIES
# ============================================================================

class LeviFactory:
    """Factory for parabolic subsets."""

    @staticmethod
    def create(container: ServiceContainer, labels: Sequence[str] = ()) -> ParabolicSubset:
        return container.preset.subset(labels)

    @staticmethod
    def empty(container: ServiceContainer) -> ParabolicSubset:
        return container.preset.subset(())

    @staticmethod
    def full(container: ServiceContainer) -> ParabolicSubset:
        return container.preset.delta


class CharacterFactory:
    """Factory for one-dimensional modules."""

    @staticmethod
    def create(
        container: ServiceContainer,
        field: FieldClass,
        labels: Sequence[str] = (),
        values: Optional[Dict[str, int]] = None,
        kind: str = "trivial",
    ) -> HModule:
        """
        A character of H(M_J). `values` overrides single generators of the
        trivial (kind="trivial") or sign (kind="sign") character.
        """
        modules = container.get_module_service()
        J = container.preset.subset(labels)
        base = modules.trivial_character(J, field) if kind == "trivial" else modules.sign_character(J, field)
        if not values:
            return base
        action = {g: [[int(base.action[g][0, 0])]] for g in base.generators}
        action.update({g: [[v]] for g, v in values.items()})
        return modules.build_module(J, field, action, name=f"{kind}*")


class ModuleFactory:
    """Factory for modules built from generator matrices or by induction."""

    @staticmethod
    def create(
        container: ServiceContainer,
        field: FieldClass,
        action: Dict[str, object],
        labels: Sequence[str] = (),
        name: str = "M",
    ) -> HModule:
        return container.get_module_service().build_module(
            container.preset.subset(labels), field, action, name
        )

    @staticmethod
    def induced_trivial(
        container: ServiceContainer, field: FieldClass, labels: Sequence[str] = ()
    ) -> HModule:
        """Ind_J^G of the trivial character of H(M_J)."""
        V = CharacterFactory.create(container, field, labels)
        return container.get_induction_service().induce(V.levi, V).carrier


class HeckeEltFactory:
    """Factory for Hecke algebra elements over the prime field."""

    @staticmethod
    def create(
        container: ServiceContainer,
        word: Sequence[str] = (),
        labels: Optional[Sequence[str]] = None,
        coeff: int = 1,
    ) -> HeckeElt:
        """coeff·T(x) for x given by a word in the generators of H(M_J)."""
        hecke = container.get_hecke_service()
        J = container.preset.delta if labels is None else container.preset.subset(labels)
        system = container.weyl_service.system(J)
        x = system.identity()
        for letter in word:
            x = x * system.generator(letter)
        return hecke.basis_T(x, J).scale(coeff)
