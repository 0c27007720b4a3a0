"""Unit tests for InductionService: induction, adjoints, Steinberg modules and triples."""

import numpy as np
import pytest

from app.domain.errors import InvalidTripleError, KNotWithinPVError
from app.infrastructure.container import ServiceContainer
from app.infrastructure.linalg import gf_matrix as gf
from tests._fixtures import CharacterFactory, LeviFactory, ModuleFactory, f2, f4, gl2, gl3, sl2


def unramified_character(container: ServiceContainer, field):
    """Character of the Iwahori torus algebra with t_1 acting by a primitive element."""
    empty = LeviFactory.empty(container)
    return container.get_module_service().character(
        empty, field, {"u1": int(field.primitive_element)}, name="chi_g"
    )


class TestInduce:
    """Ind and coinduction."""

    def test_dimension_is_coset_count(self, gl3: ServiceContainer, f2):
        induction = gl3.get_induction_service()
        for labels, expected in [((), 6), (("alpha",), 3), (("beta",), 3)]:
            V = CharacterFactory.create(gl3, f2, labels)
            induced = induction.induce(V.levi, V)
            assert induced.dim == expected
            assert gl3.get_module_service().check_relations(induced.carrier).passed

    def test_induction_from_the_whole_group_is_identity(self, sl2: ServiceContainer, f2):
        V = CharacterFactory.create(sl2, f2, ("alpha",))
        induced = sl2.get_induction_service().induce(V.levi, V)
        assert sl2.get_module_service().is_isomorphic(induced.carrier, V)

    def test_coinduce_has_same_dimension(self, gl2: ServiceContainer, f2):
        V = CharacterFactory.create(gl2, f2)
        induction = gl2.get_induction_service()
        assert induction.coinduce(V.levi, V).dim == induction.induce(V.levi, V).dim == 2

    def test_gl3_induced_trivial_lattice(self, gl3: ServiceContainer, f2):
        modules = gl3.get_module_service()
        induced = ModuleFactory.induced_trivial(gl3, f2)
        assert len(modules.composition_series(induced)) == 4
        assert modules.submodule_lattice(induced).size == 6

    def test_induction_over_larger_field(self, sl2: ServiceContainer, f4):
        V = unramified_character(sl2, f4)
        induced = sl2.get_induction_service().induce(V.levi, V).carrier
        assert induced.dim == 2
        assert sl2.get_module_service().is_simple(induced)


class TestAdjoints:
    """Left and right adjoints of induction."""

    def test_left_adjoint_recovers_module(self, gl2: ServiceContainer, f2):
        induction = gl2.get_induction_service()
        V = CharacterFactory.create(gl2, f2)
        unit = induction.adjoint_L(V.levi, induction.induce(V.levi, V).carrier)
        assert gl2.get_module_service().is_isomorphic(unit, V)

    def test_right_adjoint_of_induced(self, sl2: ServiceContainer, f2):
        induction = sl2.get_induction_service()
        V = CharacterFactory.create(sl2, f2)
        right = induction.adjoint_R(V.levi, induction.induce(V.levi, V).carrier)
        assert right.dim >= 1
        assert sl2.get_module_service().check_relations(right).passed

    def test_adjoints_of_supersingular_character_vanish(self, sl2: ServiceContainer, f2):
        induction = sl2.get_induction_service()
        mixed = CharacterFactory.create(sl2, f2, ("alpha",), values={"s_alpha": 1})
        empty = LeviFactory.empty(sl2)
        assert induction.adjoint_R(empty, mixed).dim == 0
        assert induction.adjoint_L(empty, mixed).dim == 0

    @pytest.mark.slow
    def test_adjoint_transitivity(self, gl3: ServiceContainer, f2):
        induction = gl3.get_induction_service()
        V = CharacterFactory.create(gl3, f2, ("alpha",))
        for left in (False, True):
            lhs, rhs = induction.adjoint_transitivity(V.levi, LeviFactory.create(gl3, ["beta"]), V, left)
            assert lhs == rhs


class TestExtensionsAndSteinberg:
    """Δ_V, e(V) and St_Q(V)."""

    def test_delta_of_trivial_character(self, gl3: ServiceContainer, f2):
        induction = gl3.get_induction_service()
        V = CharacterFactory.create(gl3, f2)
        assert induction.delta_V(V) == LeviFactory.full(gl3)
        assert induction.P_of_V(V) == LeviFactory.full(gl3)

    def test_delta_of_unramified_character_is_empty(self, sl2: ServiceContainer, f4):
        induction = sl2.get_induction_service()
        V = unramified_character(sl2, f4)
        assert induction.delta_V(V) == LeviFactory.empty(sl2)
        with pytest.raises(KNotWithinPVError):
            induction.extend_e(V, LeviFactory.full(sl2))

    def test_extension_of_trivial_is_trivial(self, gl3: ServiceContainer, f2):
        induction = gl3.get_induction_service()
        e = induction.extend_e(CharacterFactory.create(gl3, f2), LeviFactory.full(gl3))
        trivial = CharacterFactory.create(gl3, f2, ("alpha", "beta"))
        assert gl3.get_module_service().is_isomorphic(e, trivial)

    def test_steinberg_dimensions(self, gl3: ServiceContainer, f2):
        induction = gl3.get_induction_service()
        full = LeviFactory.full(gl3)
        assert induction.steinberg_trivial(LeviFactory.empty(gl3), full, f2).dim == 1
        assert induction.steinberg_trivial(full, full, f2).dim == 1

    def test_steinberg_constructions_agree(self, sl2: ServiceContainer, f2):
        induction = sl2.get_induction_service()
        V = CharacterFactory.create(sl2, f2)
        st = induction.steinberg(V, LeviFactory.empty(sl2))
        assert st.dim == 1
        assert sl2.get_module_service().is_simple(st)

    def test_canonical_inclusions_meet_in_the_trivial_line(self, gl3: ServiceContainer, f2):
        """Ind_{P_α}(1) and Ind_{P_β}(1) embed in Ind_B(1) with sum of codimension one."""
        induction = gl3.get_induction_service()
        modules = gl3.get_module_service()
        empty = LeviFactory.empty(gl3)
        top = induction.induce(empty, modules.trivial_character(empty, f2))
        images = []
        for labels in (["alpha"], ["beta"]):
            Q1 = LeviFactory.create(gl3, labels)
            source = induction.induce(Q1, modules.trivial_character(Q1, f2))
            inclusion = induction.canonical_inclusion(source, top)
            assert gf.rank(inclusion) == source.dim == 3
            images.append(inclusion)
        assert gf.rank(gf.span_sum(f2, images, top.dim)) == 5

    def test_steinberg_with_several_maps_between_inductions(self, sl2: ServiceContainer, f2):
        """For V = 1 ⊕ 1 there are four maps Ind_G(e V) -> Ind_B(V); only the canonical image is removed."""
        induction = sl2.get_induction_service()
        modules = sl2.get_module_service()
        full = LeviFactory.full(sl2)
        V = ModuleFactory.create(sl2, f2, {"u1": [[1, 0], [0, 1]]}, name="trivial2")
        e_v = induction.extend_e(V, full)
        top = induction.induce(V.levi, V)
        source = induction.induce(full, e_v)
        assert len(modules.hom_space(source.carrier, top.carrier)) == 4
        assert gf.rank(induction.canonical_inclusion(source, top)) == 2
        st = induction.steinberg(V, V.levi)
        unit = induction.steinberg_trivial(V.levi, full, f2)
        assert st.dim == 2
        assert modules.is_isomorphic(st, induction.tensor_diagonal(e_v, unit))

    def test_steinberg_chain_check(self, sl2: ServiceContainer, f4):
        induction = sl2.get_induction_service()
        V = unramified_character(sl2, f4)
        with pytest.raises(KNotWithinPVError):
            induction.steinberg(V, LeviFactory.full(sl2))


class TestTriples:
    """I(P, V, Q) and the recovery of e(V)."""

    def test_triples_of_trivial_character_are_distinct_simples(self, sl2: ServiceContainer, f2):
        induction = sl2.get_induction_service()
        modules = sl2.get_module_service()
        V = CharacterFactory.create(sl2, f2)
        found = [induction.triple_module(V.levi, V, Q).module for Q in sl2.preset.all_subsets()]
        assert all(modules.is_simple(m) for m in found)
        assert not modules.is_isomorphic(found[0], found[1])

    def test_triple_factors_match_induced_trivial(self, gl3: ServiceContainer, f2):
        induction = gl3.get_induction_service()
        modules = gl3.get_module_service()
        V = CharacterFactory.create(gl3, f2)
        triples = [induction.triple_module(V.levi, V, Q).module for Q in gl3.preset.all_subsets()]
        factors = modules.composition_series(ModuleFactory.induced_trivial(gl3, f2))
        for factor in factors:
            assert sum(modules.is_isomorphic(factor, t) for t in triples) == 1

    def test_triple_requires_q_below_p_of_v(self, sl2: ServiceContainer, f4):
        induction = sl2.get_induction_service()
        V = unramified_character(sl2, f4)
        with pytest.raises(InvalidTripleError):
            induction.triple_module(V.levi, V, LeviFactory.full(sl2))

    def test_triple_requires_matching_levi(self, sl2: ServiceContainer, f2):
        induction = sl2.get_induction_service()
        V = CharacterFactory.create(sl2, f2, ("alpha",))
        with pytest.raises(InvalidTripleError):
            induction.triple_module(LeviFactory.empty(sl2), V, LeviFactory.full(sl2))

    def test_recover_extension(self, sl2: ServiceContainer, f2):
        induction = sl2.get_induction_service()
        V = CharacterFactory.create(sl2, f2)
        triple = induction.triple_module(V.levi, V, LeviFactory.empty(sl2))
        rebuilt = induction.recover_extension(triple)
        assert sl2.get_module_service().is_isomorphic(rebuilt, triple.e_v)

    def test_lattice_transport(self, sl2: ServiceContainer, f2):
        V = CharacterFactory.create(sl2, f2)
        result = sl2.get_induction_service().verify_lattice_transport(V, LeviFactory.empty(sl2))
        assert result["passed"]


def jordan_module(container: ServiceContainer, field):
    """Two-dimensional H(M_∅)-module of SL(2): t_1 acts by a Jordan block, e_2 spans the submodule."""
    return ModuleFactory.create(container, field, {"u1": [[1, 1], [0, 1]]}, name="jordan")


class TestInductionProperties:
    """Exactness, transitivity and full faithfulness of induction."""

    def test_induction_is_exact(self, sl2: ServiceContainer, f2):
        modules = sl2.get_module_service()
        induction = sl2.get_induction_service()
        M = jordan_module(sl2, f2)
        line = f2([[0, 1]])
        sub, quot = modules.submodule(M, line), modules.quotient(M, line)
        induced = induction.induce(M.levi, M)
        induced_sub = induction.induce(M.levi, sub)
        # Ind(f) is f on every coset block
        embedding = gf.kron(f2.Identity(len(induced.cosets)), line)
        for g in induced.carrier.generators:
            assert np.array_equal(
                induced_sub.carrier.action[g] @ embedding, embedding @ induced.carrier.action[g]
            )
        assert gf.rank(embedding) == induced_sub.dim
        cokernel = modules.quotient(induced.carrier, embedding)
        assert modules.is_isomorphic(cokernel, induction.induce(quot.levi, quot).carrier)

    def test_induction_in_stages(self, gl3: ServiceContainer, f4):
        """Ind_{P_α}^G ∘ Ind_B^{P_α} ≅ Ind_B^G on the trivial character and on one with t_1 -> g."""
        induction = gl3.get_induction_service()
        modules = gl3.get_module_service()
        empty = LeviFactory.empty(gl3)
        alpha = LeviFactory.create(gl3, ["alpha"])
        g = int(f4.primitive_element)
        twisted = modules.character(empty, f4, {"u1": g, "u2": 1, "u3": 1}, name="chi_g")
        for V in (modules.trivial_character(empty, f4), twisted):
            middle = induction.induce(empty, V, ambient=alpha).carrier
            assert middle.dim == 2
            staged = induction.induce(alpha, middle).carrier
            direct = induction.induce(empty, V).carrier
            assert modules.is_isomorphic(staged, direct)

    def test_induction_is_fully_faithful(self, sl2: ServiceContainer, f2):
        modules = sl2.get_module_service()
        induction = sl2.get_induction_service()
        trivial = CharacterFactory.create(sl2, f2)
        M = jordan_module(sl2, f2)
        for V, W in ((trivial, M), (M, trivial), (M, M), (trivial, trivial)):
            lhs = len(modules.hom_space(V, W))
            rhs = len(modules.hom_space(induction.induce(V.levi, V).carrier, induction.induce(W.levi, W).carrier))
            assert lhs == rhs

    def test_induction_is_fully_faithful_on_distinct_characters(self, sl2: ServiceContainer, f4):
        modules = sl2.get_module_service()
        induction = sl2.get_induction_service()
        V = unramified_character(sl2, f4)
        W = CharacterFactory.create(sl2, f4)
        assert modules.hom_space(V, W) == []
        assert modules.hom_space(induction.induce(V.levi, V).carrier, induction.induce(W.levi, W).carrier) == []
