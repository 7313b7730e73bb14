import math
import random
from fractions import Fraction

import pytest

from opuas import linalg
from opuas.ideals import (
    AdmissibleSequence,
    IdealError,
    IdealPresentation,
    IdealWindow,
    admissible_check,
    certified_generation_bound,
    closure_fixpoint_oracle,
    contains_ideal,
    cyclic_generator,
    gen_degree,
    generates,
    gkdim_quotient,
    gt_general,
    gt_type1,
    ideal_component,
    ideal_window,
    maximal_wrt_gkdim,
    mdeg,
    single_generator,
    strictly_contains,
    truncation_window,
    validate_window,
    window_sum,
)
from opuas.linalg import Subspace
from opuas.operad import (
    OperadElement,
    act,
    perm_list,
    proper_polynomial,
    sign_sum,
    tau,
    tau_n,
    zeta4,
)
from opuas.reps import isotypic_component, module_span
from opuas.symmetric import Permutation
from opuas.truncation import gamma, specht_element, truncation_dim, truncation_kernel

F = Fraction


def pres_T3():
    return IdealPresentation.from_element(tau_n(3), label="T(3)")


def pres_unit():
    return IdealPresentation.from_element(OperadElement.unit(1), label="<1_1>")


class TestIdealComponent:
    def test_unit_generates_everything(self):
        for n in (0, 1, 2, 3, 4):
            assert ideal_component(pres_unit(), n) == Subspace.full(math.factorial(n))

    def test_T3_dims(self):
        dims = [ideal_component(pres_T3(), n).dim for n in range(6)]
        assert dims == [0, 0, 0, 2, 16, 104]

    def test_T3_arity3_is_top_component(self):
        assert ideal_component(pres_T3(), 3) == truncation_kernel(3, 3)

    def test_module_generator_equivalent_to_element(self):
        by_module = IdealPresentation.from_module(3, truncation_kernel(3, 3))
        for n in range(6):
            assert ideal_component(by_module, n) == ideal_component(pres_T3(), n)

    def test_tail_contribution(self):
        pres = IdealPresentation(tail=4)
        for n in range(6):
            assert ideal_component(pres, n) == truncation_kernel(4, n)

    def test_empty_presentation(self):
        pres = IdealPresentation()
        for n in range(5):
            assert ideal_component(pres, n).is_zero()

    def test_window_is_ideal(self):
        w = ideal_window(pres_T3(), 5)
        assert validate_window(w)


class TestOracle:
    def test_agrees_on_T3(self):
        got = closure_fixpoint_oracle(pres_T3(), top=5, headroom=1)
        assert got.stable is True
        expected = ideal_window(pres_T3(), 5)
        assert got.window.components == expected.components

    def test_agrees_on_module_presentation(self):
        pres = IdealPresentation.from_module(4, truncation_kernel(4, 4))
        got = closure_fixpoint_oracle(pres, top=5, headroom=0)
        assert got.stable is None
        expected = ideal_window(pres, 5)
        assert got.window.components == expected.components

    def test_agrees_on_random_single_generator(self):
        rng = random.Random(17)
        basis = truncation_kernel(4, 4).basis
        vec = [sum(F(rng.randint(-2, 2)) * row[j] for row in basis) for j in range(24)]
        theta = OperadElement.from_vector(4, vec)
        pres = IdealPresentation.from_element(theta)
        got = closure_fixpoint_oracle(pres, top=4, headroom=1)
        assert got.stable is True
        assert got.window.components == ideal_window(pres, 4).components

    def test_empty_presentation_zero_ideal(self):
        got = closure_fixpoint_oracle(IdealPresentation(), top=4, headroom=1)
        assert all(c.is_zero() for c in got.window.components)


class TestMdegGkdim:
    def test_mdeg_T3(self):
        assert mdeg(ideal_window(pres_T3(), 5)) == 3

    def test_mdeg_truncation(self):
        for k in (2, 3, 4):
            assert mdeg(truncation_window(k, 5)) == k

    def test_first_two_truncation_ideals_coincide(self):
        assert truncation_window(1, 5).components == truncation_window(2, 5).components
        assert mdeg(truncation_window(1, 5)) == 2

    def test_mdeg_zero_ideal(self):
        w = IdealWindow([Subspace.zero(math.factorial(n)) for n in range(5)], None)
        with pytest.raises(IdealError):
            mdeg(w)

    def test_gkdim_of_truncation_quotients(self):
        assert gkdim_quotient(truncation_window(1, 5)) == 1
        assert gkdim_quotient(truncation_window(2, 5)) == 1
        for k in (3, 4, 5):
            assert gkdim_quotient(truncation_window(k, 5)) == k

    def test_gkdim_requires_tail(self):
        w = ideal_window(pres_T3(), 5)
        with pytest.raises(IdealError):
            gkdim_quotient(w)

    def test_gkdim_T3_plus_U5(self):
        s = window_sum(ideal_window(pres_T3(), 5), truncation_window(5, 5))
        assert gkdim_quotient(s) == 5
        assert mdeg(s) == 3


class TestGenDegree:
    def test_truncation_ideals(self):
        assert gen_degree(truncation_window(2)) == 2
        assert gen_degree(truncation_window(3)) == 4
        assert gen_degree(truncation_window(4)) == 4

    def test_bound_parity(self):
        assert certified_generation_bound(truncation_window(3, 5)) == 4
        assert certified_generation_bound(truncation_window(4, 5)) == 4
        assert certified_generation_bound(truncation_window(2, 5)) == 2

    def test_bound_beyond_window(self):
        with pytest.raises(IdealError):
            gen_degree(truncation_window(3, 3))


class TestSingleGenerator:
    def test_U4_single_generator_is_top_cyclic(self):
        zeta = single_generator(truncation_window(4, 5), 4)
        assert module_span([zeta.to_vector()], 4) == truncation_kernel(4, 4)

    def test_zeta4_generates_U4(self):
        assert generates(zeta4(), truncation_window(4, 5))

    def test_U2_single_generator(self):
        zeta = single_generator(truncation_window(2, 4), 2)
        assert linalg.row_space([zeta.to_vector()], 2) == truncation_kernel(2, 2)

    def test_prop56_scalar_identity(self):
        # the explicit rewriting of the length-4 commutator from zeta4
        z = zeta4()
        mix = z + act(z, Permutation((2, 1, 3, 4)))
        comb = (
            OperadElement.basis(Permutation((1, 4, 2, 3)))
            - OperadElement.basis(Permutation((1, 3, 2, 4)))
            + OperadElement.basis(Permutation((2, 3, 1, 4)))
            - OperadElement.basis(Permutation((2, 4, 1, 3)))
            - 2 * OperadElement.basis(Permutation((3, 4, 1, 2)))
        )
        total = OperadElement.zero(4)
        for seq, c in comb.terms.items():
            total = total + c * act(mix, Permutation(seq))
        assert F(1, 4) * total == tau_n(4)


class TestMembershipLemmas:
    def test_sign_twisted_products_fall_in_generated_ideal_k3(self):
        # tau_{2,2} * (sgn(sigma) sigma - 1) lies in <U3(3)>(4)
        rng = random.Random(3)
        comp = ideal_component(pres_T3(), 4)
        perms = perm_list(4)
        base = specht_element((2, 2), Permutation((2, 1, 4, 3)))
        for _ in range(10):
            sigma = Permutation(rng.choice(perms))
            elt = act(base, sigma)
            vec = (F(sigma.sign()) * elt - base).to_vector()
            assert comp.contains(vec)

    def test_exclusions(self):
        base = specht_element((2, 2), Permutation((2, 1, 4, 3)))
        assert not ideal_component(pres_T3(), 4).contains(base.to_vector())

    def test_generated_strictly_smaller(self):
        assert ideal_component(pres_T3(), 4).dim == 16 < truncation_dim(3, 4)


class TestGeneralizedTruncation:
    def test_extreme_cases(self):
        top = truncation_kernel(4, 4)
        zero = Subspace.zero(24)
        assert gt_type1(4, zero, 5).components == truncation_window(5, 5).components
        assert gt_type1(4, top, 5).components == truncation_window(4, 5).components

    def test_dimension_formula(self):
        # dim of the generalized ideal = dim next truncation + dim M * C(n, m)
        M = isotypic_component(truncation_kernel(4, 4), __import__("opuas.symmetric", fromlist=["Partition"]).Partition([1, 1, 1, 1]), 4)
        w = gt_type1(4, M, 5)
        for n in (4, 5):
            expected = truncation_dim(5, n) + M.dim * math.comb(n, 4)
            assert w.component(n).dim == expected

    def test_rejects_non_module(self):
        bad, _ = linalg.rref([[1] + [0] * 23])
        with pytest.raises(IdealError):
            gt_type1(4, bad, 5)

    def test_rejects_module_outside_top_component(self):
        full = Subspace.full(24)
        with pytest.raises(IdealError):
            gt_type1(4, full, 5)


class TestAdmissible:
    def unique_pair(self):
        M3 = truncation_kernel(3, 3)
        M4 = linalg.intersect(ideal_component(pres_T3(), 4), truncation_kernel(4, 4))
        return AdmissibleSequence(((3, M3), (4, M4)))

    def test_unique_4_admissible_pair(self):
        ok, why = admissible_check(self.unique_pair())
        assert ok, why

    def test_pair_missing_containment_fails(self):
        M3 = truncation_kernel(3, 3)
        lam = __import__("opuas.symmetric", fromlist=["Partition"]).Partition
        small = isotypic_component(truncation_kernel(4, 4), lam([1, 1, 1, 1]), 4)
        ok, why = admissible_check(AdmissibleSequence(((3, M3), (4, small))))
        assert not ok and "arity 4" in why

    def test_zero_start_fails(self):
        seq = AdmissibleSequence(((3, Subspace.zero(6)), (4, Subspace.zero(24))))
        ok, why = admissible_check(seq)
        assert not ok and "zero" in why

    def test_improper_top_fails(self):
        seq = AdmissibleSequence(((3, truncation_kernel(3, 3)), (4, truncation_kernel(4, 4))))
        ok, why = admissible_check(seq)
        assert not ok and "proper" in why

    def test_gt_general_is_T3_plus_U5(self):
        w = gt_general(self.unique_pair(), 5)
        s = window_sum(ideal_window(pres_T3(), 5), truncation_window(5, 5))
        assert w.components == s.components
        assert gkdim_quotient(w) == 5

    def test_gt_general_rejects_inadmissible(self):
        seq = AdmissibleSequence(((3, Subspace.zero(6)), (4, Subspace.zero(24))))
        with pytest.raises(IdealError):
            gt_general(seq, 5)

    def test_quotient_dims_formula(self):
        w = gt_general(self.unique_pair(), 5)
        M3, M4 = truncation_kernel(3, 3), self.unique_pair().module(4)
        for n in range(6):
            quotient = math.factorial(n) - w.component(n).dim
            expected = sum(
                (gamma(k) - (M3.dim if k == 3 else M4.dim if k == 4 else 0))
                * math.comb(n, k)
                for k in range(5)
            )
            assert quotient == expected


class TestContainment:
    def test_reflexive(self):
        w = truncation_window(3, 5)
        assert contains_ideal(w, w)
        assert not strictly_contains(w, w)

    def test_truncation_chain(self):
        for k in (2, 3, 4):
            assert strictly_contains(truncation_window(k, 5), truncation_window(k + 1, 5))

    def test_maximality_among_candidates(self):
        from opuas.symmetric import Partition

        u5 = truncation_window(5, 5)
        M = isotypic_component(truncation_kernel(4, 4), Partition([1, 1, 1, 1]), 4)
        bigger = gt_type1(4, M, 5)
        # both quotients have GK-dimension 5, and the type-one ideal strictly
        # contains the truncation ideal, so the latter is not maximal
        assert gkdim_quotient(bigger) == gkdim_quotient(u5) == 5
        assert not maximal_wrt_gkdim(u5, [u5, bigger])
        assert maximal_wrt_gkdim(u5, [u5])


class TestCyclicGenerator:
    def test_simple_module(self):
        g = cyclic_generator(truncation_kernel(3, 3), 3)
        from opuas.reps import cyclic_span

        assert cyclic_span(g) == truncation_kernel(3, 3)

    def test_zero_module_rejected(self):
        with pytest.raises(IdealError):
            cyclic_generator(Subspace.zero(6), 3)
