import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opuas.operad import (
    MultilinearPolynomial,
    OperadElement,
    act,
    beta5,
    beta6,
    extend,
    format_element,
    full_compose,
    iota,
    parse_element,
    partial_compose,
    perm_list,
    phi,
    proper_polynomial,
    psi,
    restrict,
    sign_sum,
    specht_element,
    tau,
    tau_composition,
    tau_n,
    zeta4,
)
from opuas.symmetric import ArityError, Permutation

F = Fraction


def elem(text, arity=None):
    return parse_element(text, arity)


def random_element(rng, n, nterms=3):
    perms = perm_list(n)
    terms = {}
    for _ in range(nterms):
        terms[rng.choice(perms)] = F(rng.randint(-4, 4))
    return OperadElement(n, terms)


class TestCompose:
    def test_block_substitution(self):
        out = full_compose(elem("(2,1)"), [elem("(1,2)"), elem("(1,2)")])
        assert out == elem("(3,4,1,2)")

    def test_block_substitution_against_codec_oracle(self):
        # substitute x1 -> x1 x2, x2 -> x3 x4 into the word x2 x1
        out = full_compose(elem("(2,1)"), [elem("(1,2)"), elem("(1,2)")])
        assert phi(out) == MultilinearPolynomial(4, {(3, 4, 1, 2): F(1)})

    def test_unit_law_zero_ary(self):
        two = OperadElement.unit(2)
        assert full_compose(two, [OperadElement.unit(1), OperadElement.unit(0)]) == OperadElement.unit(1)
        assert full_compose(two, [OperadElement.unit(0), OperadElement.unit(1)]) == OperadElement.unit(1)

    def test_two_unit_associativity(self):
        two = OperadElement.unit(2)
        left = partial_compose(two, 1, two)
        right = partial_compose(two, 2, two)
        assert left == right == OperadElement.unit(3)

    def test_length_mismatch(self):
        with pytest.raises(ArityError):
            full_compose(elem("(2,1)"), [elem("(1,2)")])

    def test_partial_out_of_range(self):
        with pytest.raises(ArityError):
            partial_compose(tau(), 3, tau())

    def test_tau_cubed(self):
        expected = elem("(1,2,3) - (2,1,3) - (3,1,2) + (3,2,1)")
        assert partial_compose(tau(), 1, tau()) == tau_n(3) == expected

    def test_tau_against_commutator_expansion_oracle(self):
        # [[x1,x2],x3] fully expanded, then encoded
        words = {
            (1, 2, 3): F(1),
            (2, 1, 3): F(-1),
            (3, 1, 2): F(-1),
            (3, 2, 1): F(1),
        }
        assert phi(tau_n(3)) == MultilinearPolynomial(3, words)

    def test_unit_slot_absorption(self):
        rng = random.Random(1)
        theta = random_element(rng, 3)
        for i in (1, 2, 3):
            assert partial_compose(theta, i, OperadElement.unit(1)) == theta

    def test_tau_kills_zero_unit(self):
        z = OperadElement.unit(0)
        assert partial_compose(tau(), 1, z).is_zero()
        assert partial_compose(tau(), 2, z).is_zero()

    def test_operad_associativity_random(self):
        rng = random.Random(7)
        for _ in range(6):
            mu = random_element(rng, 2, 2)
            nus = [random_element(rng, rng.randint(0, 2), 2) for _ in range(2)]
            oms = [
                [random_element(rng, rng.randint(0, 2), 1) for _ in range(nu.arity)]
                for nu in nus
            ]
            lhs = full_compose(full_compose(mu, nus), [o for block in oms for o in block])
            rhs = full_compose(mu, [full_compose(nu, block) for nu, block in zip(nus, oms)])
            assert lhs == rhs

    def test_equivariance(self):
        # (mu*sigma) o (nu_1..nu_n) equals the composite with the inner list
        # permuted by sigma, acted by the block form of sigma
        rng = random.Random(11)
        mu = random_element(rng, 3, 2)
        nus = [random_element(rng, k, 2) for k in (1, 2, 2)]
        for seq in itertools.permutations((1, 2, 3)):
            sigma = Permutation(seq)
            lhs = full_compose(act(mu, sigma), nus)
            permuted = [nus[sigma.seq[u - 1] - 1] for u in (1, 2, 3)]
            block_form = full_compose(
                OperadElement.basis(sigma),
                [OperadElement.unit(nu.arity) for nu in nus],
            )
            (rho_seq,) = block_form.terms
            rhs = act(full_compose(mu, permuted), Permutation(rho_seq))
            assert lhs == rhs

    def test_compose_matches_polynomial_substitution_oracle(self):
        # the composition law, checked against word-level substitution
        def substitute(outer, inners):
            offsets = []
            acc = 0
            for e in inners:
                offsets.append(acc)
                acc += e.arity
            words = {}
            for w, c in phi(outer).monomials.items():
                for combo in itertools.product(
                    *(phi(e).monomials.items() for e in inners)
                ):
                    word = []
                    for letter in w:
                        word.extend(offsets[letter - 1] + y for y in combo[letter - 1][0])
                    coeff = c
                    for _, cc in combo:
                        coeff *= cc
                    word = tuple(word)
                    words[word] = words.get(word, F(0)) + coeff
            return MultilinearPolynomial(acc, words)

        rng = random.Random(13)
        for _ in range(8):
            outer = random_element(rng, rng.randint(1, 3), 2)
            inners = [random_element(rng, rng.randint(0, 2), 2) for _ in range(outer.arity)]
            assert phi(full_compose(outer, inners)) == substitute(outer, inners)


class TestAction:
    def test_identity(self):
        rng = random.Random(3)
        theta = random_element(rng, 4)
        assert act(theta, Permutation.identity(4)) == theta

    def test_inverse(self):
        rng = random.Random(4)
        theta = random_element(rng, 4)
        sigma = Permutation((3, 1, 4, 2))
        assert act(act(theta, sigma), sigma.inverse()) == theta

    def test_codec_equivariance(self):
        rng = random.Random(5)
        theta = random_element(rng, 4)
        for seq in [(2, 1, 4, 3), (4, 1, 2, 3)]:
            rho = Permutation(seq)
            assert phi(act(theta, rho)) == phi(theta).act(rho)

    def test_unit4_action_word(self):
        out = act(OperadElement.unit(4), Permutation((2, 1, 4, 3)))
        assert phi(out) == MultilinearPolynomial(4, {(2, 1, 4, 3): F(1)})


class TestRestrictExtend:
    def test_restrict_deletes_variables(self):
        assert restrict(elem("(3,1,2)"), {1, 2}) == elem("(1,2)")

    def test_restrict_tau3_vanishes(self):
        for I in itertools.combinations((1, 2, 3), 2):
            assert restrict(tau_n(3), I).is_zero()

    def test_restrict_full_is_identity(self):
        rng = random.Random(6)
        theta = random_element(rng, 4)
        assert restrict(theta, {1, 2, 3, 4}) == theta

    def test_restrict_equals_iterated_deletion_any_order(self):
        rng = random.Random(8)
        theta = random_element(rng, 4)
        target = restrict(theta, {2, 4})
        # delete slots 1 and 3 in either order via 0-unit substitution
        d1 = partial_compose(partial_compose(theta, 1, OperadElement.unit(0)), 2, OperadElement.unit(0))
        d2 = partial_compose(partial_compose(theta, 3, OperadElement.unit(0)), 1, OperadElement.unit(0))
        assert d1 == d2 == target

    def test_extend_arity(self):
        rng = random.Random(9)
        theta = random_element(rng, 3)
        assert extend(theta, {1, 3}).arity == 5

    def test_iota_pads(self):
        assert iota(0, 0, tau()) == tau()
        right_pad = iota(0, 1, tau())
        assert right_pad == full_compose(OperadElement.unit(2), [tau(), OperadElement.unit(1)])
        assert phi(right_pad) == MultilinearPolynomial(
            3, {(1, 2, 3): F(1), (2, 1, 3): F(-1)}
        )


class TestCodec:
    def test_phi_unit(self):
        assert phi(OperadElement.unit(3)) == MultilinearPolynomial(3, {(1, 2, 3): F(1)})

    def test_roundtrip(self):
        rng = random.Random(10)
        for n in (1, 2, 3, 4):
            theta = random_element(rng, n)
            assert psi(phi(theta)) == theta

    def test_psi_rejects_non_multilinear(self):
        with pytest.raises(ValueError):
            MultilinearPolynomial(2, {(1, 1): F(1)})


class TestProperPolynomial:
    def test_pair_of_commutators(self):
        expected = specht_element((2, 2), Permutation((2, 1, 4, 3)))
        assert proper_polynomial([[2, 1], [4, 3]]) == expected

    def test_base_case(self):
        assert proper_polynomial([[1, 2]]) == tau()

    def test_degree5_reversed(self):
        assert proper_polynomial([[5, 4, 3, 2, 1]]) == act(
            tau_n(5), Permutation((5, 4, 3, 2, 1))
        )

    def test_beta5_matches_own_expansion(self):
        expected = proper_polynomial([[5, 4], [3, 2, 1]]) + proper_polynomial(
            [[5, 4, 3, 2, 1]]
        )
        assert beta5() == expected

    def test_zeta4_matches_own_expansion(self):
        expected = proper_polynomial([[2, 1], [4, 3]]) + proper_polynomial([[4, 3, 2, 1]])
        assert zeta4() == expected

    def test_beta6_matches_own_expansion(self):
        expected = (
            proper_polynomial([[2, 1], [4, 3], [6, 5]])
            + proper_polynomial([[6, 5], [4, 3, 2, 1]])
            + proper_polynomial([[3, 2, 1], [6, 5, 4]])
            + proper_polynomial([[6, 5, 4, 3, 2, 1]])
        )
        assert beta6() == expected

    def test_rejects_bad_brackets(self):
        with pytest.raises(ValueError):
            proper_polynomial([[1], [2, 3]])
        with pytest.raises(ValueError):
            proper_polynomial([[1, 2], [2, 3]])

    def test_specht_element_composition_formula(self):
        # the commutator-product expansion agrees with composing tau blocks
        word = Permutation((3, 1, 5, 4, 2))
        assert specht_element((2, 3), word) == proper_polynomial([[3, 1], [5, 4, 2]])


class TestSignSum:
    def test_antisymmetry(self):
        s = sign_sum(3)
        for i in (1, 2):
            t = Permutation.adjacent_transposition(3, i)
            assert act(s, t) == -1 * s

    def test_term_count(self):
        assert len(sign_sum(4).terms) == 24


class TestParsePrint:
    def test_roundtrip(self):
        rng = random.Random(12)
        for n in (0, 1, 2, 4):
            theta = random_element(rng, n) if n else OperadElement(0, {(): F(3, 2)})
            assert parse_element(format_element(theta), n) == theta

    def test_example(self):
        theta = parse_element("3/2*(2,1,4,3) - (4,3,2,1)")
        assert theta.coefficient(Permutation((2, 1, 4, 3))) == F(3, 2)
        assert theta.coefficient(Permutation((4, 3, 2, 1))) == F(-1)

    def test_zero(self):
        assert format_element(OperadElement.zero(3)) == "0"
        assert parse_element("0", 3).is_zero()

    def test_parse_error(self):
        with pytest.raises(ValueError):
            parse_element("(1,2) (2,1)")
        with pytest.raises(ValueError):
            parse_element("bogus")


@given(st.integers(2, 4), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_action_is_right_action(n, seed):
    rng = random.Random(seed)
    theta = random_element(rng, n)
    perms = [Permutation(p) for p in perm_list(n)]
    a, b = rng.choice(perms), rng.choice(perms)
    assert act(act(theta, a), b) == act(theta, a * b)
