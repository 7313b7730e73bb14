import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opuas.symmetric import (
    ArityError,
    CharacterVector,
    Partition,
    Permutation,
    all_permutations,
    c_permutation,
    character_table,
    class_representative,
    class_size,
    conjugacy_classes,
    hook_dimension,
    irreducible_character,
    partitions,
    perm_multiply,
    sign_vector,
)


def P(*seq):
    return Permutation(seq)


class TestPermutation:
    def test_identity_absorbs(self):
        assert perm_multiply(P(1, 2), P(2, 1)) == P(2, 1)

    def test_involution(self):
        assert perm_multiply(P(2, 1), P(2, 1)) == P(1, 2)

    def test_three_cycle_square(self):
        # composing the 3-cycle with itself in map form gives the other 3-cycle
        assert perm_multiply(P(2, 3, 1), P(2, 3, 1)) == P(3, 1, 2)

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            perm_multiply(P(1, 2), P(1, 2, 3))

    def test_sequence_roundtrip_through_map_form(self):
        for p in all_permutations(4):
            rebuilt = Permutation(p.inverse()(t) for t in range(1, 5))
            assert rebuilt == p

    def test_inverse(self):
        p = P(3, 1, 4, 2)
        assert p * p.inverse() == Permutation.identity(4)
        assert p.inverse() * p == Permutation.identity(4)

    def test_call_and_preimage(self):
        p = P(3, 1, 2)  # sigma(3)=1, sigma(1)=2, sigma(2)=3
        assert p(3) == 1 and p(1) == 2 and p(2) == 3
        assert p.preimage(1) == 3

    def test_serialization_roundtrip(self):
        p = P(2, 1, 4, 3)
        assert str(p) == "(2,1,4,3)"
        assert Permutation.parse(str(p)) == p

    def test_rejects_bad_sequence(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))

    @given(st.integers(2, 6), st.data())
    @settings(max_examples=60, deadline=None)
    def test_associative_with_identity(self, n, data):
        perms = all_permutations(n)
        a = data.draw(st.sampled_from(perms))
        b = data.draw(st.sampled_from(perms))
        c = data.draw(st.sampled_from(perms))
        assert (a * b) * c == a * (b * c)
        e = Permutation.identity(n)
        assert a * e == a and e * a == a

    def test_sign_multiplicative(self):
        for a in all_permutations(4):
            for b in all_permutations(4)[:8]:
                assert (a * b).sign() == a.sign() * b.sign()


class TestPartitionsAndClasses:
    def test_canonical_order_n4(self):
        order = [lam.parts for lam in partitions(4)]
        assert order == [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]

    def test_class_sizes_n3(self):
        sizes = {lam.parts: s for lam, s, _ in conjugacy_classes(3)}
        assert sizes == {(1, 1, 1): 1, (2, 1): 3, (3,): 2}

    def test_class_sizes_n4(self):
        data = conjugacy_classes(4)
        assert [s for _, s, _ in data] == [1, 6, 3, 8, 6]
        assert sum(s for _, s, _ in data) == 24

    def test_single_class_n1(self):
        data = conjugacy_classes(1)
        assert len(data) == 1 and data[0][1] == 1

    def test_representatives_have_right_type(self):
        for n in range(1, 7):
            for lam, size, rep in conjugacy_classes(n):
                assert rep.cycle_type() == lam

    def test_representative_consecutive_blocks(self):
        assert class_representative(Partition([2, 1, 1])) == P(2, 1, 3, 4)
        assert class_representative(Partition([3, 2])) == P(3, 1, 2, 5, 4)

    def test_class_sizes_sum_to_group_order(self):
        for n in range(1, 8):
            assert sum(class_size(lam) for lam in partitions(n)) == math.factorial(n)

    def test_partition_parse(self):
        assert Partition.parse("[3,1]") == Partition([3, 1])
        assert Partition.parse("[2,1^2]") == Partition([2, 1, 1])
        assert str(Partition([3, 1])) == "[3,1]"


class TestHookDimension:
    def test_two_one(self):
        assert hook_dimension(Partition([2, 1])) == 2

    def test_trivial(self):
        for n in range(1, 8):
            assert hook_dimension(Partition([n])) == 1

    def test_three_two(self):
        # hook lengths 4,3,1 / 2,1
        assert hook_dimension(Partition([3, 2])) == 5

    def test_dimension_squares_sum(self):
        for n in range(1, 8):
            assert sum(hook_dimension(lam) ** 2 for lam in partitions(n)) == math.factorial(n)


class TestCharacterTable:
    def test_dimension_column_matches_hooks(self):
        for n in range(1, 8):
            table = character_table(n)
            for lam, chi in table.items():
                assert chi.dimension == hook_dimension(lam)

    def test_two_one_is_two_dimensional(self):
        assert character_table(3)[Partition([2, 1])].dimension == 2

    def test_sign_character(self):
        for n in range(2, 7):
            chi = character_table(n)[Partition([1] * n)]
            assert chi == sign_vector(n)

    def test_n4_dimensions(self):
        dims = [character_table(4)[lam].dimension for lam in partitions(4)]
        assert dims == [1, 3, 2, 3, 1]

    def test_orthonormality(self):
        for n in range(1, 8):
            table = character_table(n)
            lams = partitions(n)
            for i, lam in enumerate(lams):
                for mu in lams[i:]:
                    expected = Fraction(1) if lam == mu else Fraction(0)
                    assert table[lam].inner(table[mu]) == expected

    def test_column_orthogonality_identity_class(self):
        # sum of squares of the dimension column equals n!
        for n in range(1, 8):
            assert sum(chi.dimension ** 2 for chi in character_table(n).values()) == math.factorial(n)

    def test_character_vector_ops(self):
        a = irreducible_character(Partition([2, 1]))
        b = irreducible_character(Partition([3]))
        s = a + b
        assert s.dimension == 3
        assert (2 * a).dimension == 4
        assert s[Partition([3])] == a[Partition([3])] + b[Partition([3])]


class TestCPermutation:
    def test_inner_subset(self):
        assert c_permutation({1, 3}, 4) == P(2, 4, 1, 3)

    def test_empty(self):
        assert c_permutation(set(), 3) == Permutation.identity(3)

    def test_full(self):
        assert c_permutation({1, 2, 3, 4}, 4) == Permutation.identity(4)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            c_permutation({0, 1}, 3)
