import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_reduce, brute_sphere
from lpcstar import groups
from lpcstar.errors import EnumerationTooLarge, Inconclusive, InvalidLetter

letters_st = st.lists(
    st.sampled_from([1, -1, 2, -2]), min_size=0, max_size=24
)


class TestReduceWord:
    def test_cancellation(self):
        w = groups.reduce_word([1, -1, 2], 2)
        assert w.letters == (2,)

    def test_empty(self):
        w = groups.reduce_word([], 2)
        assert w.is_identity() and len(w) == 0

    def test_hand_reduction(self):
        # frozen via the repeated-scan oracle: a b b^-1 a a^-1 a -> aa
        raw = [1, 2, -2, 1, -1, 1]
        assert brute_reduce(raw) == (1, 1)
        w = groups.reduce_word(raw, 2)
        assert w.letters == (1, 1) and len(w) == 2

    def test_idempotent(self):
        w = groups.reduce_word([1, 2, -2, 1], 2)
        assert groups.reduce_word(w.letters, 2) == w

    def test_invalid_letter(self):
        with pytest.raises(InvalidLetter):
            groups.reduce_word([3], 2)
        with pytest.raises(InvalidLetter):
            groups.reduce_word([0], 2)

    @given(letters_st)
    def test_matches_bruteforce(self, letters):
        assert groups.reduce_word(letters, 2).letters == brute_reduce(letters)

    @given(letters_st, letters_st)
    def test_reduction_confluent(self, xs, ys):
        x = groups.reduce_word(xs, 2)
        y = groups.reduce_word(ys, 2)
        assert x * y == groups.reduce_word(tuple(xs) + tuple(ys), 2)

    @given(letters_st)
    def test_inverse(self, xs):
        x = groups.reduce_word(xs, 2)
        assert (x * x.inverse()).is_identity()


class TestSphere:
    def test_radius_one(self):
        words, count = groups.sphere(2, 1)
        assert count == 4 and len(words) == 4

    def test_radius_three_d2(self):
        words, count = groups.sphere(2, 3)
        assert count == 36 and len(words) == 36

    def test_d3_k2_bruteforce(self):
        words, count = groups.sphere(3, 2)
        assert count == 30
        assert {w.letters for w in words} == brute_sphere(3, 2)

    def test_shortlex_sorted_and_unique(self):
        words, _ = groups.sphere(2, 4)
        keys = [w.shortlex_key() for w in words]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    @pytest.mark.parametrize("rank", [2, 3])
    @pytest.mark.parametrize("radius", range(1, 9))
    def test_counts_match_formula(self, rank, radius):
        if groups.sphere_size(rank, radius) > 500_000:
            words, count = groups.sphere(rank, radius, cap=10**6)
        else:
            words, count = groups.sphere(rank, radius)
        assert count == 2 * rank * (2 * rank - 1) ** (radius - 1)
        assert len(words) == count
        assert all(len(w) == radius for w in words)

    def test_cap_carries_formula_count(self):
        with pytest.raises(EnumerationTooLarge) as exc:
            groups.sphere(2, 20, cap=1000)
        assert exc.value.count == 4 * 3**19


class TestSanov:
    def test_identity(self):
        assert groups.sanov_embed(groups.Word(2)).is_identity()

    def test_generator(self):
        assert groups.sanov_embed(groups.word_from_str("a", 2)) == groups.SANOV_A
        assert groups.SANOV_A.entries() == (1, 2, 0, 1)

    def test_ab_product(self):
        m = groups.sanov_embed(groups.word_from_str("ab", 2))
        assert m.entries() == (5, 2, 2, 1)
        assert m == groups.SANOV_A * groups.SANOV_B

    def test_homomorphism_random(self):
        rng = np.random.default_rng(7)
        from helpers import random_word

        for _ in range(1000):
            u = random_word(rng, 2, 12)
            v = random_word(rng, 2, 12)
            assert groups.sanov_embed(u * v) == groups.sanov_embed(u) * groups.sanov_embed(v)

    def test_injective_up_to_radius_8(self):
        minus_i = groups.SL2Matrix(-1, 0, 0, -1)
        for k in range(1, 9):
            for w in groups.sphere(2, k)[0]:
                m = groups.sanov_embed(w)
                assert not m.is_identity() and m != minus_i

    def test_coordinates_roundtrip(self):
        rng = np.random.default_rng(11)
        from helpers import random_word

        for _ in range(300):
            w = random_word(rng, 2, 14)
            assert groups.sanov_coordinates(groups.sanov_embed(w)) == w

    def test_coordinates_reject_sign_coset(self):
        minus_i = groups.SL2Matrix(-1, 0, 0, -1)
        assert groups.sanov_coordinates(minus_i) is None
        assert groups.sanov_coordinates(minus_i * groups.SANOV_A) is None
        assert groups.sanov_coordinates(groups.T_GEN) is None


class TestQuotients:
    @pytest.mark.parametrize(
        "level,order", [(2, 6), (3, 24), (4, 48), (5, 120), (6, 144)]
    )
    def test_orders(self, level, order):
        q = groups.enumerate_quotient(level)
        assert q.order == order
        assert q.order == groups.quotient_order_formula(level)

    def test_group_closure(self):
        q = groups.enumerate_quotient(5)
        index = set(q.index)
        for m in q.elements[:40]:
            assert m.inverse().entries() in index
            assert (m * q.generator_images["t"]).entries() in index

    def test_generator_images_det(self):
        q = groups.enumerate_quotient(6)
        for img in q.generator_images.values():
            assert (img.a * img.d - img.b * img.c) % 6 == 1

    def test_words_reconstruct_elements(self):
        q = groups.enumerate_quotient(5)
        for m in q.elements:
            acc = groups.QuotientGroup(5).identity()
            for name, exp in q.word_for(m):
                acc = acc * (q.generator_images[name] ** exp)
            assert acc == m

    def test_cap(self):
        with pytest.raises(EnumerationTooLarge):
            groups.enumerate_quotient(97, cap=1000)


class TestSL2ZWords:
    def test_identity(self):
        assert groups.sl2z_generator_words(groups.SL2Z.identity()) == []

    def test_roundtrip_random(self):
        rng = np.random.default_rng(3)
        gens = [groups.T_GEN, groups.T_GEN.inverse(), groups.S_GEN, groups.S_GEN.inverse()]
        for _ in range(300):
            m = groups.SL2Z.identity()
            for _ in range(int(rng.integers(0, 12))):
                m = m * gens[int(rng.integers(0, 4))]
            acc = groups.SL2Z.identity()
            for name, exp in groups.sl2z_generator_words(m):
                g = groups.T_GEN if name == "t" else groups.S_GEN
                acc = acc * (g**exp)
            assert acc == m

    def test_large_entries_exact(self):
        m = groups.sanov_embed(groups.word_from_str("ab" * 12, 2))
        acc = groups.SL2Z.identity()
        for name, exp in groups.sl2z_generator_words(m):
            g = groups.T_GEN if name == "t" else groups.S_GEN
            acc = acc * (g**exp)
        assert acc == m


class TestCosetTables:
    def test_whole_group(self):
        ct = groups.coset_table(groups.FreeGroup(2), groups.FreeFactor(2), bound=10)
        assert ct.index == 1
        assert ct.section == [groups.Word(2)]

    def test_sanov_finite(self):
        ct = groups.coset_table(groups.SL2Z, groups.Sanov(), bound=10**4)
        assert ct.is_finite()
        # recorded empirically; consistent with the level-2 congruence
        # subgroup splitting as {+-I} x (free part)
        assert ct.index == 12
        assert ct.section[0].is_identity()
        for name in ("t", "s", "T", "S"):
            perm = ct.permutation(name)
            assert sorted(perm) == list(range(ct.index))
        # transitive orbit of coset 0
        seen, frontier = {0}, [0]
        while frontier:
            i = frontier.pop()
            for name in ("t", "s"):
                j = ct.action[(name, i)]
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
        assert seen == set(range(ct.index))

    def test_section_in_distinct_cosets(self):
        ct = groups.coset_table(groups.SL2Z, groups.Sanov(), bound=10**4)
        for i, r in enumerate(ct.section):
            for s in ct.section[i + 1 :]:
                assert groups.sanov_coordinates(r.inverse() * s) is None

    def test_cyclic_infinite(self):
        a = groups.word_from_str("a", 2)
        ct = groups.coset_table(groups.FreeGroup(2), groups.CyclicGen(a), bound=50)
        assert ct.index is None
        firsts = [groups.word_to_str(w) for w in ct.section[:4]]
        assert firsts == ["", "b", "B", "ab"]
        # distinct cosets: r^-1 s never a power of a
        for i, r in enumerate(ct.section[:10]):
            for s in ct.section[i + 1 : 10]:
                assert groups.subgroup_coordinates(
                    groups.CyclicGen(a), groups.FreeGroup(2), r.inverse() * s
                ) is None

    def test_congruence_table(self):
        ct = groups.coset_table(groups.SL2Z, groups.Congruence(2), bound=100)
        assert ct.index == 6

    def test_inconclusive_without_certificate(self):
        # rank-1 cyclic subgroup of F_1 generated by a^3 closes at index 3
        a3 = groups.Word(1, (1, 1, 1))
        ct = groups.coset_table(groups.FreeGroup(1), groups.CyclicGen(a3), bound=50)
        assert ct.index == 3


class TestSubgroupMembership:
    def test_free_factor(self):
        spec = groups.FreeFactor(2)
        amb = groups.FreeGroup(3)
        w = groups.word_from_str("abA", 3)
        coords = groups.subgroup_coordinates(spec, amb, w)
        assert coords == groups.word_from_str("abA", 2)
        assert groups.subgroup_coordinates(spec, amb, groups.word_from_str("c", 3)) is None

    def test_cyclic_powers(self):
        spec = groups.CyclicGen(groups.word_from_str("a", 2))
        amb = groups.FreeGroup(2)
        assert groups.subgroup_coordinates(spec, amb, groups.word_from_str("aaa", 2)) == groups.Word(1, (1, 1, 1))
        assert groups.subgroup_coordinates(spec, amb, groups.word_from_str("ab", 2)) is None

    def test_cyclic_conjugated_generator(self):
        w = groups.word_from_str("bAb" + "B", 2)  # b a^-1
        spec = groups.CyclicGen(groups.word_from_str("baB", 2))
        amb = groups.FreeGroup(2)
        g = groups.word_from_str("baB", 2)
        assert groups.subgroup_coordinates(spec, amb, g * g * g) == groups.Word(1, (1, 1, 1))
        assert groups.subgroup_coordinates(spec, amb, (g * g).inverse()) == groups.Word(1, (-1, -1))

    def test_pair_elements(self):
        z = groups.FreeGroup(1)
        p = groups.PairElement(groups.Word(1, (1,)), groups.Word(1, (-1,)))
        q = p * p
        assert q.left.letters == (1, 1)
        assert (p * p.inverse()).is_identity()


class TestSerialization:
    def test_word_roundtrip(self):
        w = groups.word_from_str("abA", 3)
        assert groups.word_to_str(w) == "abA"

    def test_matrix_entries(self):
        m = groups.T_GEN * groups.S_GEN
        assert m.entries() == (1, -1, 1, 0)
