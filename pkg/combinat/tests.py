from itertools import combinations, permutations
from math import comb

from django.test import SimpleTestCase

from core.exceptions import CombinatorialError

from .signs import epsilon_one, insertion_sign, perm_sign
from .subsets import SubsetIndexer, complement, subsets_lex


def cycle_parity(sequence):
    """Independent parity oracle from the cycle decomposition"""
    order = sorted(sequence)
    position = {v: p for p, v in enumerate(order)}
    perm = [position[v] for v in sequence]
    seen = [False] * len(perm)
    transpositions = 0
    for start in range(len(perm)):
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length:
            transpositions += length - 1
    return -1 if transpositions % 2 else 1


class PermSignTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(perm_sign((1, 2, 3)), 1)
        self.assertEqual(perm_sign((2, 1, 3)), -1)
        self.assertEqual(perm_sign((3, 1, 2)), 1)

    def test_repeated_entry(self):
        with self.assertRaises(CombinatorialError):
            perm_sign((1, 2, 1))

    def test_matches_cycle_parity(self):
        for n in range(1, 7):
            for p in permutations(range(1, n + 1)):
                self.assertEqual(perm_sign(p), cycle_parity(p))

    def test_adjacent_swap_flips_sign(self):
        for n in range(2, 7):
            for p in permutations(range(1, n + 1)):
                for a in range(n - 1):
                    q = list(p)
                    q[a], q[a + 1] = q[a + 1], q[a]
                    self.assertEqual(perm_sign(q), -perm_sign(p))


class EpsilonTests(SimpleTestCase):
    def test_examples(self):
        for n in range(1, 6):
            self.assertEqual(epsilon_one((), 1, range(2, n + 1), n), 1)
        self.assertEqual(epsilon_one({2}, 1, {3}, 3), -1)
        self.assertEqual(epsilon_one({3}, 1, {2}, 3), 1)

    def test_order_independent(self):
        self.assertEqual(epsilon_one([4, 2], 1, [5, 3], 5), epsilon_one([2, 4], 1, [3, 5], 5))

    def test_swapping_the_distinguished_index(self):
        # exchanging i with an element of I is one transposition after re-sorting
        for n in range(2, 7):
            for i in range(1, n + 1):
                rest = [x for x in range(1, n + 1) if x != i]
                for size in range(1, n):
                    for I in combinations(rest, size):
                        J = tuple(x for x in rest if x not in I)
                        sign = epsilon_one(I, i, J, n)
                        self.assertEqual(sign, cycle_parity(list(I) + [i] + list(J)))

    def test_non_partition(self):
        with self.assertRaisesRegex(CombinatorialError, "not disjoint"):
            epsilon_one({1, 2}, 3, {2}, 3)
        with self.assertRaisesRegex(CombinatorialError, "missing"):
            epsilon_one({1}, 2, (), 3)
        with self.assertRaisesRegex(CombinatorialError, "must not lie"):
            epsilon_one({1}, 1, {2}, 2)


class InsertionSignTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(insertion_sign(1, {2, 3}), 1)
        self.assertEqual(insertion_sign(2, {1}), -1)
        self.assertEqual(insertion_sign(3, {1, 2}), 1)

    def test_member_rejected(self):
        with self.assertRaises(CombinatorialError):
            insertion_sign(2, {1, 2})

    def test_agrees_with_perm_sign(self):
        for n in range(1, 6):
            for k in range(n):
                for J in combinations(range(1, n + 1), k):
                    for i in complement(J, n):
                        self.assertEqual(insertion_sign(i, J), perm_sign((i,) + J))


class SubsetTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(subsets_lex(3, 1), [(1,), (2,), (3,)])
        self.assertEqual(subsets_lex(3, 0), [()])
        self.assertEqual(subsets_lex(4, 2), [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])

    def test_out_of_range(self):
        with self.assertRaises(CombinatorialError):
            subsets_lex(3, 4)
        with self.assertRaises(CombinatorialError):
            SubsetIndexer(3, -1)

    def test_rank_unrank_bijection(self):
        for n in range(13):
            for k in range(n + 1):
                indexer = SubsetIndexer(n, k)
                self.assertEqual(len(indexer), comb(n, k))
                for r in range(len(indexer)):
                    self.assertEqual(indexer.rank(indexer.unrank(r)), r)

    def test_rank_follows_lexicographic_order(self):
        for n in range(1, 8):
            for k in range(n + 1):
                indexer = SubsetIndexer(n, k)
                for r, s in enumerate(subsets_lex(n, k)):
                    self.assertEqual(indexer.rank(s), r)
                    self.assertEqual(indexer.index_map()[s], r)

    def test_rank_rejects_bad_subset(self):
        with self.assertRaises(CombinatorialError):
            SubsetIndexer(4, 2).rank({1, 5})
        with self.assertRaises(CombinatorialError):
            SubsetIndexer(4, 2).unrank(6)
