"""
Lexicographic k-subsets of {1..n} and their ranks
"""

import logging
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Tuple

from core.exceptions import CombinatorialError

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


def canonical(subset: Iterable[int]) -> Subset:
    """Sorted tuple form of a set of positive integers"""
    items = tuple(sorted(subset))
    if len(set(items)) != len(items):
        raise CombinatorialError(f"Subset {list(subset)} has repeated entries")
    if items and items[0] < 1:
        raise CombinatorialError(f"Subset entries must be positive, got {list(items)}")
    return items


def complement(subset: Iterable[int], n: int) -> Subset:
    members = set(subset)
    return tuple(x for x in range(1, n + 1) if x not in members)


def _check_range(n: int, k: int):
    if n < 0 or not 0 <= k <= n:
        raise CombinatorialError(f"Subset size k={k} is out of range for n={n}")


def subsets_lex(n: int, k: int) -> List[Subset]:
    """All C(n, k) k-subsets of {1..n} in lexicographic order"""
    return list(_subsets(n, k))


@lru_cache(maxsize=None)
def _subsets(n: int, k: int) -> Tuple[Subset, ...]:
    _check_range(n, k)
    return tuple(combinations(range(1, n + 1), k))


class SubsetIndexer:
    """Rank/unrank between k-subsets of {1..n} and {0..C(n,k)-1}"""

    def __init__(self, n: int, k: int):
        _check_range(n, k)
        self.n = n
        self.k = k
        self.size = comb(n, k)

    def __repr__(self):
        return f"SubsetIndexer(n={self.n}, k={self.k})"

    def __len__(self):
        return self.size

    def rank(self, subset: Iterable[int]) -> int:
        s = canonical(subset)
        if len(s) != self.k or (s and s[-1] > self.n):
            raise CombinatorialError(f"{list(s)} is not a {self.k}-subset of 1..{self.n}")
        r = 0
        previous = 0
        for j, element in enumerate(s):
            # subsets whose j-th entry is smaller than element come first
            for t in range(previous + 1, element):
                r += comb(self.n - t, self.k - j - 1)
            previous = element
        return r

    def unrank(self, r: int) -> Subset:
        if not 0 <= r < self.size:
            raise CombinatorialError(f"Rank {r} out of range 0..{self.size - 1}")
        result = []
        t = 1
        for j in range(self.k):
            while True:
                block = comb(self.n - t, self.k - j - 1)
                if r < block:
                    break
                r -= block
                t += 1
            result.append(t)
            t += 1
        return tuple(result)

    def index_map(self) -> Dict[Subset, int]:
        return _index_map(self.n, self.k)


@lru_cache(maxsize=None)
def _index_map(n: int, k: int) -> Dict[Subset, int]:
    return {s: i for i, s in enumerate(_subsets(n, k))}
