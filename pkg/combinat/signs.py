"""
Exact permutation signatures

All sign arithmetic is integer-valued; a sign is +1 or -1.
"""

import logging
from typing import Iterable, Sequence

from core.exceptions import CombinatorialError

from .subsets import canonical

logger = logging.getLogger(__name__)

Sign = int


def perm_sign(sequence: Sequence[int]) -> Sign:
    """Parity of the permutation that sorts the sequence ascending"""
    items = list(sequence)
    if len(set(items)) != len(items):
        raise CombinatorialError(f"Sequence {items} has repeated entries")
    inversions = sum(
        1 for a in range(len(items)) for b in range(a + 1, len(items)) if items[a] > items[b]
    )
    return -1 if inversions % 2 else 1


def epsilon_one(I: Iterable[int], i: int, J: Iterable[int], n: int) -> Sign:
    """Sign of (I ascending, i, J ascending) as a permutation of 1..n"""
    left = canonical(I)
    right = canonical(J)
    if i in left or i in right:
        raise CombinatorialError(f"Index {i} must not lie in I={list(left)} or J={list(right)}")
    overlap = set(left) & set(right)
    if overlap:
        raise CombinatorialError(f"I and J are not disjoint: common entries {sorted(overlap)}")
    missing = set(range(1, n + 1)) - set(left) - set(right) - {i}
    extra = (set(left) | set(right) | {i}) - set(range(1, n + 1))
    if missing or extra:
        raise CombinatorialError(
            f"I={list(left)}, i={i}, J={list(right)} do not cover 1..{n}: "
            f"missing {sorted(missing)}, outside {sorted(extra)}"
        )
    return perm_sign(left + (i,) + right)


def insertion_sign(i: int, J: Iterable[int]) -> Sign:
    """(-1)^|{j in J : j < i}|, the sign of moving e_i into sorted position"""
    members = canonical(J)
    if i in members:
        raise CombinatorialError(f"Index {i} already lies in {list(members)}")
    below = sum(1 for j in members if j < i)
    return -1 if below % 2 else 1
