"""
Exact grid structure of H_n^k: ones, signed matrix units and the grid relation

Everything here runs in int64 arithmetic on the generators from
``hnk_integer``; products of these are 0/±1 matrices.
"""

import logging
from functools import reduce
from itertools import product
from math import comb
from typing import Dict, Tuple

import numpy as np

from combinat.signs import epsilon_one
from combinat.subsets import SubsetIndexer, Subset, complement, subsets_lex
from core.exceptions import CombinatorialError
from core.span import span_rank

from .bases import hnk_integer, uij_integer

logger = logging.getLogger(__name__)


def _bb(b, idx):
    size = b[0].shape[0]
    return reduce(np.matmul, [b[i - 1] @ b[i - 1].T for i in idx], np.eye(size, dtype=np.int64))


def _btb(b, idx):
    size = b[0].shape[1]
    return reduce(np.matmul, [b[j - 1].T @ b[j - 1] for j in idx], np.eye(size, dtype=np.int64))


def one(n: int, k: int, I: Subset, c: int, J: Subset) -> np.ndarray:
    """(bb*)_I b_c (b*b)_J for a partition I, {c}, J of 1..n"""
    b = hnk_integer(n, k)
    return _bb(b, I) @ b[c - 1] @ _btb(b, J)


def ones_decomposition(n: int, k: int, c: int) -> Dict:
    """
    Check b_c = sum over partitions of the ones (bb*)_I b_c (b*b)_J,
    and that each one equals epsilon(I, c, J) e_{J,I}.
    """
    if not 1 <= c <= n:
        raise CombinatorialError(f"Index c={c} out of range 1..{n}")
    b = hnk_integer(n, k)
    rows = SubsetIndexer(n, n - k).index_map()
    cols = SubsetIndexer(n, k - 1).index_map()
    total = np.zeros_like(b[0])
    ones_exact = True
    count = 0
    for I in subsets_lex(n, k - 1):
        if c in I:
            continue
        J = complement(I + (c,), n)
        term = one(n, k, I, c, J)
        expected = np.zeros_like(term)
        expected[rows[J], cols[I]] = epsilon_one(I, c, J, n)
        ones_exact = ones_exact and np.array_equal(term, expected)
        total = total + term
        count += 1
    residual = int(np.abs(total - b[c - 1]).max())
    return {
        "n": n,
        "k": k,
        "c": c,
        "ones": count,
        "ones_exact": bool(ones_exact),
        "residual": residual,
        "pass": bool(ones_exact and residual == 0),
    }


def uij_sign(u: np.ndarray, I: Subset, J: Subset, n: int, k: int) -> int:
    """Sign s with u = s e_{J,I}; fails if u is not a signed matrix unit there"""
    r = SubsetIndexer(n, n - k).rank(J)
    c = SubsetIndexer(n, k - 1).rank(I)
    value = int(u[r, c])
    if abs(value) != 1 or np.count_nonzero(u) != 1:
        raise CombinatorialError(
            f"u_IJ for I={list(I)}, J={list(J)} is not a signed matrix unit at ({r},{c})"
        )
    return value


def grid_family(n: int, k: int) -> Dict[Tuple[Subset, Subset], Tuple[int, np.ndarray]]:
    """All (I, J) -> (epsilon(IJ), u_IJ) over H_n^k"""
    family = {}
    for I in subsets_lex(n, k - 1):
        for J in subsets_lex(n, n - k):
            u = uij_integer(n, k, I, J)
            family[(I, J)] = (uij_sign(u, I, J, n, k), u)
    logger.debug(f"Grid family of H_{n}^{k} has {len(family)} elements")
    return family


def check_grid_relation(n: int, k: int) -> Dict:
    """
    eps(IJ)u_IJ [eps(IJ')u_IJ']* eps(I'J')u_I'J' = eps(I'J)u_I'J
    for all I, I' and J, J', in exact integer arithmetic.
    """
    family = grid_family(n, k)
    signed = {key: sign * u for key, (sign, u) in family.items()}
    Is = subsets_lex(n, k - 1)
    Js = subsets_lex(n, n - k)
    failures = []
    checked = 0
    for I, J, J2 in product(Is, Js, Js):
        left = signed[(I, J)] @ signed[(I, J2)].T
        for I2 in Is:
            checked += 1
            if not np.array_equal(left @ signed[(I2, J2)], signed[(I2, J)]):
                failures.append({"I": list(I), "J": list(J), "I2": list(I2), "J2": list(J2)})
    if failures:
        logger.warning(f"Grid relation fails on {len(failures)} of {checked} triples for H_{n}^{k}")
    return {
        "n": n,
        "k": k,
        "triples": checked,
        "failures": failures[:10],
        "pass": not failures,
    }


def grid_closure_rank(n: int, k: int, tol: float = 1e-9) -> Dict:
    """The u_IJ span all C(n,n-k) C(n,k-1) matrix units"""
    family = grid_family(n, k)
    rank = span_rank([u.astype(np.float64) for _, u in family.values()], tol)
    expected = comb(n, n - k) * comb(n, k - 1)
    return {"n": n, "k": k, "rank": rank, "expected": expected, "pass": rank == expected}


def sum_identities(n: int, k: int) -> Dict:
    """sum_i b_i b_i* = k 1 and sum_i b_i* b_i = (n - k + 1) 1, exactly"""
    b = hnk_integer(n, k)
    rows, cols = b[0].shape
    left = sum(m @ m.T for m in b)
    right = sum(m.T @ m for m in b)
    left_ok = np.array_equal(left, k * np.eye(rows, dtype=np.int64))
    right_ok = np.array_equal(right, (n - k + 1) * np.eye(cols, dtype=np.int64))
    return {"n": n, "k": k, "row_sum": bool(left_ok), "column_sum": bool(right_ok), "pass": bool(left_ok and right_ok)}
