"""
Antisymmetric Fock space over C^n

Level m of the Fock space is spanned by e_S for the m-subsets S of 1..n in
lexicographic order. Creation by e_i sends e_S to insertion_sign(i, S)
e_{S ∪ {i}}.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import norm as sparse_norm

from combinat.signs import epsilon_one, insertion_sign
from combinat.subsets import SubsetIndexer, Subset, complement, subsets_lex
from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import CombinatorialError, MatrixShapeError
from core.linalg import complex_gaussian, operator_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FockLevel:
    """The m-th antisymmetric power of C^n"""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.m <= self.n:
            raise CombinatorialError(f"Fock level m={self.m} out of range for n={self.n}")

    @property
    def dim(self) -> int:
        return comb(self.n, self.m)

    @property
    def basis(self) -> List[Subset]:
        return subsets_lex(self.n, self.m)

    def index(self, subset) -> int:
        return SubsetIndexer(self.n, self.m).rank(subset)


def _check_degree(n: int, m: int):
    if n < 1 or not 0 <= m <= n - 1:
        raise CombinatorialError(f"Creation degree m={m} out of range 0..{n - 1} for n={n}")


@lru_cache(maxsize=None)
def _unit_creation(n: int, m: int, i: int) -> np.ndarray:
    _check_degree(n, m)
    target = SubsetIndexer(n, m + 1).index_map()
    out = np.zeros((comb(n, m + 1), comb(n, m)), dtype=np.int64)
    for col, S in enumerate(subsets_lex(n, m)):
        if i in S:
            continue
        out[target[tuple(sorted(S + (i,)))], col] = insertion_sign(i, S)
    out.setflags(write=False)
    return out


def _as_vector(h, n: int) -> np.ndarray:
    vec = np.asarray(h, dtype=np.complex128).ravel()
    if vec.shape != (n,):
        raise MatrixShapeError(f"Vector h must have length {n}, got shape {np.shape(h)}")
    return vec


def creation(n: int, m: int, h) -> np.ndarray:
    """C(n, m+1) x C(n, m) matrix of h ∧ (.) on the m-th level"""
    _check_degree(n, m)
    vec = _as_vector(h, n)
    out = np.zeros((comb(n, m + 1), comb(n, m)), dtype=np.complex128)
    for i in np.flatnonzero(vec):
        out += vec[i] * _unit_creation(n, m, int(i) + 1)
    return out


def creation_unit(n: int, m: int, i: int) -> np.ndarray:
    """creation(n, m, e_i) without the linear combination"""
    if not 1 <= i <= n:
        raise CombinatorialError(f"Index i={i} out of range 1..{n}")
    return _unit_creation(n, m, i).astype(np.complex128)


def annihilation(n: int, m: int, h) -> np.ndarray:
    """Adjoint of creation(n, m, h)"""
    return creation(n, m, h).conj().T


def full_fock_creation(n: int, i: int) -> sparse.csr_matrix:
    """
    c_i on the whole 2^n-dimensional Fock space, levels stacked by degree.

    Built from occupation bitmasks: bit j-1 of the mask is set when j is in S.
    """
    if not 1 <= i <= n:
        raise CombinatorialError(f"Index i={i} out of range 1..{n}")
    offsets = np.concatenate([[0], np.cumsum([comb(n, m) for m in range(n + 1)])])
    position: Dict[int, int] = {}
    for m in range(n + 1):
        for r, S in enumerate(subsets_lex(n, m)):
            position[sum(1 << (j - 1) for j in S)] = int(offsets[m]) + r
    bit = 1 << (i - 1)
    rows, cols, vals = [], [], []
    for mask, col in position.items():
        if mask & bit:
            continue
        below = bin(mask & (bit - 1)).count("1")
        rows.append(position[mask | bit])
        cols.append(col)
        vals.append(-1.0 if below % 2 else 1.0)
    dim = 1 << n
    return sparse.csr_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=np.complex128)


def car_check(n: int, cfg: ToleranceConfig = DEFAULT_CONFIG, samples: int = 10, norm_cap: int = 8) -> Dict:
    """
    c_i c_j + c_j c_i = 0 and c_i c_j* + c_j* c_i = delta_ij 1 on the full Fock space.

    Residuals are Frobenius norms of sparse matrices. For n <= norm_cap the
    Hilbertian identity ||sum lambda_i c_i|| = ||lambda||_2 is sampled too.
    """
    if n < 1:
        raise CombinatorialError(f"n must be at least 1, got {n}")
    ops = [full_fock_creation(n, i) for i in range(1, n + 1)]
    identity = sparse.identity(1 << n, dtype=np.complex128, format="csr")
    max_residual = 0.0
    pairs = 0
    for i, ci in enumerate(ops):
        for j, cj in enumerate(ops):
            cj_star = cj.conj().T
            anti = sparse_norm(ci @ cj + cj @ ci)
            mixed = ci @ cj_star + cj_star @ ci
            if i == j:
                mixed = mixed - identity
            max_residual = max(max_residual, anti, sparse_norm(mixed))
            pairs += 1

    hilbertian_defect = None
    if n <= norm_cap:
        rng = np.random.default_rng([cfg.seed, n])
        hilbertian_defect = 0.0
        for _ in range(samples):
            lam = complex_gaussian(rng, n)
            combo = sum((lam[i] * ops[i] for i in range(n)), sparse.csr_matrix((1 << n, 1 << n)))
            defect = abs(operator_norm(combo.toarray(), cfg) - np.linalg.norm(lam))
            hilbertian_defect = max(hilbertian_defect, defect)

    passed = max_residual <= cfg.iterative_tol and (
        hilbertian_defect is None or hilbertian_defect <= 1e-8
    )
    logger.info(f"CAR check n={n}: {pairs} pairs, max residual {max_residual:.3e}")
    return {
        "suite": "car",
        "n": n,
        "pairs": pairs,
        "max_residual": float(max_residual),
        "hilbertian_defect": hilbertian_defect,
        "pass": bool(passed),
    }


def unitary_V(n: int, k: int) -> np.ndarray:
    """Permutation e_S -> e_{S^c} from level k to level n - k"""
    if n < 1 or not 0 <= k <= n:
        raise CombinatorialError(f"Degree k={k} out of range 0..{n} for n={n}")
    target = SubsetIndexer(n, n - k).index_map()
    out = np.zeros((comb(n, n - k), comb(n, k)), dtype=np.complex128)
    for col, S in enumerate(subsets_lex(n, k)):
        out[target[complement(S, n)], col] = 1
    return out


def w_sign(S: Sequence[int], n: int, i: int) -> int:
    """epsilon(i, S - {i}) epsilon(S - {i}, i, S^c) for i in S"""
    rest = tuple(x for x in S if x != i)
    if len(rest) == len(S):
        raise CombinatorialError(f"Index {i} is not in {list(S)}")
    return insertion_sign(i, rest) * epsilon_one(rest, i, complement(S, n), n)


def unitary_W(n: int, k: int) -> np.ndarray:
    """
    Sign diagonal on level k. The entry at S does not depend on which i in S
    is used; the first element is taken. The empty set gets +1.
    """
    if n < 1 or not 0 <= k <= n:
        raise CombinatorialError(f"Degree k={k} out of range 0..{n} for n={n}")
    diagonal = [w_sign(S, n, S[0]) if S else 1 for S in subsets_lex(n, k)]
    return np.diag(np.asarray(diagonal, dtype=np.complex128))
