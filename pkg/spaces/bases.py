"""
Concrete Hilbertian operator spaces

Builders for the column and row spaces, the signed combinatorial spaces
H_n^k, the CAR space Phi_n in its block-diagonal realization, intersections
of these, and the signed matrix units u_{I,J} of a grid.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from combinat.signs import epsilon_one
from combinat.subsets import SubsetIndexer, canonical, complement, subsets_lex
from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import CombinatorialError, MatrixShapeError
from core.linalg import Element, complex_gaussian, direct_sum, element_norm, linear_combination

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComponentShape:
    """Ambient shape of one block; k is set for H_n^k blocks"""

    rows: int
    cols: int
    label: str
    k: Optional[int] = None


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    name: str
    n: int
    components: Tuple[ComponentShape, ...]
    basis: Tuple[Tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        if len(self.basis) != self.n:
            raise MatrixShapeError(f"{self.name}: expected {self.n} basis elements, got {len(self.basis)}")
        for i, element in enumerate(self.basis):
            if len(element) != len(self.components):
                raise MatrixShapeError(
                    f"{self.name}: basis element {i} has {len(element)} blocks, "
                    f"expected {len(self.components)}"
                )
            for block, shape in zip(element, self.components):
                if block.shape != (shape.rows, shape.cols):
                    raise MatrixShapeError(
                        f"{self.name}: block of shape {block.shape} in component {shape.label} "
                        f"({shape.rows}x{shape.cols})"
                    )

    def element(self, i: int) -> Tuple[np.ndarray, ...]:
        """The i-th basis element, 1-based as in b_1..b_n"""
        return self.basis[i - 1]

    def combine(self, coeffs: Sequence[complex]) -> Tuple[np.ndarray, ...]:
        """sum_i coeffs[i] b_{i+1}"""
        if len(coeffs) != self.n:
            raise MatrixShapeError(f"{self.name}: need {self.n} coefficients, got {len(coeffs)}")
        return linear_combination(coeffs, list(self.basis))

    def component_matrices(self, c: int) -> List[np.ndarray]:
        return [element[c] for element in self.basis]

    def dense(self, i: int) -> np.ndarray:
        """Basis element i placed block-diagonally in one matrix"""
        return direct_sum(list(self.element(i)))

    @property
    def levels(self) -> Tuple[int, ...]:
        return tuple(shape.k for shape in self.components if shape.k is not None)


@dataclass(frozen=True, eq=False)
class IntersectionSpace:
    """Diagonal embedding x -> (x, x, ...) of spaces sharing a basis index"""

    parts: Tuple[OperatorBasis, ...]
    name: str = ""
    _combined: OperatorBasis = field(init=False, repr=False)

    def __post_init__(self):
        if not self.parts:
            raise MatrixShapeError("An intersection needs at least one part")
        dims = {part.n for part in self.parts}
        if len(dims) != 1:
            raise MatrixShapeError(
                f"Intersection parts have different dimensions: "
                f"{[(part.name, part.n) for part in self.parts]}"
            )
        label = self.name or " ∩ ".join(part.name for part in self.parts)
        n = self.parts[0].n
        combined = OperatorBasis(
            name=label,
            n=n,
            components=tuple(shape for part in self.parts for shape in part.components),
            basis=tuple(
                tuple(block for part in self.parts for block in part.basis[i]) for i in range(n)
            ),
        )
        object.__setattr__(self, "name", label)
        object.__setattr__(self, "_combined", combined)

    @property
    def n(self) -> int:
        return self._combined.n

    @property
    def components(self) -> Tuple[ComponentShape, ...]:
        return self._combined.components

    @property
    def basis(self) -> Tuple[Tuple[np.ndarray, ...], ...]:
        return self._combined.basis

    @property
    def levels(self) -> Tuple[int, ...]:
        return self._combined.levels

    def element(self, i: int):
        return self._combined.element(i)

    def combine(self, coeffs):
        return self._combined.combine(coeffs)

    def component_matrices(self, c: int):
        return self._combined.component_matrices(c)

    def dense(self, i: int):
        return self._combined.dense(i)

    def as_basis(self) -> OperatorBasis:
        return self._combined


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


def _check_n(n: int):
    if n < 1:
        raise CombinatorialError(f"Dimension n must be at least 1, got {n}")


def build_column(n: int) -> OperatorBasis:
    """C_n = span{e_{i1}}"""
    _check_n(n)
    eye = np.eye(n, dtype=np.complex128)
    basis = tuple((_frozen(eye[:, [i]].copy()),) for i in range(n))
    return OperatorBasis(f"C_{n}", n, (ComponentShape(n, 1, f"C_{n}"),), basis)


def build_row(n: int) -> OperatorBasis:
    """R_n = span{e_{1j}}"""
    _check_n(n)
    eye = np.eye(n, dtype=np.complex128)
    basis = tuple((_frozen(eye[[i], :].copy()),) for i in range(n))
    return OperatorBasis(f"R_{n}", n, (ComponentShape(1, n, f"R_{n}"),), basis)


@lru_cache(maxsize=None)
def hnk_integer(n: int, k: int) -> Tuple[np.ndarray, ...]:
    """
    Integer matrices b_1..b_n of H_n^k.

    Rows are the lexicographic (n-k)-subsets J, columns the lexicographic
    (k-1)-subsets I; entry (J, I) of b_i is epsilon(I, i, J) when I, {i}, J
    partition 1..n.
    """
    _check_n(n)
    if not 1 <= k <= n:
        raise CombinatorialError(f"k={k} out of range 1..{n} for H_n^k")
    rows = SubsetIndexer(n, n - k).index_map()
    cols = subsets_lex(n, k - 1)
    mats = []
    for i in range(1, n + 1):
        b = np.zeros((comb(n, n - k), comb(n, k - 1)), dtype=np.int64)
        for c, I in enumerate(cols):
            if i in I:
                continue
            J = complement(I + (i,), n)
            b[rows[J], c] = epsilon_one(I, i, J, n)
        mats.append(_frozen(b))
    logger.debug(f"Built H_{n}^{k} generators of shape {mats[0].shape}")
    return tuple(mats)


def hnk_matrices(n: int, k: int) -> List[np.ndarray]:
    return [m.astype(np.complex128) for m in hnk_integer(n, k)]


def build_hnk(n: int, k: int) -> OperatorBasis:
    mats = hnk_matrices(n, k)
    rows, cols = mats[0].shape
    return OperatorBasis(
        f"H_{n}^{k}",
        n,
        (ComponentShape(rows, cols, f"H_{n}^{k}", k),),
        tuple((_frozen(m),) for m in mats),
    )


def build_phi(n: int) -> OperatorBasis:
    """Phi_n as the block diagonal of b_i^{n,1}, ..., b_i^{n,n}"""
    _check_n(n)
    per_level = [hnk_matrices(n, k) for k in range(1, n + 1)]
    basis = tuple((_frozen(direct_sum([level[i] for level in per_level])),) for i in range(n))
    rows, cols = basis[0][0].shape
    logger.info(f"Built Phi_{n} with ambient shape {rows}x{cols}")
    return OperatorBasis(f"Phi_{n}", n, (ComponentShape(rows, cols, f"Phi_{n}"),), basis)


def intersect(parts: Iterable[OperatorBasis], name: str = "") -> IntersectionSpace:
    parts = tuple(p.as_basis() if isinstance(p, IntersectionSpace) else p for p in parts)
    return IntersectionSpace(parts, name)


def build_intersection(n: int, levels: Iterable[int]) -> IntersectionSpace:
    """H_n^{k_1} ∩ ... ∩ H_n^{k_m} for the given ks, in ascending order"""
    ks = sorted(set(levels))
    if not ks:
        raise CombinatorialError("An intersection of H_n^k spaces needs at least one k")
    return intersect([build_hnk(n, k) for k in ks])


def build_space(kind: str, n: int, k: Optional[int] = None) -> OperatorBasis:
    """Look up a builder by name: column, row, hnk or phi"""
    if kind in ("column", "C", "Cn"):
        return build_column(n)
    if kind in ("row", "R", "Rn"):
        return build_row(n)
    if kind in ("hnk", "H", "Hnk"):
        if k is None:
            raise CombinatorialError("The hnk space needs k")
        return build_hnk(n, k)
    if kind in ("phi", "Phi", "Phin"):
        return build_phi(n)
    raise CombinatorialError(f"Unknown space kind {kind!r}")


def _product(mats: Sequence[np.ndarray], size: int, dtype) -> np.ndarray:
    out = np.eye(size, dtype=dtype)
    for m in mats:
        out = out @ m
    return out


def uij_integer(n: int, k: int, I: Iterable[int], J: Iterable[int]) -> np.ndarray:
    """
    (bb*)_{I-J} b_{c_1} b_{d_1}* ... b_{d_s}* b_{c_{s+1}} (b*b)_{J-I} over H_n^k

    with I ∩ J = {d_1 < ... < d_s} and (I ∪ J)^c = {c_1 < ... < c_{s+1}}.
    Evaluated in integer arithmetic; the result is ±e_{J,I}.
    """
    I = canonical(I)
    J = canonical(J)
    if len(I) != k - 1 or len(J) != n - k:
        raise CombinatorialError(
            f"u_IJ over H_{n}^{k} needs |I|={k - 1} and |J|={n - k}, got |I|={len(I)}, |J|={len(J)}"
        )
    if (I and I[-1] > n) or (J and J[-1] > n):
        raise CombinatorialError(f"I={list(I)} and J={list(J)} must lie in 1..{n}")
    b = hnk_integer(n, k)
    d = sorted(set(I) & set(J))
    c = sorted(set(complement(set(I) | set(J), n)))
    rows, cols = b[0].shape

    left = _product([b[i - 1] @ b[i - 1].T for i in I if i not in J], rows, np.int64)
    right = _product([b[j - 1].T @ b[j - 1] for j in J if j not in I], cols, np.int64)
    middle = b[c[0] - 1]
    for dj, cj in zip(d, c[1:]):
        middle = middle @ b[dj - 1].T @ b[cj - 1]
    return left @ middle @ right


def build_uij(n: int, k: int, I: Iterable[int], J: Iterable[int]) -> np.ndarray:
    return uij_integer(n, k, I, J).astype(np.complex128)


def orthonormality_defect(space, cfg: ToleranceConfig = DEFAULT_CONFIG, samples: int = 100) -> Dict:
    """max |‖sum λ_i b_i‖ - ‖λ‖_2| over seeded random λ in C^n"""
    rng = np.random.default_rng([cfg.seed, 7, space.n])
    worst = 0.0
    for _ in range(samples):
        lam = complex_gaussian(rng, space.n)
        worst = max(worst, abs(element_norm(space.combine(lam), cfg) - float(np.linalg.norm(lam))))
    logger.info(f"Orthonormality defect of {space.name}: {worst:.3e}")
    return {"suite": "orthonormal", "space": space.name, "n": space.n, "max_residual": worst, "pass": worst <= 1e-8}
