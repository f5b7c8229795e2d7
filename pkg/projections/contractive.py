"""
Contractive projections onto H_n^k and Phi_n

P_n^k maps the ternary envelope of H_n^k (all C(n,n-k) x C(n,k-1) matrices)
onto span{b_i^{n,k}}; P^n maps the ternary envelope of Phi_n, the tuples
x_1 ⊕ ... ⊕ x_n with x_i in T(H_n^i), onto span{u_1, ..., u_n}.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from combinat.subsets import canonical, complement, subsets_lex
from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import CombinatorialError, MatrixShapeError, ProjectionError
from core.linalg import (
    Element,
    add,
    as_matrix,
    complex_gaussian,
    element_norm,
    frobenius,
    linear_combination,
    scale,
)
from core.span import coordinates, flatten, stack, unflatten
from spaces.bases import hnk_integer, hnk_matrices
from triple.products import mul, star

logger = logging.getLogger(__name__)

Shape = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class ProjectionSpec:
    """
    A linear idempotent on a space of matrices (or block tuples when
    tuple_domain is set), given by its action and a basis of its range.
    """

    kind: str
    n: int
    k: Optional[int]
    domain: Tuple[Shape, ...]
    action: Callable[[Element], Element]
    range_basis: Tuple[Element, ...]
    tuple_domain: bool = False
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("pnk", "pn", "custom"):
            raise ProjectionError(f"Unknown projection kind {self.kind!r}")
        if not self.range_basis:
            raise ProjectionError(f"{self.label}: the range basis is empty")
        if not self.tuple_domain and len(self.domain) != 1:
            raise MatrixShapeError(f"{self.label}: a matrix domain has exactly one shape, got {self.domain}")

    @property
    def label(self) -> str:
        return self.name or self.kind

    def check_shape(self, x: Element) -> Element:
        if self.tuple_domain:
            if not isinstance(x, tuple) or len(x) != len(self.domain):
                raise MatrixShapeError(f"{self.label}: expected a tuple of {len(self.domain)} blocks")
            for block, shape in zip(x, self.domain):
                if np.shape(block) != shape:
                    raise MatrixShapeError(f"{self.label}: block of shape {np.shape(block)}, expected {shape}")
            return x
        if isinstance(x, tuple) or np.shape(x) != self.domain[0]:
            raise MatrixShapeError(f"{self.label}: input of shape {np.shape(x)}, expected {self.domain[0]}")
        return x

    def __call__(self, x: Element) -> Element:
        return self.action(self.check_shape(x))

    def coordinates(self, x: Element) -> np.ndarray:
        """Coordinates of P(x) in the range basis"""
        return coordinates(self(x), list(self.range_basis))

    def random_element(self, rng: np.random.Generator) -> Element:
        blocks = tuple(complex_gaussian(rng, shape) for shape in self.domain)
        return blocks if self.tuple_domain else blocks[0]

    def unit_elements(self) -> List[Element]:
        """The matrix units of the domain, block by block"""
        blocks = tuple(np.zeros(shape, dtype=np.complex128) for shape in self.domain)
        template = blocks if self.tuple_domain else blocks[0]
        size = flatten(template).size
        eye = np.eye(size, dtype=np.complex128)
        return [unflatten(eye[j], template) for j in range(size)]

    def functionals(self) -> List[Element]:
        """
        Matrices a_i with tr(a_i* x) equal to the i-th range coordinate of P(x).
        """
        units = self.unit_elements()
        images = stack([self(e) for e in units])
        coeffs, *_ = np.linalg.lstsq(stack(list(self.range_basis)), images, rcond=None)
        template = units[0]
        return [unflatten(np.conj(row), template) for row in coeffs]


def _check_k(n: int, k: int):
    if n < 1 or not 1 <= k <= n:
        raise CombinatorialError(f"k={k} out of range 1..{n}")


def pnk_coefficients(n: int, k: int, x) -> np.ndarray:
    """tr(x b_i*) / C(n-1, k-1) for i = 1..n"""
    _check_k(n, k)
    b = hnk_matrices(n, k)
    x = as_matrix(x, "x")
    if x.shape != b[0].shape:
        raise MatrixShapeError(f"P_{n}^{k} acts on {b[0].shape[0]}x{b[0].shape[1]} matrices, got {x.shape}")
    return np.array([np.vdot(bi, x) for bi in b]) / comb(n - 1, k - 1)


def pnk_apply(n: int, k: int, x) -> np.ndarray:
    """P_n^k x = (1 / C(n-1, k-1)) sum_i tr(x b_i*) b_i"""
    return linear_combination(pnk_coefficients(n, k, x), hnk_matrices(n, k))


def _blocks_of(n: int, x: Sequence) -> Tuple[np.ndarray, ...]:
    if not isinstance(x, (tuple, list)) or len(x) != n:
        raise MatrixShapeError(f"P^{n} acts on tuples of {n} blocks")
    blocks = tuple(as_matrix(block, f"block {i}") for i, block in enumerate(x, start=1))
    for i, block in enumerate(blocks, start=1):
        expected = (comb(n, n - i), comb(n, i - 1))
        if block.shape != expected:
            raise MatrixShapeError(f"P^{n}: block {i} has shape {block.shape}, expected {expected}")
    return blocks


def pn_coordinates(n: int, x: Sequence) -> np.ndarray:
    """Coefficients c_k of P^n x = sum_k c_k u_k"""
    blocks = _blocks_of(n, x)
    return sum(pnk_coefficients(n, i, block) for i, block in enumerate(blocks, start=1)) / n


def pn_apply(n: int, x: Sequence) -> Tuple[np.ndarray, ...]:
    """P^n(x_1 ⊕ ... ⊕ x_n) = (1/n) sum_i (P_n^i x_i, ..., P_n^i x_i)"""
    c = pn_coordinates(n, x)
    return tuple(linear_combination(c, hnk_matrices(n, j)) for j in range(1, n + 1))


def pn_coordinates_exact(n: int, x: Sequence) -> List[Fraction]:
    """pn_coordinates in rational arithmetic for integer-valued blocks"""
    blocks = _blocks_of(n, x)
    integral = []
    for block in blocks:
        if np.any(block.imag) or np.any(block.real != np.rint(block.real)):
            raise ProjectionError(f"Exact P^{n} coordinates need integer-valued blocks")
        integral.append(np.rint(block.real).astype(np.int64))
    coeffs = []
    for k in range(n):
        total = Fraction(0)
        for i, block in enumerate(integral, start=1):
            trace = int(np.sum(block * hnk_integer(n, i)[k]))
            total += Fraction(trace, comb(n - 1, i - 1))
        coeffs.append(total / n)
    return coeffs


def pnk_projection(n: int, k: int) -> ProjectionSpec:
    _check_k(n, k)
    b = hnk_matrices(n, k)
    return ProjectionSpec(
        "pnk", n, k, (b[0].shape,), partial(pnk_apply, n, k), tuple(b), name=f"P_{n}^{k}"
    )


def phi_domain(n: int) -> Tuple[Shape, ...]:
    return tuple((comb(n, n - i), comb(n, i - 1)) for i in range(1, n + 1))


def phi_generators(n: int) -> List[Tuple[np.ndarray, ...]]:
    """u_1..u_n of Phi_n as tuples of complex blocks, one per level"""
    per_level = [hnk_matrices(n, i) for i in range(1, n + 1)]
    return [tuple(level[k] for level in per_level) for k in range(n)]


def phi_integer_generators(n: int) -> List[Tuple[np.ndarray, ...]]:
    per_level = [hnk_integer(n, i) for i in range(1, n + 1)]
    return [tuple(level[k] for level in per_level) for k in range(n)]


def pn_projection(n: int) -> ProjectionSpec:
    if n < 1:
        raise CombinatorialError(f"Dimension n must be at least 1, got {n}")
    return ProjectionSpec(
        "pn",
        n,
        None,
        phi_domain(n),
        partial(pn_apply, n),
        tuple(phi_generators(n)),
        tuple_domain=True,
        name=f"P^{n}",
    )


def custom_projection(
    name: str,
    action: Callable[[Element], Element],
    domain: Iterable[Shape],
    range_basis: Sequence[Element],
    tuple_domain: bool = False,
) -> ProjectionSpec:
    return ProjectionSpec(
        "custom", len(range_basis), None, tuple(domain), action, tuple(range_basis), tuple_domain, name
    )


def generator_word(elements: Sequence[Element], I: Iterable[int], J: Iterable[int], ground: int) -> Element:
    """
    (uu*)_{I-J} u_{c_1} u_{d_1}* u_{c_2} ... u_{d_s}* u_{c_{s+1}} (u*u)_{J-I}

    over u_1..u_ground, where I ∩ J = {d_1 < ... < d_s} and c_1 < ... < c_{s+1}
    enumerate the complement of I ∪ J in 1..ground. Needs |I| + |J| = ground - 1.
    """
    I, J = canonical(I), canonical(J)
    if len(I) + len(J) != ground - 1:
        raise CombinatorialError(f"|I| + |J| must be {ground - 1}, got {len(I)} + {len(J)}")
    if any(i > ground for i in I + J) or ground > len(elements):
        raise CombinatorialError(f"I={list(I)}, J={list(J)} must lie in 1..{ground} <= {len(elements)}")
    u = list(elements)
    d = sorted(set(I) & set(J))
    c = list(complement(set(I) | set(J), ground))
    factors = []
    for i in I:
        if i not in J:
            factors += [u[i - 1], star(u[i - 1])]
    factors.append(u[c[0] - 1])
    for dj, cj in zip(d, c[1:]):
        factors += [star(u[dj - 1]), u[cj - 1]]
    for j in J:
        if j not in I:
            factors += [star(u[j - 1]), u[j - 1]]
    return mul(*factors)


def envelope_words(n: int) -> List[Tuple[int, Tuple[int, ...], Tuple[int, ...]]]:
    """(i, I, J) with |I| = i - 1 and |J| = n - i for the spanning words of T(H_n)"""
    return [
        (i, I, J)
        for i in range(1, n + 1)
        for I in subsets_lex(n, i - 1)
        for J in subsets_lex(n, n - i)
    ]


def one_coefficient(n: int, i: int) -> Fraction:
    """P^n(I u_k J) = u_k / (n C(n-1, i-1)) for a one with |I| = i - 1"""
    _check_k(n, i)
    return Fraction(1, n * comb(n - 1, i - 1))


def coherence_identity(n: int, i: int) -> Dict:
    """(1/(n+1)) (1/C(n,i) + 1/C(n,i-1)) against 1/(n C(n-1,i-1))"""
    _check_k(n, i)
    lifted = Fraction(1, n + 1) * (Fraction(1, comb(n, i)) + Fraction(1, comb(n, i - 1)))
    expected = one_coefficient(n, i)
    return {"n": n, "i": i, "lifted": lifted, "expected": expected, "pass": lifted == expected}


def support_limit_coefficients(m: int, ns: Iterable[int]) -> List[Tuple[int, Fraction]]:
    """1 / ((n + m + 1) C(n + m, n)), the P^{n+m+1} weight of a one with n factors on one side"""
    return [(n, Fraction(1, (n + m + 1) * comb(n + m, n))) for n in ns]


def check_coherence(n: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Dict:
    """
    P^{n+1} restricted to T(H_n) equals P^n.

    Every spanning word of T(H_n) is evaluated twice in integer arithmetic:
    over u_1..u_n of Phi_n and over the first n generators of Phi_{n+1}.
    The exact P^n coordinates, padded by 0, must match the P^{n+1} ones.
    Ones must land on 1/(n C(n-1,i-1)) and non-ones on 0.
    """
    if n < 1:
        raise CombinatorialError(f"Dimension n must be at least 1, got {n}")
    small = phi_integer_generators(n)
    large = phi_integer_generators(n + 1)
    ones = non_ones = 0
    worst = Fraction(0)
    failures = []
    for i, I, J in envelope_words(n):
        here = pn_coordinates_exact(n, generator_word(small, I, J, n))
        there = pn_coordinates_exact(n + 1, generator_word(large, I, J, n))
        gap = max(abs(a - b) for a, b in zip(here + [Fraction(0)], there))
        worst = max(worst, gap)
        if set(I) & set(J):
            non_ones += 1
            expected = [Fraction(0)] * n
        else:
            ones += 1
            k = complement(set(I) | set(J), n)[0]
            expected = [one_coefficient(n, i) if j == k else Fraction(0) for j in range(1, n + 1)]
        if gap > cfg.structural_tol or here != expected:
            failures.append({"i": i, "I": list(I), "J": list(J), "gap": float(gap)})
    logger.info(
        f"Coherence P^{n + 1}|T(H_{n}) = P^{n}: {ones} ones, {non_ones} non-ones, max gap {float(worst):.3e}"
    )
    return {
        "suite": "projection",
        "check": "coherence",
        "n": n,
        "ones": ones,
        "non_ones": non_ones,
        "max_residual": float(worst),
        "failures": failures[:10],
        "pass": not failures,
    }


def check_idempotent(P: ProjectionSpec, cfg: ToleranceConfig = DEFAULT_CONFIG, samples: int = 10) -> Dict:
    """P fixes its range basis and P(Px) = Px on random x"""
    worst = max(frobenius(add(P(r), scale(r, -1.0))) for r in P.range_basis)
    rng = np.random.default_rng([cfg.seed, 4, P.n])
    for _ in range(samples):
        px = P(P.random_element(rng))
        worst = max(worst, frobenius(add(P(px), scale(px, -1.0))))
    return {"projection": P.label, "max_residual": worst, "pass": worst <= cfg.structural_tol}


def require_idempotent(P: ProjectionSpec, cfg: ToleranceConfig = DEFAULT_CONFIG):
    report = check_idempotent(P, cfg, samples=3)
    if not report["pass"]:
        raise ProjectionError(f"{P.label} is not idempotent: residual {report['max_residual']:.3e}")


def check_contractive(P: ProjectionSpec, cfg: ToleranceConfig = DEFAULT_CONFIG, samples: int = 200) -> Dict:
    """||Px|| <= ||x|| + 1e-10 on random x"""
    rng = np.random.default_rng([cfg.seed, 5, P.n])
    worst = -np.inf
    for _ in range(samples):
        x = P.random_element(rng)
        worst = max(worst, element_norm(P(x), cfg) - element_norm(x, cfg))
    logger.info(f"{P.label}: worst ||Px|| - ||x|| over {samples} samples is {worst:.3e}")
    return {"projection": P.label, "samples": samples, "max_excess": float(worst), "pass": worst <= 1e-10}

