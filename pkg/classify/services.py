"""
Rank-one classification of collinear partial-isometry families

For a family u_1..u_n of pairwise collinear partial isometries the products
of the left projections u_j u_j* (and of the right ones u_j* u_j) commute, so
the sets J with a nonzero product are closed under taking subsets. The sizes
of the largest such sets, together with the components k where
(uu*)_{1..k-1} u_k (u*u)_{k+1..n} survives, identify the span of the family
among the intersections of H_n^k spaces.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import numpy as np

from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import ClassificationError, PreconditionError
from core.linalg import Element, add, element_norm, frobenius, scale
from core.span import flatten
from triple.products import mul, require_partial_isometry, star, ternary
from triple.relations import is_collinear

logger = logging.getLogger(__name__)

DEGENERACY_BAND = 0.5


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    i_R: int
    i_L: int
    components: Tuple[int, ...]
    verdict: str

    def as_dict(self) -> Dict:
        return {
            "n": self.n,
            "i_R": self.i_R,
            "i_L": self.i_L,
            "components": list(self.components),
            "verdict": self.verdict,
        }


def validate_family(family: Sequence[Element], cfg: ToleranceConfig = DEFAULT_CONFIG) -> List[Element]:
    """Every member a partial isometry, every pair collinear"""
    family = list(family)
    if not family:
        raise PreconditionError("A family needs at least one element")
    for i, u in enumerate(family, start=1):
        require_partial_isometry(u, cfg, f"u_{i}")
    for (i, u), (j, v) in combinations(enumerate(family, start=1), 2):
        if not is_collinear(u, v, cfg):
            raise PreconditionError(f"u_{i} and u_{j} are not collinear")
    return family


def _nonzero(element: Element, cfg: ToleranceConfig, context: str) -> bool:
    norm = element_norm(element, cfg)
    if cfg.structural_tol < norm < DEGENERACY_BAND:
        logger.warning(f"{context}: norm {norm:.3e} is neither 0 nor at least 1, numerically degenerate input")
    return norm > cfg.structural_tol


def _sides(family: Sequence[Element]) -> Dict[str, List[Element]]:
    return {
        "left": [mul(u, star(u)) for u in family],
        "right": [mul(star(u), u) for u in family],
    }


def projection_product(family: Sequence[Element], J: Sequence[int], side: str = "left") -> Element:
    """prod_{j in J} u_j u_j* (side="left") or u_j* u_j (side="right"), in the given order"""
    factors = [_sides(family)[side][j - 1] for j in J]
    if not factors:
        raise PreconditionError("A projection product needs at least one index")
    return mul(*factors)


def _largest_nonzero(projections: List[Element], cfg: ToleranceConfig, side: str) -> int:
    # extend only the surviving sets, one new index above the current maximum
    frontier = {(j,): p for j, p in enumerate(projections, start=1) if _nonzero(p, cfg, f"{side} u_{j}")}
    size = 1 if frontier else 0
    while frontier:
        grown = {}
        for J, product in frontier.items():
            for j in range(J[-1] + 1, len(projections) + 1):
                candidate = mul(product, projections[j - 1])
                if _nonzero(candidate, cfg, f"{side} product over {list(J) + [j]}"):
                    grown[J + (j,)] = candidate
        if grown:
            size += 1
        frontier = grown
    return size


def _invariants(family: List[Element], cfg: ToleranceConfig) -> Tuple[int, int]:
    sides = _sides(family)
    return _largest_nonzero(sides["left"], cfg, "left"), _largest_nonzero(sides["right"], cfg, "right")


def invariants(family: Sequence[Element], cfg: ToleranceConfig = DEFAULT_CONFIG) -> Tuple[int, int]:
    """
    (i_R, i_L): the largest |J| with prod_{j in J} u_j u_j* nonzero, and the
    same for u_j* u_j.
    """
    return _invariants(validate_family(family, cfg), cfg)


def _components(family: List[Element], cfg: ToleranceConfig) -> List[int]:
    n = len(family)
    sides = _sides(family)
    found = []
    for k in range(1, n + 1):
        factors = sides["left"][: k - 1] + [family[k - 1]] + sides["right"][k:]
        if _nonzero(mul(*factors), cfg, f"component test k={k}"):
            found.append(k)
    return found


def detect_components(family: Sequence[Element], cfg: ToleranceConfig = DEFAULT_CONFIG) -> List[int]:
    """Sorted k with (uu*)_{1..k-1} u_k (u*u)_{k+1..n} nonzero"""
    return _components(validate_family(family, cfg), cfg)


def check_consistency(n: int, i_R: int, i_L: int, components: Sequence[int]):
    """i_R = max(components) and i_L = n - min(components) + 1"""
    if not components:
        raise ClassificationError(f"No component detected for a family of size {n}: numerical degeneracy")
    if i_R != max(components) or i_L != n - min(components) + 1:
        raise ClassificationError(
            f"Invariants i_R={i_R}, i_L={i_L} contradict components {list(components)} "
            f"for n={n}: numerical degeneracy"
        )


def verdict_label(n: int, components: Sequence[int]) -> str:
    ks = sorted(components)
    if n > 1 and ks == list(range(1, n + 1)):
        return f"Phi_{n}"
    if ks == [1]:
        return f"C_{n}"
    if ks == [n]:
        return f"R_{n}"
    return " ∩ ".join(f"H_{n}^{k}" for k in ks)


def classify(family: Sequence[Element], cfg: ToleranceConfig = DEFAULT_CONFIG) -> ClassificationReport:
    """
    Identify span(family) as C_n, R_n, Phi_n or an intersection of H_n^k.

    Raises:
        PreconditionError: the family is not pairwise collinear
        ClassificationError: the invariants contradict the detected components
    """
    family = validate_family(family, cfg)
    n = len(family)
    i_R, i_L = _invariants(family, cfg)
    components = _components(family, cfg)
    check_consistency(n, i_R, i_L, components)
    report = ClassificationReport(n, i_R, i_L, tuple(components), verdict_label(n, components))
    logger.info(f"Classified family of size {n}: {report.verdict} (i_R={i_R}, i_L={i_L})")
    return report


def _unimodular_multiple(p: Element, u: Element, cfg: ToleranceConfig) -> bool:
    a = flatten(u)
    c = np.vdot(a, flatten(p)) / np.vdot(a, a)
    return abs(abs(c) - 1.0) <= cfg.structural_tol and frobenius(add(p, scale(u, -c))) <= cfg.structural_tol


def tro_dichotomy(family: Sequence[Element], cfg: ToleranceConfig = DEFAULT_CONFIG) -> str:
    """
    "C" when every u_i u_i* u_j (i != j) vanishes, "R" when every one is a
    unimodular multiple of u_j, "not_ternary_closed" otherwise. A single
    element counts as "C".
    """
    family = validate_family(family, cfg)
    vanishing = multiple = True
    for i, j in ((i, j) for i in range(len(family)) for j in range(len(family)) if i != j):
        p = ternary(family[i], family[i], family[j])
        if frobenius(p) <= cfg.structural_tol:
            multiple = False
        elif _unimodular_multiple(p, family[j], cfg):
            vanishing = False
        else:
            vanishing = multiple = False
        if not (vanishing or multiple):
            logger.debug(f"u_{i + 1} u_{i + 1}* u_{j + 1} breaks ternary closure")
            return "not_ternary_closed"
    return "C" if vanishing else "R"
