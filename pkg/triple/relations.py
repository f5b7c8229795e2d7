"""
Relations between partial isometries: orthogonality, order, collinearity,
minimality and hopping
"""

import logging
from enum import Enum
from typing import Sequence

from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import PreconditionError
from core.linalg import Element, add, frobenius, scale
from core.span import span_rank, span_residual

from .products import mul, peirce_decompose, require_partial_isometry, star

logger = logging.getLogger(__name__)


class Relation(str, Enum):
    ORTHOGONAL = "orthogonal"
    LEQ = "leq"
    GEQ = "geq"
    COLLINEAR = "collinear"
    OTHER = "other"


def _diff(a: Element, b: Element) -> float:
    return frobenius(add(a, scale(b, -1.0)))


def is_orthogonal(v: Element, w: Element, tol: float) -> bool:
    """v*w = 0 and vw* = 0"""
    return frobenius(mul(star(v), w)) <= tol and frobenius(mul(v, star(w))) <= tol


def is_leq(v: Element, w: Element, tol: float) -> bool:
    """v <= w, tested as v w* v = v"""
    return _diff(mul(v, star(w), v), v) <= tol


def in_peirce_one(v: Element, w: Element, cfg: ToleranceConfig) -> bool:
    """v lies in M_1(w)"""
    return _diff(peirce_decompose(w, v, cfg).x1, v) <= cfg.structural_tol


def is_collinear(v: Element, w: Element, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    return in_peirce_one(v, w, cfg) and in_peirce_one(w, v, cfg)


def relation(v: Element, w: Element, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Relation:
    """First matching relation in the order orthogonal, leq, geq, collinear"""
    require_partial_isometry(v, cfg, "v")
    require_partial_isometry(w, cfg, "w")
    tol = cfg.structural_tol
    if is_orthogonal(v, w, tol):
        return Relation.ORTHOGONAL
    if is_leq(v, w, tol):
        return Relation.LEQ
    if is_leq(w, v, tol):
        return Relation.GEQ
    if is_collinear(v, w, cfg):
        return Relation.COLLINEAR
    return Relation.OTHER


def is_minimal(v: Element, span: Sequence[Element], cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    """
    Whether M_2(v) ∩ span(span) = C v, tested as rank{P_2(v) x : x in span} == 1.

    Minimality depends on the ambient span: a basis element can be minimal in
    its own space but not in a larger triple containing it.
    """
    span = list(span)
    require_partial_isometry(v, cfg)
    residual = span_residual(v, span)
    if residual > cfg.structural_tol:
        raise PreconditionError(f"Element is not in the given span (residual {residual:.3e})")
    images = [peirce_decompose(v, x, cfg).x2 for x in span]
    rank = span_rank(images, cfg.structural_tol)
    logger.debug(f"Peirce-2 image rank {rank} over a span of {len(span)} elements")
    return rank == 1


def check_hopping(u: Element, v: Element, w: Element, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    """uu*vw* = vw*uu* and u*uv*w = v*wu*u, given v and w collinear with u"""
    for label, other in (("v", v), ("w", w)):
        require_partial_isometry(other, cfg, label)
        if not is_collinear(u, other, cfg):
            raise PreconditionError(f"{label} is not collinear with u")
    uu = mul(u, star(u))
    utu = mul(star(u), u)
    left = _diff(mul(uu, v, star(w)), mul(v, star(w), uu))
    right = _diff(mul(utu, star(v), w), mul(star(v), w, utu))
    return left <= cfg.structural_tol and right <= cfg.structural_tol
