"""
Support partial isometries, support spaces and expansions

A functional psi(x) = tr(a* x) on matrices has norm ||a||_1 (the trace
norm); its support is the smallest partial isometry v with psi(v) = ||psi||,
namely U_r V_r* from the reduced SVD of a. Block tuples pair blockwise and
their supports are taken blockwise against a shared rank cutoff.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np

from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import ProjectionError
from core.linalg import Element, add, element_norm, frobenius, scale
from core.span import same_span, span_rank, span_residual
from spaces.bases import ComponentShape, OperatorBasis
from triple.relations import is_orthogonal

from .contractive import ProjectionSpec

logger = logging.getLogger(__name__)

LinearMap = Callable[[Element], Element]


def _blocks(a: Element) -> List[np.ndarray]:
    parts = a if isinstance(a, tuple) else (a,)
    return [np.asarray(b, dtype=np.complex128) for b in parts]


def _repack(blocks: List[np.ndarray], like: Element) -> Element:
    return tuple(blocks) if isinstance(like, tuple) else blocks[0]


def pairing(a: Element, x: Element) -> complex:
    """psi_a(x) = tr(a* x), summed over blocks"""
    return complex(sum(np.vdot(p, q) for p, q in zip(_blocks(a), _blocks(x))))


def trace_norm(a: Element) -> float:
    return float(sum(np.linalg.svd(b, compute_uv=False).sum() for b in _blocks(a)))


def support_partial_isometry(a: Element, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Element:
    """
    v = U_r V_r* with r the numerical rank of a.

    Singular values <= structural_tol * sigma_max count as zero; values
    within a factor 100 of that cutoff are logged as a degeneracy.
    """
    blocks = _blocks(a)
    decompositions = [np.linalg.svd(b, full_matrices=False) for b in blocks]
    top = max((s[0] for _, s, _ in decompositions if s.size), default=0.0)
    if top <= 0.0:
        raise ProjectionError("The zero functional has no support partial isometry")
    cutoff = cfg.structural_tol * top
    supports = []
    for u, s, vh in decompositions:
        near = s[(s > cutoff) & (s <= 100 * cutoff)]
        if near.size:
            logger.warning(f"Support: singular values {near.tolist()} lie close to the rank cutoff {cutoff:.3e}")
        r = int(np.sum(s > cutoff))
        supports.append(u[:, :r] @ vh[:r, :])
    return _repack(supports, a)


@dataclass(frozen=True, eq=False)
class SupportSpace:
    """The span of the supports of the dual basis functionals of P"""

    basis: OperatorBasis
    functionals: tuple
    essential: bool
    range_residual: float

    def as_dict(self) -> Dict:
        return {
            "space": self.basis.name,
            "n": self.basis.n,
            "rank": span_rank(list(self.basis.basis), DEFAULT_CONFIG.structural_tol),
            "essential": self.essential,
            "range_residual": self.range_residual,
        }


def support_space(P: ProjectionSpec, cfg: ToleranceConfig = DEFAULT_CONFIG) -> SupportSpace:
    """
    Supports of the functionals psi_i reading off the i-th range coordinate
    of P. P is essential when their span equals the range of P.
    """
    functionals = P.functionals()
    for i, a in enumerate(functionals, start=1):
        if frobenius(a) <= cfg.structural_tol:
            raise ProjectionError(f"{P.label}: dual functional {i} vanishes, the range basis is degenerate")
    supports = [support_partial_isometry(a, cfg) for a in functionals]
    components = tuple(
        ComponentShape(rows, cols, f"{P.label} support") for rows, cols in P.domain
    )
    name = f"supp {P.label}"
    basis = OperatorBasis(name, len(supports), components, tuple(_as_blocks(v) for v in supports))
    essential = same_span(supports, list(P.range_basis), cfg.structural_tol)
    residual = max(span_residual(r, supports) for r in P.range_basis)
    logger.info(f"{name}: essential={essential}, range residual {residual:.3e}")
    return SupportSpace(basis, tuple(functionals), essential, residual)


def _as_blocks(v: Element) -> tuple:
    return v if isinstance(v, tuple) else (v,)


def expansion_report(
    P: LinearMap,
    Q: LinearMap,
    L: LinearMap,
    ambient: Sequence[Element],
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> Dict:
    """
    Test P = Q + LQ, L(H) ⊥ H and Q(L(H)) = 0 for H = range(Q), with
    range(P) = {h + Lh}. P, Q and L are given by their values on the
    spanning set `ambient` of the domain.
    """
    tol = cfg.structural_tol

    def gap(a: Element, b: Element) -> float:
        return frobenius(add(a, scale(b, -1.0)))

    for label, M in (("P", P), ("Q", Q)):
        residual = max(gap(M(M(x)), M(x)) for x in ambient)
        if residual > tol:
            raise ProjectionError(f"{label} is not idempotent: residual {residual:.3e}")

    h_span = [Q(x) for x in ambient]
    h_span = [h for h in h_span if frobenius(h) > tol]
    lifted = [L(h) for h in h_span]
    decomposition = max(gap(P(x), add(Q(x), L(Q(x)))) for x in ambient)
    orthogonal = all(is_orthogonal(l, h, tol) for l in lifted for h in h_span)
    annihilated = max((frobenius(Q(l)) for l in lifted), default=0.0)
    contraction = max((element_norm(l, cfg) - element_norm(h, cfg) for l, h in zip(lifted, h_span)), default=0.0)
    graph = [add(h, l) for h, l in zip(h_span, lifted)]
    images = [P(x) for x in ambient]
    same_range = same_span(images, graph, tol) if graph else span_rank(images, tol) == 0
    passed = (
        decomposition <= tol and orthogonal and annihilated <= tol and contraction <= tol and same_range
    )
    logger.debug(
        f"Expansion test: decomposition {decomposition:.3e}, orthogonal={orthogonal}, "
        f"Q(L(H)) {annihilated:.3e}, range match={same_range}"
    )
    return {
        "decomposition_residual": decomposition,
        "orthogonal": orthogonal,
        "annihilation_residual": annihilated,
        "contraction_excess": contraction,
        "range_matches": same_range,
        "pass": passed,
    }


def is_expansion(
    P: LinearMap,
    Q: LinearMap,
    L: LinearMap,
    ambient: Sequence[Element],
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> bool:
    return expansion_report(P, Q, L, ambient, cfg)["pass"]


def _unit(i: int, j: int, size: int = 4) -> np.ndarray:
    m = np.zeros((size, size), dtype=np.complex128)
    m[i - 1, j - 1] = 1
    return m


def column_expansion(overlapping: bool = False) -> Dict:
    """
    H = span{e11, e21} in M_4 with Q(x) = p x e11, p = e11 + e22, and L moving
    H to span{e33, e43}. With overlapping=True, L moves H to span{e31, e41},
    which shares the first column with H.
    """
    p = _unit(1, 1) + _unit(2, 2)
    shift = _unit(3, 1) + _unit(4, 2)
    right = _unit(1, 1) if overlapping else _unit(1, 3)

    def Q(x):
        return p @ x @ _unit(1, 1)

    def L(h):
        return shift @ h @ right

    def P(x):
        q = Q(x)
        return q + L(q)

    ambient = [_unit(i, j) for i in range(1, 5) for j in range(1, 5)]
    return {"P": P, "Q": Q, "L": L, "ambient": ambient, "range": [P(_unit(1, 1)), P(_unit(2, 1))]}
