"""
Triple product and Peirce decomposition

Operands are matrices or tuples of blocks; tuples are handled blockwise.
"""

import logging
from typing import Callable, NamedTuple

import numpy as np

from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import MatrixShapeError, PartialIsometryError
from core.linalg import Element, adjoint, blockwise, frobenius

logger = logging.getLogger(__name__)


def _same_shape(*elements: Element):
    shapes = {np.shape(m) for m in elements}
    if len(shapes) != 1:
        raise MatrixShapeError(f"Triple operands must share one shape, got {sorted(shapes)}")


def _triple(a, b, c):
    _same_shape(a, b, c)
    bstar = b.conj().T
    return 0.5 * (a @ bstar @ c + c @ bstar @ a)


def triple_product(a: Element, b: Element, c: Element) -> Element:
    """{a, b, c} = (ab*c + cb*a) / 2"""
    return blockwise(_triple, a, b, c)


def ternary(a: Element, b: Element, c: Element) -> Element:
    """The TRO product ab*c"""

    def _ternary(x, y, z):
        _same_shape(x, y, z)
        return x @ y.conj().T @ z

    return blockwise(_ternary, a, b, c)


def partial_isometry_residual(v: Element) -> float:
    """Frobenius norm of vv*v - v"""
    return frobenius(blockwise(lambda m: m @ m.conj().T @ m - m, v))


def require_partial_isometry(v: Element, cfg: ToleranceConfig = DEFAULT_CONFIG, label: str = "v"):
    residual = partial_isometry_residual(v)
    if residual > cfg.structural_tol:
        raise PartialIsometryError(residual, label)


class PeirceParts(NamedTuple):
    x2: Element
    x1: Element
    x0: Element


def _projections(m):
    left = m @ m.conj().T
    right = m.conj().T @ m
    return left, np.eye(left.shape[0]) - left, right, np.eye(right.shape[0]) - right


def peirce_decompose(v: Element, x: Element, cfg: ToleranceConfig = DEFAULT_CONFIG) -> PeirceParts:
    """
    x = x2 + x1 + x0 with l = vv*, r = v*v:

        x2 = l x r,  x1 = l x (1 - r) + (1 - l) x r,  x0 = (1 - l) x (1 - r)
    """
    require_partial_isometry(v, cfg)

    def _split(vm, xm):
        _same_shape(vm, xm)
        l, lc, r, rc = _projections(vm)
        return l @ xm @ r, l @ xm @ rc + lc @ xm @ r, lc @ xm @ rc

    if isinstance(v, tuple):
        parts = blockwise(_split, v, x)
        return PeirceParts(*(tuple(p[j] for p in parts) for j in range(3)))
    return PeirceParts(*_split(v, x))


def peirce_projection(v: Element, j: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Callable[[Element], Element]:
    """The map x -> P_j(v) x for j in {0, 1, 2}"""
    if j not in (0, 1, 2):
        raise ValueError(f"Peirce index must be 0, 1 or 2, got {j}")
    require_partial_isometry(v, cfg)
    slot = {2: 0, 1: 1, 0: 2}[j]
    return lambda x: peirce_decompose(v, x, cfg)[slot]


def star(a: Element) -> Element:
    return adjoint(a)


def mul(*factors: Element) -> Element:
    """Blockwise product of matrices or tuples"""

    def _mul(*ms):
        out = ms[0]
        for m in ms[1:]:
            out = out @ m
        return out

    return blockwise(_mul, *factors)
