"""
Linear spans of matrices and block tuples, handled as flattened vectors
"""

from typing import Sequence

import numpy as np

from .linalg import Element


def flatten(element: Element) -> np.ndarray:
    if isinstance(element, tuple):
        return np.concatenate([np.asarray(b, dtype=np.complex128).ravel() for b in element])
    return np.asarray(element, dtype=np.complex128).ravel()


def unflatten(vector: np.ndarray, template: Element) -> Element:
    """Inverse of flatten, shaped like template"""
    if isinstance(template, tuple):
        blocks = []
        offset = 0
        for block in template:
            size = block.size
            blocks.append(vector[offset : offset + size].reshape(block.shape))
            offset += size
        return tuple(blocks)
    return vector.reshape(np.shape(template))


def stack(elements: Sequence[Element]) -> np.ndarray:
    """Matrix whose columns are the flattened elements"""
    return np.stack([flatten(e) for e in elements], axis=1)


def span_rank(elements: Sequence[Element], tol: float) -> int:
    """Numerical rank; singular values <= tol * sigma_max count as zero"""
    if not elements:
        return 0
    s = np.linalg.svd(stack(elements), compute_uv=False)
    if s.size == 0 or s[0] <= tol:
        return 0
    return int(np.sum(s > tol * s[0]))


def coordinates(element: Element, basis: Sequence[Element]) -> np.ndarray:
    """Least-squares coordinates of element in the span of basis"""
    coeffs, *_ = np.linalg.lstsq(stack(basis), flatten(element), rcond=None)
    return coeffs


def span_residual(element: Element, basis: Sequence[Element]) -> float:
    """Euclidean distance from element to the span of basis"""
    a = stack(basis)
    coeffs, *_ = np.linalg.lstsq(a, flatten(element), rcond=None)
    return float(np.linalg.norm(a @ coeffs - flatten(element)))


def same_span(first: Sequence[Element], second: Sequence[Element], tol: float) -> bool:
    r1 = span_rank(first, tol)
    r2 = span_rank(second, tol)
    return r1 == r2 == span_rank(list(first) + list(second), tol)
