"""
Dense complex matrix arithmetic and operator-norm computation

Matrices are plain complex128 numpy arrays. Elements of intersection spaces
are tuples of such arrays, one block per component; the helpers here act on
either form.
"""

import logging
from typing import Callable, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal, svdvals

from .config import DEFAULT_CONFIG, ToleranceConfig
from .exceptions import MatrixShapeError, NonFiniteError, NormConvergenceError

logger = logging.getLogger(__name__)

ComplexMatrix = np.ndarray
Element = Union[np.ndarray, Tuple[np.ndarray, ...]]


def as_matrix(a, label: str = "matrix") -> ComplexMatrix:
    """Coerce to a finite 2-D complex128 array"""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise MatrixShapeError(f"{label} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError(f"{label} of shape {m.shape[0]}x{m.shape[1]} has non-finite entries")
    return m


def adjoint(a: Element) -> Element:
    return blockwise(lambda m: m.conj().T, a)


def operator_norm(a, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """
    Largest singular value by Lanczos iteration on the smaller Gram matrix.

    Each step multiplies by A and A*, reorthogonalizes against the whole
    Krylov basis and takes the top Ritz value of the tridiagonal section. The
    iteration stops once the Ritz residual is at most ``cfg.iterative_tol``
    times the Ritz value, or when the Krylov basis fills the space and the
    Ritz values are the eigenvalues. The start vector is a complex Gaussian
    drawn from ``cfg.seed``.
    """
    m = as_matrix(a)
    rows, cols = m.shape
    if not np.any(m):
        return 0.0

    # Gram matrix A*A on the column side when cols <= rows, else AA* on the row side.
    if cols <= rows:
        forward, backward = m, m.conj().T
    else:
        forward, backward = m.conj().T, m
    dim = min(rows, cols)
    steps = min(dim, cfg.max_iterations)

    rng = np.random.default_rng(cfg.seed)
    basis = np.zeros((dim, steps), dtype=np.complex128)
    q = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    basis[:, 0] = q / np.linalg.norm(q)
    alphas: list = []
    betas: list = []
    relative = np.inf
    for j in range(steps):
        w = backward @ (forward @ basis[:, j])
        alphas.append(float(np.real(np.vdot(basis[:, j], w))))
        known = basis[:, : j + 1]
        for _ in range(2):
            w = w - known @ (known.conj().T @ w)
        beta = float(np.linalg.norm(w))

        if j == 0:
            theta, last = alphas[0], 1.0
        else:
            values, vectors = eigh_tridiagonal(
                np.array(alphas), np.array(betas), select="i", select_range=(j, j)
            )
            theta, last = float(values[0]), float(vectors[-1, 0])
        if theta <= 0:
            # start vector in the kernel
            return float(svdvals(m)[0])
        relative = beta * abs(last) / theta
        if j + 1 == dim or relative <= cfg.iterative_tol:
            logger.debug(
                f"Operator norm of {rows}x{cols} converged in {j + 1} Lanczos steps: {np.sqrt(theta):.15g}"
            )
            return float(np.sqrt(theta))
        if j + 1 == steps:
            break
        betas.append(beta)
        basis[:, j + 1] = w / beta

    raise NormConvergenceError((rows, cols), cfg.max_iterations, relative)


def svd_norm(a) -> float:
    """Largest singular value from LAPACK; the reference value for tests"""
    return float(svdvals(as_matrix(a))[0])


def block_assemble(blocks: Sequence[Sequence[np.ndarray]]) -> ComplexMatrix:
    """Place a p x q array of equally shaped r x c blocks into one (p r) x (q c) matrix"""
    if not blocks or not blocks[0]:
        raise MatrixShapeError("block_assemble needs a non-empty p x q array of blocks")
    q = len(blocks[0])
    shape = None
    for i, row in enumerate(blocks):
        if len(row) != q:
            raise MatrixShapeError(f"Block row {i} has {len(row)} blocks, expected {q}")
        for j, block in enumerate(row):
            block_shape = np.shape(block)
            if shape is None:
                shape = block_shape
            elif block_shape != shape:
                raise MatrixShapeError(
                    f"Block ({i},{j}) has shape {block_shape}, expected {shape}"
                )
    return as_matrix(np.block([[np.asarray(b, dtype=np.complex128) for b in row] for row in blocks]))


def direct_sum(parts: Sequence[np.ndarray]) -> ComplexMatrix:
    """Block-diagonal matrix of the given parts"""
    if len(parts) == 0:
        raise MatrixShapeError("direct_sum needs at least one part")
    mats = [as_matrix(p, label=f"part {i}") for i, p in enumerate(parts)]
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def blockwise(fn: Callable[..., np.ndarray], *elements: Element) -> Element:
    """Apply fn to matching blocks of tuple elements, or directly to matrices"""
    if isinstance(elements[0], tuple):
        if not all(isinstance(e, tuple) for e in elements) or len({len(e) for e in elements}) != 1:
            raise MatrixShapeError("Blockwise operands must have the same number of blocks")
        return tuple(fn(*blocks) for blocks in zip(*elements))
    return fn(*elements)


def element_norm(element: Element, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Operator norm; for tuples the max over blocks (norm of the direct sum)"""
    if isinstance(element, tuple):
        return max(operator_norm(block, cfg) for block in element)
    return operator_norm(element, cfg)


def frobenius(element: Element) -> float:
    if isinstance(element, tuple):
        return float(np.sqrt(sum(np.linalg.norm(b) ** 2 for b in element)))
    return float(np.linalg.norm(element))


def zeros_like(element: Element) -> Element:
    return blockwise(np.zeros_like, element)


def scale(element: Element, factor: complex) -> Element:
    return blockwise(lambda m: factor * m, element)


def add(*elements: Element) -> Element:
    return blockwise(lambda *ms: sum(ms[1:], ms[0]), *elements)


def linear_combination(coeffs: Sequence[complex], elements: Sequence[Element]) -> Element:
    if len(coeffs) != len(elements) or not elements:
        raise MatrixShapeError(
            f"Need equally many coefficients and elements, got {len(coeffs)} and {len(elements)}"
        )
    return blockwise(
        lambda *ms: np.tensordot(np.asarray(coeffs, dtype=np.complex128), np.stack(ms), axes=1),
        *elements,
    )


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Independent standard complex Gaussians (E|z|^2 = 1)"""
    return (rng.normal(size=shape) + 1j * rng.normal(size=shape)) / np.sqrt(2.0)


def random_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar unitary from orthonormalizing a complex Gaussian matrix"""
    q, r = np.linalg.qr(complex_gaussian(rng, (dim, dim)))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases
