"""
H_n^k as a space of creation operators, and the annihilation counterpart
"""

import logging
from typing import Dict, Iterable, List

import numpy as np

from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import CombinatorialError, PreconditionError
from core.linalg import complex_gaussian, operator_norm
from spaces.bases import ComponentShape, IntersectionSpace, OperatorBasis, hnk_matrices, intersect

from .operators import creation_unit, unitary_V, unitary_W

logger = logging.getLogger(__name__)


def intertwiner(n: int, k: int) -> np.ndarray:
    """U = V_k W_k, with U creation(n, k-1, e_i) = b_i^{n,k} for every i"""
    return unitary_V(n, k) @ unitary_W(n, k)


def _amplified_norm(coeffs: List[np.ndarray], mats: List[np.ndarray], cfg: ToleranceConfig) -> float:
    return operator_norm(sum(np.kron(c, m) for c, m in zip(coeffs, mats)), cfg)


def sample_norm_defect(
    left: List[np.ndarray],
    right: List[np.ndarray],
    cfg: ToleranceConfig,
    samples: int,
    max_level: int,
    stream,
) -> float:
    """max |‖sum λ_i ⊗ left_i‖ - ‖sum λ_i ⊗ right_i‖| over random λ_i in M_p, p <= max_level"""
    rng = np.random.default_rng([cfg.seed, *stream])
    worst = 0.0
    for p in range(1, max_level + 1):
        for _ in range(samples):
            coeffs = [complex_gaussian(rng, (p, p)) for _ in left]
            a = _amplified_norm(coeffs, left, cfg)
            b = _amplified_norm(coeffs, right, cfg)
            worst = max(worst, abs(a - b))
    return worst


def _check_k(n: int, k: int):
    if n < 1 or not 1 <= k <= n:
        raise CombinatorialError(f"k={k} out of range 1..{n}")


def fock_vs_hnk(
    n: int,
    k: int,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    samples: int = 50,
    max_level: int = 3,
    raise_on_failure: bool = False,
) -> Dict:
    """
    Structural check U creation(n, k-1, e_i) D = b_i^{n,k} with U = V_k W_k,
    D = 1, and complete-isometry sampling of the two families.
    """
    _check_k(n, k)
    u = intertwiner(n, k)
    creators = [creation_unit(n, k - 1, i) for i in range(1, n + 1)]
    targets = hnk_matrices(n, k)
    residuals = [float(np.linalg.norm(u @ c - b)) for c, b in zip(creators, targets)]
    worst_i = int(np.argmax(residuals)) + 1
    structural = max(residuals)
    if raise_on_failure and structural > cfg.structural_tol:
        raise PreconditionError(
            f"U creation(n,k-1,e_{worst_i}) differs from b_{worst_i}^{{{n},{k}}} by {structural:.3e}"
        )
    defect = sample_norm_defect(targets, creators, cfg, samples, max_level, (1, n, k))
    passed = structural <= cfg.structural_tol and defect <= 1e-7
    logger.info(f"fock_vs_hnk n={n} k={k}: residual {structural:.3e}, norm defect {defect:.3e}")
    return {
        "suite": "fock",
        "n": n,
        "k": k,
        "structural_residual": structural,
        "worst_index": worst_i,
        "norm_defect": defect,
        "pass": bool(passed),
    }


def annihilation_vs_hnk(
    n: int, k: int, cfg: ToleranceConfig = DEFAULT_CONFIG, samples: int = 20, max_level: int = 3
) -> Dict:
    """
    annihilation(n, k-1, e_i) U* = sign b_i^{n,n-k+1} with a sign shared by all i,
    so the annihilation operators on level k span a copy of H_n^{n-k+1}.
    """
    _check_k(n, k)
    u = intertwiner(n, k)
    annihilators = [creation_unit(n, k - 1, i).conj().T for i in range(1, n + 1)]
    moved = [a @ u.conj().T for a in annihilators]
    targets = hnk_matrices(n, n - k + 1)
    plus = max(float(np.linalg.norm(m - b)) for m, b in zip(moved, targets))
    minus = max(float(np.linalg.norm(m + b)) for m, b in zip(moved, targets))
    sign = 1 if plus <= minus else -1
    structural = min(plus, minus)
    defect = sample_norm_defect(targets, annihilators, cfg, samples, max_level, (2, n, k))
    passed = structural <= cfg.structural_tol and defect <= 1e-7
    logger.info(
        f"annihilation_vs_hnk n={n} k={k}: sign {sign:+d}, residual {structural:.3e}, norm defect {defect:.3e}"
    )
    return {
        "suite": "annihilation",
        "n": n,
        "k": k,
        "partner_k": n - k + 1,
        "sign": sign,
        "structural_residual": structural,
        "norm_defect": defect,
        "pass": bool(passed),
    }


def creation_space(n: int, k: int) -> OperatorBasis:
    """span{creation(n, k-1, e_i)}, a creation-operator model of H_n^k"""
    _check_k(n, k)
    mats = [creation_unit(n, k - 1, i) for i in range(1, n + 1)]
    for m in mats:
        m.setflags(write=False)
    rows, cols = mats[0].shape
    label = f"Cr_{n}^{k - 1}"
    return OperatorBasis(label, n, (ComponentShape(rows, cols, label, k),), tuple((m,) for m in mats))


def fock_intersection(n: int, levels: Iterable[int]) -> IntersectionSpace:
    """The intersection of creation spaces on the levels k - 1, k in levels"""
    ks = sorted(set(levels))
    if not ks:
        raise CombinatorialError("fock_intersection needs at least one level")
    return intersect([creation_space(n, k) for k in ks])
