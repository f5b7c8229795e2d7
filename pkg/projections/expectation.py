"""
Conditional expectation identities of a projection P

    P{Px, Py, Pz} = P{Px, Py, z} = P{Px, y, Pz}

hold for every contractive projection on a JC*-triple.
"""

import logging
from typing import Dict

import numpy as np

from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.linalg import add, frobenius, scale
from triple.products import triple_product

from .contractive import ProjectionSpec, require_idempotent

logger = logging.getLogger(__name__)

EXPECTATION_TOL = 1e-8


def _unit(x):
    return scale(x, 1.0 / frobenius(x))


def check_conditional_expectation(
    P: ProjectionSpec, samples: int = 20, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> Dict:
    """
    Residuals of the two identities on random unit-Frobenius x, y, z.

    Returns:
        dict with the worst residual of each identity and `pass` when both
        stay within 1e-8
    """
    require_idempotent(P, cfg)
    rng = np.random.default_rng([cfg.seed, 6, P.n])
    outer = middle = 0.0
    for _ in range(samples):
        x, y, z = (_unit(P.random_element(rng)) for _ in range(3))
        px, py, pz = P(x), P(y), P(z)
        reference = P(triple_product(px, py, pz))
        outer = max(outer, frobenius(add(reference, scale(P(triple_product(px, py, z)), -1.0))))
        middle = max(middle, frobenius(add(reference, scale(P(triple_product(px, y, pz)), -1.0))))
    worst = max(outer, middle)
    passed = worst <= EXPECTATION_TOL
    log = logger.info if passed else logger.warning
    log(f"{P.label}: conditional expectation residuals {outer:.3e} (outer), {middle:.3e} (middle)")
    return {
        "suite": "projection",
        "check": "conditional_expectation",
        "projection": P.label,
        "samples": samples,
        "outer_residual": outer,
        "middle_residual": middle,
        "max_residual": worst,
        "pass": passed,
    }
