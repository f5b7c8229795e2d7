"""
Matrix-level norms ||.||_{M_{p,q}(X)} of the built operator spaces
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Union

import numpy as np

from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import MatrixShapeError
from core.linalg import block_assemble, complex_gaussian, operator_norm, random_unitary
from spaces.bases import IntersectionSpace, OperatorBasis

logger = logging.getLogger(__name__)

Space = Union[OperatorBasis, IntersectionSpace]


@dataclass(frozen=True, eq=False)
class LevelElement:
    """A p x q matrix over the space, stored as a (p, q, n) coefficient array"""

    space: Space
    coords: np.ndarray
    label: str = ""

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=np.complex128)
        if coords.ndim != 3 or coords.shape[2] != self.space.n or 0 in coords.shape[:2]:
            raise MatrixShapeError(
                f"Level coordinates must have shape (p, q, {self.space.n}), got {coords.shape}"
            )
        object.__setattr__(self, "coords", coords)

    @property
    def p(self) -> int:
        return self.coords.shape[0]

    @property
    def q(self) -> int:
        return self.coords.shape[1]

    def transport(self, space: Space) -> "LevelElement":
        """The same coordinates over another space: psi_p(x) for the basis map psi"""
        if space.n != self.space.n:
            raise MatrixShapeError(f"Cannot map {self.space.name} to {space.name}: dimensions differ")
        return LevelElement(space, self.coords, self.label)


def component_block(x: LevelElement, c: int) -> np.ndarray:
    """The ambient matrix of component c, assembled from p x q blocks"""
    mats = np.stack(x.space.component_matrices(c))
    blocks = np.tensordot(x.coords, mats, axes=1)
    return block_assemble([[blocks[a, b] for b in range(x.q)] for a in range(x.p)])


def level_norm(x: LevelElement, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Max over components of the operator norm of the assembled block matrix"""
    return max(operator_norm(component_block(x, c), cfg) for c in range(len(x.space.components)))


def row_witness(space: Space) -> LevelElement:
    """(b_1, ..., b_n) in M_{1,n}"""
    return LevelElement(space, np.eye(space.n)[np.newaxis, :, :], "row")


def column_witness(space: Space) -> LevelElement:
    """(b_1, ..., b_n)^T in M_{n,1}"""
    return LevelElement(space, np.eye(space.n)[:, np.newaxis, :], "column")


def single_witness(space: Space) -> LevelElement:
    coords = np.zeros((1, 1, space.n))
    coords[0, 0, 0] = 1
    return LevelElement(space, coords, "b_1")


def random_level_element(space: Space, p: int, rng: np.random.Generator, label: Optional[str] = None) -> LevelElement:
    """p x p element with independent standard complex Gaussian coordinates"""
    return LevelElement(space, complex_gaussian(rng, (p, p, space.n)), label or f"random level {p}")


def homogeneity_defect(
    space: Space,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    samples: int = 10,
    levels: int = 3,
) -> Dict:
    """
    Apply a random unitary phi of the coefficient space at levels p <= levels and
    report the worst |‖phi_p(x)‖ / ‖x‖ - 1|; zero for a homogeneous Hilbertian space.
    """
    rng = np.random.default_rng([cfg.seed, space.n, levels])
    phi = random_unitary(space.n, rng)
    worst = 0.0
    for p in range(1, levels + 1):
        for _ in range(samples):
            x = random_level_element(space, p, rng)
            moved = LevelElement(space, x.coords @ phi.T)
            ratio = level_norm(moved, cfg) / level_norm(x, cfg)
            worst = max(worst, abs(ratio - 1.0))
    logger.info(f"Homogeneity defect of {space.name}: {worst:.3e}")
    return {"space": space.name, "n": space.n, "defect": worst, "pass": worst <= 1e-8}
