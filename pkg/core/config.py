"""
Numerical tolerances and seeding shared by all computations
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances for structural identities and for the norm iteration"""

    structural_tol: float = 1e-9
    iterative_tol: float = 1e-12
    max_iterations: int = 10000
    seed: int = 42

    def __post_init__(self):
        if self.structural_tol <= 0 or self.iterative_tol <= 0:
            raise ConfigurationError(
                f"Tolerances must be strictly positive, got structural_tol={self.structural_tol}, "
                f"iterative_tol={self.iterative_tol}"
            )
        if self.structural_tol < self.iterative_tol:
            raise ConfigurationError(
                f"structural_tol ({self.structural_tol}) must be >= iterative_tol ({self.iterative_tol})"
            )
        if self.max_iterations < 1:
            raise ConfigurationError(
                f"max_iterations must be positive, got {self.max_iterations}"
            )
        if not 0 <= self.seed <= UINT64_MAX:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @classmethod
    def from_settings(cls, **overrides: Optional[Any]) -> "ToleranceConfig":
        """Build from Django settings, applying any non-None overrides"""
        from django.conf import settings

        base = cls(
            structural_tol=settings.OPSPACE_STRUCTURAL_TOL,
            iterative_tol=settings.OPSPACE_ITERATIVE_TOL,
            max_iterations=settings.OPSPACE_MAX_ITERATIONS,
            seed=settings.OPSPACE_SEED,
        )
        return base.with_overrides(**overrides)

    def with_overrides(self, **overrides: Optional[Any]) -> "ToleranceConfig":
        changes = {key: value for key, value in overrides.items() if value is not None}
        if not changes:
            return self
        logger.debug(f"Tolerance overrides applied: {changes}")
        return replace(self, **changes)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "structural_tol": self.structural_tol,
            "iterative_tol": self.iterative_tol,
            "max_iterations": self.max_iterations,
            "seed": self.seed,
        }


DEFAULT_CONFIG = ToleranceConfig()
