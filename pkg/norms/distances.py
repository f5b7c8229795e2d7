"""
Witness lower bounds for completely bounded Banach-Mazur distances

For the homogeneous spaces built here the distance is ||psi||_cb ||psi^-1||_cb
for the map psi sending basis to basis, so lower bounds come from evaluating
psi on a fixed witness set: the single basis element, the row and column of
the basis, and seeded random elements at levels p <= levels.
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from math import sqrt
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from core.config import DEFAULT_CONFIG, ToleranceConfig
from core.exceptions import ConfigurationError, MatrixShapeError
from spaces.bases import build_column, build_hnk, build_phi, build_row

from .levels import (
    LevelElement,
    Space,
    column_witness,
    level_norm,
    random_level_element,
    row_witness,
    single_witness,
)

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^(?:(C|R|Phi)n?|H(?:n\^?(\d+)|n?k|(\d+))?(')?)$")


@dataclass(frozen=True)
class SpaceKey:
    """
    A family of spaces indexed by n: C_n, R_n, Phi_n, H_n^k, or with
    dual=True the partner H_n^{n-k+1}.
    """

    kind: str
    k: Optional[int] = None
    dual: bool = False

    @classmethod
    def parse(cls, token: str, k: Optional[int] = None) -> "SpaceKey":
        """
        Accepts Cn, Rn, Phin, Hnk (k from the argument), Hnk' (its partner)
        and explicit levels such as Hn^3 or H3.
        """
        match = _TOKEN.match(token.strip())
        if not match:
            raise ConfigurationError(f"Unknown space token {token!r}")
        kind, explicit, bare, prime = match.groups()
        if kind:
            return cls(kind)
        level = explicit or bare
        level = int(level) if level else k
        if level is None or level < 1:
            raise ConfigurationError(f"Space {token!r} needs a level k >= 1")
        return cls("H", level, bool(prime))

    def level(self, n: int) -> Optional[int]:
        if self.kind != "H":
            return None
        b = n - self.k + 1 if self.dual else self.k
        if not 1 <= b <= n:
            raise ConfigurationError(f"H_n^{b} is not defined for n={n}")
        return b

    def label(self, n: int) -> str:
        if self.kind == "H":
            return f"H_{n}^{self.level(n)}"
        return f"{self.kind}_{n}"

    def build(self, n: int) -> Space:
        if self.kind == "C":
            return build_column(n)
        if self.kind == "R":
            return build_row(n)
        if self.kind == "Phi":
            return build_phi(n)
        return build_hnk(n, self.level(n))

    def family(self, n: int) -> Tuple[str, int]:
        """
        Growth family: ("R", m) for spaces like H^{m,R} (C_n is m = 0),
        ("L", k) for spaces like H^{k,L} (R_n is k = 0), ("Phi", 0) for Phi_n.
        """
        if self.kind == "Phi":
            return ("Phi", 0)
        b = {"C": 1, "R": n}.get(self.kind) or self.level(n)
        if b - 1 <= n - b:
            return ("R", b - 1)
        return ("L", n - b)


@dataclass(frozen=True)
class CbEstimate:
    pair: str
    n: int
    forward_lower: float
    inverse_lower: float
    closed_form: Optional[float]
    witness_description: str
    forward_by_level: Tuple[float, ...] = field(default=())
    inverse_by_level: Tuple[float, ...] = field(default=())

    @property
    def product_lower(self) -> float:
        return self.forward_lower * self.inverse_lower

    def as_dict(self) -> Dict:
        return {
            "pair": self.pair,
            "n": self.n,
            "forward_lower": self.forward_lower,
            "inverse_lower": self.inverse_lower,
            "product_lower": self.product_lower,
            "closed_form": self.closed_form,
            "witness_description": self.witness_description,
        }


def closed_form_distance(a: SpaceKey, b: SpaceKey, n: int) -> Optional[float]:
    """
    d_cb for the pairs with a known value at finite n:
    d(R_n, C_n) = n, d(C_n, H_n^b) = sqrt(b n / (n - b + 1)),
    d(R_n, H_n^b) = sqrt((n - b + 1) n / b), and 1 for equal spaces.
    """
    la, lb = a.label(n), b.label(n)
    if la == lb:
        return 1.0
    kinds = {a.kind, b.kind}
    if kinds == {"C", "R"}:
        return float(n)
    if kinds == {"C", "H"}:
        level = (a if a.kind == "H" else b).level(n)
        return sqrt(level * n / (n - level + 1))
    if kinds == {"R", "H"}:
        level = (a if a.kind == "H" else b).level(n)
        return sqrt((n - level + 1) * n / level)
    return None


def witness_set(space: Space, levels: int, samples: int, seed: int) -> List[LevelElement]:
    """
    Single, row and column witnesses, then `samples` random elements per level.

    The random stream for level p depends only on (seed, p), so the witness
    set for `levels` contains the one for any smaller value.
    """
    witnesses = [single_witness(space), row_witness(space), column_witness(space)]
    for p in range(1, levels + 1):
        rng = np.random.default_rng([seed, p])
        witnesses.extend(random_level_element(space, p, rng) for _ in range(samples))
    return witnesses


def _level_of(x: LevelElement) -> int:
    return max(x.p, x.q) if x.label in ("row", "column") else x.p


def basis_map_bounds(
    A: Space,
    B: Space,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    levels: int = 4,
    samples: int = 50,
    closed_form: Optional[float] = None,
) -> CbEstimate:
    """
    Lower bounds for ||psi||_cb and ||psi^-1||_cb, psi(b_i^A) = b_i^B.

    Args:
        A, B: spaces of the same dimension n
        levels: largest random level p
        samples: random witnesses per level

    Returns:
        CbEstimate with the best ratios and the witnesses achieving them
    """
    if A.n != B.n:
        raise MatrixShapeError(f"Spaces {A.name} and {B.name} have different dimensions")
    witnesses = witness_set(A, levels, samples, cfg.seed)
    forward = (0.0, "")
    inverse = (0.0, "")
    top_level = max(levels, A.n)
    forward_by_level = [0.0] * top_level
    inverse_by_level = [0.0] * top_level
    for x in witnesses:
        norm_a = level_norm(x, cfg)
        norm_b = level_norm(x.transport(B), cfg)
        if norm_a == 0 or norm_b == 0:
            continue
        f, i = norm_b / norm_a, norm_a / norm_b
        if f > forward[0]:
            forward = (f, x.label)
        if i > inverse[0]:
            inverse = (i, x.label)
        p = _level_of(x)
        forward_by_level[p - 1] = max(forward_by_level[p - 1], f)
        inverse_by_level[p - 1] = max(inverse_by_level[p - 1], i)

    pair = f"{A.name}:{B.name}"
    estimate = CbEstimate(
        pair=pair,
        n=A.n,
        forward_lower=forward[0],
        inverse_lower=inverse[0],
        closed_form=closed_form,
        witness_description=f"forward by {forward[1]}, inverse by {inverse[1]}; "
        f"{len(witnesses)} witnesses (single, row, column, {samples} random per level p <= {levels})",
        forward_by_level=tuple(np.maximum.accumulate(forward_by_level).tolist()),
        inverse_by_level=tuple(np.maximum.accumulate(inverse_by_level).tolist()),
    )
    if closed_form is not None and estimate.product_lower > closed_form + cfg.structural_tol * max(1.0, closed_form) + 1e-6:
        logger.warning(
            f"{pair}: witness product {estimate.product_lower:.9g} exceeds closed form {closed_form:.9g}"
        )
    logger.info(f"{pair}: product lower bound {estimate.product_lower:.9g}")
    return estimate


def pair_bounds(
    a: SpaceKey, b: SpaceKey, n: int, cfg: ToleranceConfig = DEFAULT_CONFIG, levels: int = 4, samples: int = 50
) -> CbEstimate:
    return basis_map_bounds(
        a.build(n), b.build(n), cfg, levels, samples, closed_form=closed_form_distance(a, b, n)
    )


def table_keys(n: int) -> List[SpaceKey]:
    return [SpaceKey("C"), SpaceKey("R")] + [SpaceKey("H", k) for k in range(1, n + 1)] + [SpaceKey("Phi")]


def distance_table(
    n: int,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    levels: int = 4,
    samples: int = 50,
    workers: int = 4,
) -> List[Dict]:
    """
    product_lower for all unordered pairs among C_n, R_n, H_n^k, Phi_n.

    Pairs are evaluated on a thread pool and returned in table order. A pair
    is flagged `diverges` when its spaces belong to different growth families
    (R-type against L-type, or Phi against either), whose distance is
    unbounded in n.
    """
    keys = table_keys(n)
    pairs = [(i, j) for i in range(len(keys)) for j in range(i + 1, len(keys))]
    max_concurrent = max(1, min(workers, len(pairs)))
    logger.info(f"Distance table n={n}: {len(pairs)} pairs on {max_concurrent} workers")

    results: Dict[Tuple[int, int], CbEstimate] = {}
    with ThreadPoolExecutor(max_workers=max_concurrent) as pool:
        futures = {
            pool.submit(pair_bounds, keys[i], keys[j], n, cfg, levels, samples): (i, j) for i, j in pairs
        }
        for completed, future in enumerate(as_completed(futures), start=1):
            results[futures[future]] = future.result()
            logger.debug(f"Distance table n={n}: {completed}/{len(pairs)} pairs done")

    rows = []
    for i, j in pairs:
        row = results[(i, j)].as_dict()
        row["diverges"] = keys[i].family(n)[0] != keys[j].family(n)[0]
        rows.append(row)
    return rows


def distance_trend(
    a: SpaceKey,
    b: SpaceKey,
    ns: Iterable[int],
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    levels: int = 4,
    samples: int = 50,
) -> Dict:
    """product_lower over a range of n, with a flag for strict growth"""
    points = []
    for n in ns:
        estimate = pair_bounds(a, b, n, cfg, levels, samples)
        points.append({"n": n, "product_lower": estimate.product_lower, "closed_form": estimate.closed_form})
    values = [p["product_lower"] for p in points]
    growing = all(later > earlier for earlier, later in zip(values, values[1:]))
    return {"points": points, "monotone_growth": growing}


def closed_form_trend(m: int, ns: Iterable[int]) -> List[Tuple[int, float]]:
    """sqrt((m + 1) n / (n - m)) = d_cb(C_n, H_n^{m+1}), decreasing toward sqrt(m + 1)"""
    return [(n, sqrt((m + 1) * n / (n - m))) for n in ns if n > m]
