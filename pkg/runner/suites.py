"""
Verification suites

Each suite takes a SuiteContext and returns a list of check dictionaries,
every one carrying a boolean "pass". run_suite wraps a suite so that library
errors become a failed entry instead of an exception.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, List

from core.config import ToleranceConfig
from core.exceptions import OpspaceError
from classify.services import classify, tro_dichotomy
from fock.operators import car_check
from fock.representation import annihilation_vs_hnk, fock_intersection, fock_vs_hnk
from norms.distances import distance_table
from norms.levels import homogeneity_defect
from projections.contractive import (
    check_coherence,
    check_contractive,
    check_idempotent,
    custom_projection,
    pn_projection,
    pnk_projection,
)
from projections.expectation import check_conditional_expectation
from projections.support import column_expansion, expansion_report, support_space
from spaces.bases import build_column, build_hnk, build_intersection, build_phi, build_row, orthonormality_defect
from spaces.grid import check_grid_relation, grid_closure_rank, ones_decomposition, sum_identities

logger = logging.getLogger(__name__)

# the grid relation loops over C(n,k-1)^2 C(n,n-k)^2 index triples
GRID_RELATION_MAX_N = 5


@dataclass(frozen=True)
class SuiteContext:
    n: int
    cfg: ToleranceConfig
    samples: int = 50
    levels: int = 4
    workers: int = 4


def _tagged(check: str, report: Dict) -> Dict:
    return {"check": check, **report, "pass": bool(report["pass"])}


def orthonormal_suite(ctx: SuiteContext) -> List[Dict]:
    n = ctx.n
    spaces = [build_column(n), build_row(n)] + [build_hnk(n, k) for k in range(1, n + 1)]
    if n > 1:
        spaces.append(build_phi(n))
    checks = [_tagged("orthonormal", orthonormality_defect(space, ctx.cfg, samples=100)) for space in spaces]
    for space in spaces:
        checks.append(_tagged("homogeneous", homogeneity_defect(space, ctx.cfg, samples=3, levels=2)))
    return checks


def grid_suite(ctx: SuiteContext) -> List[Dict]:
    n = ctx.n
    checks = []
    for k in range(1, n + 1):
        checks.append(_tagged("sum_identities", sum_identities(n, k)))
        checks.append(_tagged("grid_closure", grid_closure_rank(n, k, ctx.cfg.structural_tol)))
        for c in range(1, n + 1):
            checks.append(_tagged("ones_decomposition", ones_decomposition(n, k, c)))
    relation_n = min(n, GRID_RELATION_MAX_N)
    if relation_n < n:
        logger.info(f"Grid relation checked at n={relation_n} instead of n={n}")
    for k in range(1, relation_n + 1):
        checks.append(_tagged("grid_relation", check_grid_relation(relation_n, k)))
    return checks


def car_suite(ctx: SuiteContext) -> List[Dict]:
    return [_tagged("car", car_check(ctx.n, ctx.cfg))]


def fock_suite(ctx: SuiteContext) -> List[Dict]:
    checks = []
    for k in range(1, ctx.n + 1):
        checks.append(_tagged("creation", fock_vs_hnk(ctx.n, k, ctx.cfg, samples=ctx.samples)))
        checks.append(_tagged("annihilation", annihilation_vs_hnk(ctx.n, k, ctx.cfg, samples=ctx.samples)))
    return checks


def projection_suite(ctx: SuiteContext) -> List[Dict]:
    n = ctx.n
    projections = [pnk_projection(n, k) for k in range(1, n + 1)] + [pn_projection(n)]
    checks = []
    for P in projections:
        checks.append(_tagged("idempotent", check_idempotent(P, ctx.cfg)))
        checks.append(_tagged("contractive", check_contractive(P, ctx.cfg)))
        checks.append(_tagged("conditional_expectation", check_conditional_expectation(P, cfg=ctx.cfg)))
    checks.append(_tagged("coherence", check_coherence(n, ctx.cfg)))
    return checks


def classify_suite(ctx: SuiteContext) -> List[Dict]:
    """Every nonempty set of levels, as H_n^k intersections and as creation-operator models"""
    n = ctx.n
    checks = []
    for size in range(1, n + 1):
        for ks in combinations(range(1, n + 1), size):
            for model, space in (("grid", build_intersection(n, ks)), ("fock", fock_intersection(n, ks))):
                report = classify(space.basis, ctx.cfg)
                checks.append(
                    {
                        "check": "round_trip",
                        "model": model,
                        "levels": list(ks),
                        **report.as_dict(),
                        "pass": report.components == ks,
                    }
                )
    return checks


def tro_suite(ctx: SuiteContext) -> List[Dict]:
    n = ctx.n
    cases = [("C", build_column(n), "C"), ("R", build_row(n), "R" if n > 1 else "C")]
    for k in range(1, n + 1):
        expected = "C" if k == 1 else "R" if k == n else "not_ternary_closed"
        cases.append((f"H_{n}^{k}", build_hnk(n, k), expected))
    checks = []
    for label, space, expected in cases:
        verdict = tro_dichotomy(space.basis, ctx.cfg)
        checks.append(
            {"check": "tro", "space": label, "verdict": verdict, "expected": expected, "pass": verdict == expected}
        )
    return checks


def support_suite(ctx: SuiteContext) -> List[Dict]:
    checks = []
    for k in range(1, ctx.n + 1):
        support = support_space(pnk_projection(ctx.n, k), ctx.cfg)
        checks.append({"check": "support_space", **support.as_dict(), "pass": support.essential})

    for overlapping in (False, True):
        fixture = column_expansion(overlapping)
        report = expansion_report(fixture["P"], fixture["Q"], fixture["L"], fixture["ambient"], ctx.cfg)
        checks.append(
            {
                "check": "expansion",
                "fixture": "overlapping" if overlapping else "orthogonal",
                **report,
                "pass": report["pass"] != overlapping,
            }
        )

    fixture = column_expansion()
    P = custom_projection("expansion", fixture["P"], [(4, 4)], fixture["range"])
    support = support_space(P, ctx.cfg)
    checks.append({"check": "support_space", **support.as_dict(), "pass": not support.essential})
    return checks


def distance_suite(ctx: SuiteContext) -> List[Dict]:
    """
    Witness products never exceed a known closed form. The sweep over the
    whole table uses at most 2 levels and 10 samples per level; the distance
    command takes the full witness set.
    """
    levels, samples = min(ctx.levels, 2), min(ctx.samples, 10)
    rows = distance_table(ctx.n, ctx.cfg, levels, samples, ctx.workers)
    checks = []
    for row in rows:
        closed = row["closed_form"]
        ok = closed is None or row["product_lower"] <= closed * (1 + 1e-6)
        checks.append({"check": "distance", **row, "pass": ok})
    return checks


SUITES: Dict[str, Callable[[SuiteContext], List[Dict]]] = {
    "orthonormal": orthonormal_suite,
    "grid": grid_suite,
    "car": car_suite,
    "fock": fock_suite,
    "projection": projection_suite,
    "classify": classify_suite,
    "tro": tro_suite,
    "support": support_suite,
    "distance": distance_suite,
}


def run_suite(name: str, ctx: SuiteContext) -> Dict:
    """Run one suite; an OpspaceError becomes a failed entry"""
    try:
        checks = SUITES[name](ctx)
    except OpspaceError as e:
        logger.error(f"Suite {name} failed at n={ctx.n}: {e}")
        return {"pass": False, "error": str(e), "checks": []}
    failed = sum(1 for check in checks if not check["pass"])
    logger.info(f"Suite {name} n={ctx.n}: {len(checks) - failed}/{len(checks)} checks passed")
    return {"pass": failed == 0, "checks": checks}


def run_suites(names: List[str], ctx: SuiteContext) -> Dict[str, Dict]:
    """Fan the suites out on a thread pool; results come back keyed by name"""
    if len(names) == 1:
        return {names[0]: run_suite(names[0], ctx)}
    max_concurrent = max(1, min(ctx.workers, len(names)))
    results = {}
    with ThreadPoolExecutor(max_workers=max_concurrent) as pool:
        futures = {pool.submit(run_suite, name, ctx): name for name in names}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return {name: results[name] for name in names}
