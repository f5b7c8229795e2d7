"""
Run service shared by the opspace management command and the HTTP API
"""

import csv
import io
import json
import logging
from fractions import Fraction
from math import sqrt
from typing import Any, Dict, List, Optional, Tuple

from django.conf import settings
from rest_framework.utils.encoders import JSONEncoder

from classify.serializers import ClassificationReportSerializer
from classify.services import classify, tro_dichotomy
from core.config import ToleranceConfig
from core.exceptions import OpspaceError
from norms.distances import closed_form_trend, distance_table, distance_trend, pair_bounds
from norms.serializers import CSV_COLUMNS, CbEstimateSerializer, DistanceRowSerializer
from spaces.bases import build_intersection, build_space, uij_integer
from spaces.grid import uij_sign
from spaces.serializers import GridElementSerializer, OperatorBasisSerializer

from .serializers import SUITES, parse_pair
from .suites import SuiteContext, run_suites

logger = logging.getLogger(__name__)

SCHEMA = "opspace/1"
TREND_POINTS = [10, 100, 1000, 10000]
EXIT_PASS, EXIT_FAILED = 0, 1


class ReportEncoder(JSONEncoder):
    """DRF encoder (numpy via tolist) plus exact fractions as strings"""

    def default(self, obj):
        if isinstance(obj, Fraction):
            return str(obj)
        return super().default(obj)


def render_json(report: Dict) -> str:
    return json.dumps(report, cls=ReportEncoder, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(rows: List[Dict]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, extrasaction="ignore", restval="", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


class OpspaceService:
    """Executes validated run configurations and assembles versioned reports"""

    def tolerance_config(self, config: Dict[str, Any]) -> ToleranceConfig:
        return ToleranceConfig.from_settings(
            structural_tol=config.get("structural_tol"),
            iterative_tol=config.get("iterative_tol"),
            max_iterations=config.get("max_iterations"),
            seed=config.get("seed"),
        )

    def _report(self, command: str, cfg: ToleranceConfig, passed: bool, **fields) -> Dict:
        return {"schema": SCHEMA, "command": command, "config": cfg.as_dict(), **fields, "pass": passed}

    def build(self, config: Dict[str, Any], cfg: ToleranceConfig) -> Dict:
        n, space = config["n"], config["space"]
        if space == "ones":
            k = config["k"]
            u = uij_integer(n, k, config["I"], config["J"])
            I, J = sorted(config["I"]), sorted(config["J"])
            data = GridElementSerializer(
                {"I": I, "J": J, "sign": uij_sign(u, tuple(I), tuple(J), n, k), "matrix": u}
            ).data
            return self._report("build", cfg, True, space=space, n=n, k=k, one=not set(I) & set(J), data=data)
        if space == "intersection":
            built = build_intersection(n, config["ks"])
        else:
            built = build_space(space, n, config.get("k"))
        logger.info(f"Built {built.name} with {len(built.components)} component(s)")
        return self._report("build", cfg, True, space=space, n=n, data=OperatorBasisSerializer(built).data)

    def verify(self, config: Dict[str, Any], cfg: ToleranceConfig) -> Dict:
        suite = config.get("suite", "all")
        names = [name for name in SUITES if name != "all"] if suite == "all" else [suite]
        ctx = SuiteContext(
            n=config["n"],
            cfg=cfg,
            samples=config.get("samples") or settings.OPSPACE_WITNESS_SAMPLES,
            levels=config.get("levels") or settings.OPSPACE_WITNESS_LEVELS,
            workers=config.get("workers") or settings.OPSPACE_WORKERS,
        )
        results = run_suites(names, ctx)
        passed = all(result["pass"] for result in results.values())
        return self._report("verify", cfg, passed, n=ctx.n, suite=suite, suites=results)

    def distance(self, config: Dict[str, Any], cfg: ToleranceConfig) -> Dict:
        n = config["n"]
        m: Optional[int] = config.get("m")
        levels = config.get("levels") or settings.OPSPACE_WITNESS_LEVELS
        samples = config.get("samples") or settings.OPSPACE_WITNESS_SAMPLES
        pair = config.get("pair") or (f"Cn:Hn^{m + 1}" if m is not None else None)

        if pair is None:
            rows = distance_table(n, cfg, levels, samples, config.get("workers") or settings.OPSPACE_WORKERS)
            data = DistanceRowSerializer(rows, many=True).data
            return self._report("distance", cfg, _within_closed_form(rows), n=n, rows=data)

        a, b = parse_pair(pair, config.get("k"))
        fields: Dict[str, Any] = {"n": n, "pair": pair}
        if config.get("n_max"):
            trend = distance_trend(a, b, range(n, config["n_max"] + 1), cfg, levels, samples)
            fields.update(rows=trend["points"], monotone_growth=trend["monotone_growth"])
            rows = [{"pair": pair, **point} for point in trend["points"]]
        else:
            estimate = pair_bounds(a, b, n, cfg, levels, samples)
            rows = [estimate.as_dict()]
            fields.update(
                rows=CbEstimateSerializer(rows, many=True).data,
                forward_by_level=list(estimate.forward_by_level),
                inverse_by_level=list(estimate.inverse_by_level),
            )
        if m is not None:
            fields["closed_form_trend"] = [{"n": p, "value": v} for p, v in closed_form_trend(m, TREND_POINTS)]
            fields["closed_form_limit"] = sqrt(m + 1)
        return self._report("distance", cfg, _within_closed_form(rows), **fields)

    def classify(self, config: Dict[str, Any], cfg: ToleranceConfig) -> Dict:
        family = config["family"]
        report = classify(family, cfg)
        data = ClassificationReportSerializer(report.as_dict()).data
        return self._report("classify", cfg, True, data=data, tro=tro_dichotomy(family, cfg))

    def run(self, config: Dict[str, Any]) -> Tuple[int, Dict]:
        """
        Execute one validated configuration.

        Returns:
            (exit code, report): 0 when every check passes, 1 otherwise.
            Library errors are reported with "pass": False and an "error".

        Raises:
            ConfigurationError: the tolerance overrides are invalid
        """
        command = config["command"]
        cfg = self.tolerance_config(config)
        handler = getattr(self, command)
        try:
            report = handler(config, cfg)
        except OpspaceError as e:
            logger.error(f"{command} failed: {e}")
            report = self._report(command, cfg, False, error=str(e))
        code = EXIT_PASS if report["pass"] else EXIT_FAILED
        logger.info(f"{command} finished with exit code {code}")
        return code, report

    def render(self, report: Dict, fmt: str = "json") -> str:
        if fmt == "csv":
            return render_csv(report.get("rows", []))
        return render_json(report)


def _within_closed_form(rows: List[Dict]) -> bool:
    return all(
        row.get("closed_form") is None or row["product_lower"] <= row["closed_form"] * (1 + 1e-6) for row in rows
    )
