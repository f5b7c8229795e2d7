"""
opspace build | verify | distance | classify

Exit status 0 when every check passes, 1 when a check fails, 2 on invalid
arguments. Reports are JSON (schema "opspace/1") or, for distance tables, CSV.
"""

import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError, CommandParser

from core.exceptions import ConfigurationError
from runner.serializers import SPACES, SUITES, RunConfigSerializer
from runner.services import OpspaceService

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
CONFIG_FIELDS = [
    "command",
    "n",
    "k",
    "m",
    "ks",
    "space",
    "I",
    "J",
    "suite",
    "pair",
    "n_max",
    "levels",
    "samples",
    "workers",
    "seed",
    "structural_tol",
    "iterative_tol",
    "max_iterations",
    "format",
]


class UsageParser(CommandParser):
    """Subcommand parser whose errors exit with status 2"""

    def error(self, message):
        if self.called_from_command_line:
            super().error(message)
        raise CommandError(f"Error: {message}", returncode=USAGE_ERROR)


def _common(parser):
    parser.add_argument("--n", type=int, help="dimension of the spaces")
    parser.add_argument("--samples", type=int, help="random witnesses per level")
    parser.add_argument("--levels", type=int, help="largest matrix level for random witnesses")
    parser.add_argument("--workers", type=int, help="thread pool size")
    parser.add_argument("--seed", type=int, help="defaults to OPSPACE_SEED")
    parser.add_argument("--structural-tol", type=float)
    parser.add_argument("--iterative-tol", type=float)
    parser.add_argument("--max-iterations", type=int)
    parser.add_argument(
        "--out", "--format", dest="format", choices=["json", "csv"], default="json", help="report format"
    )
    parser.add_argument("--report-file", help="write the report here instead of stdout")


class Command(BaseCommand):
    help = "Build operator spaces, run verification suites, estimate cb distances and classify families"

    def add_arguments(self, parser):
        sub = parser.add_subparsers(dest="command", required=True, parser_class=UsageParser)

        build = sub.add_parser("build", help="basis of a space", allow_abbrev=False)
        _common(build)
        build.add_argument("--space", choices=SPACES, required=True)
        build.add_argument("--k", type=int)
        build.add_argument("--ks", type=int, nargs="+", help="levels of an intersection")
        build.add_argument("--I", type=int, nargs="*", default=None)
        build.add_argument("--J", type=int, nargs="*", default=None)

        verify = sub.add_parser("verify", help="run a verification suite", allow_abbrev=False)
        _common(verify)
        verify.add_argument("--suite", choices=SUITES, default="all")

        distance = sub.add_parser("distance", help="cb Banach-Mazur distance bounds", allow_abbrev=False)
        _common(distance)
        distance.add_argument("--pair", help="e.g. Rn:Cn, Cn:Hnk, Phin:Hn^2")
        distance.add_argument("--k", type=int)
        distance.add_argument("--m", type=int, help="pair C_n with H_n^{m+1} and report the closed-form trend")
        distance.add_argument("--n-max", type=int, help="sweep n up to this value")

        classify = sub.add_parser("classify", help="classify a family of partial isometries", allow_abbrev=False)
        _common(classify)
        classify.add_argument("--input", required=True, help="JSON file holding a list of matrices")

    def _load_family(self, path: str):
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            raise CommandError(f"Cannot read family from {path}: {e}", returncode=USAGE_ERROR)
        return payload["family"] if isinstance(payload, dict) and "family" in payload else payload

    def handle(self, *args, **options):
        data = {key: options[key] for key in CONFIG_FIELDS if options.get(key) is not None}
        if options.get("input"):
            data["family"] = self._load_family(options["input"])

        serializer = RunConfigSerializer(data=data)
        if not serializer.is_valid():
            logger.warning(f"Invalid {data.get('command')} arguments: {serializer.errors}")
            raise CommandError(f"Invalid arguments: {json.dumps(serializer.errors)}", returncode=USAGE_ERROR)

        service = OpspaceService()
        try:
            code, report = service.run(serializer.validated_data)
        except ConfigurationError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)

        text = service.render(report, serializer.validated_data["format"])
        if options.get("report_file"):
            output = Path(options["report_file"])
            output.parent.mkdir(parents=True, exist_ok=True)
            output.write_text(text, encoding="utf-8")
            logger.info(f"Report written to {output}")
        else:
            self.stdout.write(text, ending="")

        if code:
            raise CommandError(report.get("error") or "One or more checks failed", returncode=code)
