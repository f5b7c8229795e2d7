import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from rest_framework.test import APIClient

from core.serializers import matrix_to_json
from spaces.bases import build_column

from .management.commands.opspace import Command
from .serializers import RunConfigSerializer
from .services import OpspaceService, render_csv
from .suites import SUITES, SuiteContext, run_suite, run_suites


def opspace(*args):
    out = StringIO()
    call_command("opspace", *[str(a) for a in args], stdout=out)
    return out.getvalue()


def failing(*args):
    out = StringIO()
    try:
        call_command("opspace", *[str(a) for a in args], stdout=out)
    except CommandError as e:
        return e.returncode, out.getvalue()
    return 0, out.getvalue()


class RunConfigSerializerTests(SimpleTestCase):
    def test_caps(self):
        self.assertFalse(RunConfigSerializer(data={"command": "verify", "n": 9, "suite": "grid"}).is_valid())
        self.assertTrue(RunConfigSerializer(data={"command": "verify", "n": 9, "suite": "car"}).is_valid())
        self.assertFalse(RunConfigSerializer(data={"command": "verify", "n": 13, "suite": "car"}).is_valid())

    def test_required_fields(self):
        self.assertFalse(RunConfigSerializer(data={"command": "verify"}).is_valid())
        self.assertFalse(RunConfigSerializer(data={"command": "build", "n": 3}).is_valid())
        self.assertFalse(RunConfigSerializer(data={"command": "build", "n": 3, "space": "hnk"}).is_valid())
        self.assertFalse(RunConfigSerializer(data={"command": "build", "n": 3, "space": "hnk", "k": 4}).is_valid())
        self.assertFalse(RunConfigSerializer(data={"command": "classify"}).is_valid())

    def test_pair_and_format(self):
        self.assertTrue(RunConfigSerializer(data={"command": "distance", "n": 4, "pair": "Rn:Cn"}).is_valid())
        self.assertFalse(RunConfigSerializer(data={"command": "distance", "n": 4, "pair": "Rn"}).is_valid())
        self.assertFalse(RunConfigSerializer(data={"command": "distance", "n": 4, "pair": "Xn:Cn"}).is_valid())
        self.assertFalse(RunConfigSerializer(data={"command": "verify", "n": 4, "format": "csv"}).is_valid())


class SuiteTests(SimpleTestCase):
    def test_small_suites_pass(self):
        ctx = SuiteContext(n=3, cfg=OpspaceService().tolerance_config({}), samples=5, levels=2, workers=2)
        for name in ("orthonormal", "grid", "car", "tro", "support", "classify"):
            result = run_suite(name, ctx)
            self.assertTrue(result["pass"], (name, [c for c in result["checks"] if not c["pass"]]))

    def test_fan_out_keeps_order(self):
        ctx = SuiteContext(n=2, cfg=OpspaceService().tolerance_config({}), samples=3, levels=1, workers=3)
        names = ["tro", "car", "grid"]
        self.assertEqual(list(run_suites(names, ctx)), names)


class VerifyCommandTests(SimpleTestCase):
    def test_car_suite(self):
        report = json.loads(opspace("verify", "--suite", "car", "--n", 4))
        self.assertEqual(report["schema"], "opspace/1")
        self.assertTrue(report["pass"])
        check = report["suites"]["car"]["checks"][0]
        self.assertLessEqual(check["max_residual"], 1e-12)

    def test_same_seed_same_bytes(self):
        args = ("verify", "--suite", "fock", "--n", 3, "--samples", 5, "--seed", 7)
        self.assertEqual(opspace(*args), opspace(*args))

    def test_seed_in_report(self):
        report = json.loads(opspace("verify", "--suite", "tro", "--n", 3, "--seed", 11))
        self.assertEqual(report["config"]["seed"], 11)

    def test_all_suites_at_five(self):
        report = json.loads(opspace("verify", "--suite", "all", "--n", 5))
        failed = {name: suite.get("error") for name, suite in report["suites"].items() if not suite["pass"]}
        self.assertEqual(failed, {})
        self.assertTrue(report["pass"])
        self.assertEqual(sorted(report["suites"]), sorted(SUITES))

    def test_fock_suite_at_six(self):
        report = json.loads(opspace("verify", "--suite", "fock", "--n", 6))
        self.assertTrue(report["pass"])

    @override_settings(OPSPACE_SEED=5)
    def test_seed_fallback(self):
        report = json.loads(opspace("verify", "--suite", "tro", "--n", 2))
        self.assertEqual(report["config"]["seed"], 5)


class DistanceCommandTests(SimpleTestCase):
    def test_row_column_pair(self):
        report = json.loads(opspace("distance", "--pair", "Rn:Cn", "--n", 5, "--levels", 1, "--samples", 2))
        row = report["rows"][0]
        self.assertAlmostEqual(row["product_lower"], 5.0, delta=1e-6)
        self.assertEqual(row["closed_form"], 5.0)
        self.assertTrue(report["pass"])

    def test_closed_form_trend(self):
        report = json.loads(opspace("distance", "--m", 1, "--n", 3, "--levels", 1, "--samples", 2))
        self.assertEqual(report["pair"], "Cn:Hn^2")
        values = [point["value"] for point in report["closed_form_trend"]]
        self.assertTrue(all(b < a for a, b in zip(values, values[1:])))
        self.assertAlmostEqual(values[-1], report["closed_form_limit"], delta=1e-3)

    def test_csv_table(self):
        text = opspace("distance", "--n", 2, "--levels", 1, "--samples", 2, "--format", "csv")
        lines = text.strip().splitlines()
        self.assertEqual(lines[0], "pair,n,forward_lower,inverse_lower,product_lower,closed_form")
        self.assertEqual(len(lines), 1 + 10)

    def test_out_flag_selects_csv(self):
        text = opspace("distance", "--pair", "Rn:Cn", "--n", 3, "--levels", 1, "--samples", 2, "--out", "csv")
        lines = text.strip().splitlines()
        self.assertEqual(lines[0], "pair,n,forward_lower,inverse_lower,product_lower,closed_form")
        fields = lines[1].split(",")
        self.assertEqual(len(lines), 2)
        self.assertEqual(fields[1], "3")
        self.assertEqual(float(fields[5]), 3.0)

    def test_render_csv_blank_closed_form(self):
        text = render_csv([{"pair": "a:b", "n": 2, "product_lower": 1.5, "closed_form": None}])
        self.assertEqual(text.splitlines()[1], "a:b,2,,,1.5,")


class BuildAndClassifyCommandTests(SimpleTestCase):
    def test_build_hnk(self):
        report = json.loads(opspace("build", "--space", "hnk", "--n", 4, "--k", 2))
        self.assertEqual(report["data"]["name"], "H_4^2")
        self.assertEqual(len(report["data"]["basis"]), 4)
        self.assertEqual(report["data"]["components"][0]["rows"], 6)

    def test_build_one(self):
        report = json.loads(opspace("build", "--space", "ones", "--n", 4, "--k", 2, "--I", 1, "--J", 2, 3))
        self.assertTrue(report["one"])
        self.assertIn(report["data"]["sign"], (-1, 1))

    def test_classify_file(self):
        family = [matrix_to_json(b[0]) for b in build_column(3).basis]
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "family.json"
            path.write_text(json.dumps({"family": family}), encoding="utf-8")
            report = json.loads(opspace("classify", "--input", path))
        self.assertEqual(report["data"]["verdict"], "C_3")
        self.assertEqual(report["tro"], "C")

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            self.assertEqual(opspace("verify", "--suite", "tro", "--n", 2, "--report-file", path), "")
            self.assertTrue(json.loads(path.read_text(encoding="utf-8"))["pass"])


class ExitCodeTests(SimpleTestCase):
    def test_subcommand_parsers(self):
        parser = Command().create_parser("manage.py", "opspace")
        options = parser.parse_args(["distance", "--pair", "Rn:Cn", "--n", "3", "--out", "csv"])
        self.assertEqual(options.format, "csv")
        self.assertIsNone(options.report_file)

    def test_usage_errors_exit_2(self):
        self.assertEqual(failing("verify", "--suite", "grid", "--n", 20)[0], 2)
        self.assertEqual(failing("verify", "--suite", "nonsense", "--n", 2)[0], 2)
        self.assertEqual(failing("verify", "--n", 2, "--structural-tol", 1e-15)[0], 2)

    def test_failed_check_exits_1(self):
        unit = {"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0], [0, 0]]}
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "family.json"
            path.write_text(json.dumps([unit, unit]), encoding="utf-8")
            code, out = failing("classify", "--input", path)
        self.assertEqual(code, 1)
        report = json.loads(out)
        self.assertFalse(report["pass"])
        self.assertIn("u_1 and u_2", report["error"])


class ApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_verify(self):
        response = self.client.post("/api/v1/verify/", {"n": 2, "suite": "tro"}, format="json")
        self.assertEqual(response.status_code, 200)
        self.assertTrue(response.json()["success"])

    def test_invalid(self):
        response = self.client.post("/api/v1/build/", {"n": 2}, format="json")
        self.assertEqual(response.status_code, 400)
        self.assertFalse(response.json()["success"])

    def test_health(self):
        self.assertEqual(self.client.get("/health/").json()["status"], "healthy")
