import unittest
from unittest import mock
import contextlib
import io
import math
import os
import sys
sys.path.append("src")
import jsonschema
from spincouple.cli import main
from spincouple.report import validate, dumps_json, loads_json, use_color, verdict, Renderer
from spincouple.util import DomainError, ConfigError, parse_bool
from spincouple.config import load_config

def run(*argv):
    '''Run the command line and return (exit code, stdout, stderr).'''
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()

def run_json(*argv):
    code, out, err = run(*argv, "--format", "json")
    return code, loads_json(out) if out else None, err

class TestCommands(unittest.TestCase):

    def setUp(self):
        patcher = mock.patch.dict(os.environ, {"SPINCOUPLE_COLOR": "never"})
        patcher.start()
        self.addCleanup(patcher.stop)
        for name in ("SPINCOUPLE_FORMAT", "SPINCOUPLE_BASIS", "SPINCOUPLE_TIMESTAMPS", "NO_COLOR"):
            os.environ.pop(name, None)

    def test_cg(self):
        code, doc, _ = run_json("cg", "1", "0", "1", "0", "2", "0")
        self.assertEqual(code, 0)
        self.assertEqual(doc["results"]["value"], "(1/3)*sqrt(6)")
        self.assertAlmostEqual(doc["results"]["approx"], 0.81650, places=5)
        self.assertEqual(doc["verdicts"], [])
        self.assertTrue(doc["ok"])

        self.assertEqual(run_json("cg", "1", "1", "1", "1", "2", "2")[1]["results"]["value"], "1")
        self.assertEqual(run_json("cg", "1", "1", "1", "1", "1", "2")[1]["results"]["value"], "0")

    def test_cg_negative_labels(self):
        code, doc, _ = run_json("cg", "1/2", "1/2", "1/2", "-1/2", "0", "0")
        self.assertEqual(code, 0)
        self.assertEqual(doc["results"]["value"], "(1/2)*sqrt(2)")
        self.assertEqual(doc["inputs"]["m2"], "-1/2")
        code, doc, _ = run_json("cg", "1", "-1", "1", "1", "0", "0")
        self.assertEqual(doc["results"]["value"], "(1/3)*sqrt(3)")

    def test_cg_too_large(self):
        code, _, err = run("cg", "50", "0", "1", "0", "50", "0")
        self.assertEqual(code, 2)
        self.assertIn("spincouple: error", err)

    def test_couple(self):
        code, doc, _ = run_json("couple")
        self.assertEqual(code, 0)
        self.assertEqual(len(doc["results"]["states"]), 9)
        self.assertEqual(
            [(r["eigenvalue"], r["multiplicity"]) for r in doc["results"]["eigenvalues"]],
            [("6", 5), ("2", 3), ("0", 1)]
        )
        s3 = doc["results"]["states"][2]
        self.assertEqual(s3["state"], "1/sqrt(6) * (chi(1) x chi(-1) + 2 chi(0) x chi(0) + chi(-1) x chi(1))")
        self.assertEqual(s3["exchange_parity"], 1)
        self.assertEqual(s3["schmidt_rank"], 3)
        self.assertTrue(all(v["ok"] for v in doc["verdicts"]))

    def test_couple_electrons_and_bases(self):
        code, doc, _ = run_json("couple", "--j1", "1/2", "--j2", "1/2")
        self.assertEqual(code, 0)
        self.assertEqual(len(doc["results"]["states"]), 4)
        code, doc, _ = run_json("couple", "--basis", "m")
        self.assertEqual(doc["inputs"]["basis"], "standard_m")
        code, doc, _ = run_json("couple", "--basis", "cartesian")
        self.assertEqual(code, 0)
        self.assertEqual(doc["inputs"]["basis"], "cartesian")

    def test_couple_unsupported(self):
        code, out, err = run("couple", "--j1", "7/2", "--j2", "1")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("spincouple: error", err)

    def test_couple_float_fallback(self):
        code, doc, _ = run_json("couple", "--j1", "3/2", "--j2", "1/2", "--float-fallback")
        self.assertEqual(code, 0)
        self.assertEqual(doc["results"]["arithmetic"], "float")
        self.assertTrue(doc["inputs"]["float_fallback"])
        self.assertEqual(len(doc["results"]["states"]), 8)
        self.assertEqual(
            [(r["S"], r["multiplicity"]) for r in doc["results"]["eigenvalues"]],
            [("2", 5), ("1", 3)]
        )
        top = doc["results"]["states"][0]["components"]
        self.assertEqual(top[0], [1.0, 0.0])
        self.assertLess(doc["results"]["clebsch_gordan"]["max_deviation"], 1e-12)
        self.assertTrue(doc["ok"])
        validate(doc)

        self.assertEqual(run("couple", "--j1", "3/2", "--j2", "1/2")[0], 2)
        self.assertEqual(run("couple", "--j1", "3/2", "--j2", "1/2", "--float-fallback", "--basis", "cartesian")[0], 2)
        code, doc, _ = run_json("couple", "--float-fallback")
        self.assertEqual(doc["results"]["arithmetic"], "exact")

    def test_verify(self):
        text = "1/sqrt(6) * (chi(1) x chi(-1) + 2 chi(0) x chi(0) + chi(-1) x chi(1))"
        code, doc, _ = run_json("verify", text, "--S", "2", "--mu", "0")
        self.assertEqual(code, 0)
        self.assertEqual(doc["verdicts"][0]["observed"], "PASS")
        self.assertEqual(doc["results"]["s2_residual"], "0")

        code, doc, _ = run_json("verify", "chi(0) x chi(0)", "--S", "0", "--mu", "0")
        self.assertEqual(code, 1)
        self.assertFalse(doc["ok"])
        self.assertEqual(doc["verdicts"][0]["observed"], "FAIL")
        # S^2 chi(0) chi(0) = 4 chi(0) chi(0) + 2 (chi(1) chi(-1) + chi(-1) chi(1))
        self.assertEqual(doc["results"]["s2_residual"], "2 * (chi(1) x chi(-1) + 2 chi(0) x chi(0) + chi(-1) x chi(1))")

    def test_verify_electrons(self):
        singlet = "1/sqrt(2) * (chi(1/2) x chi(-1/2) - chi(-1/2) x chi(1/2))"
        code, _, _ = run_json("verify", singlet, "--S", "0", "--mu", "0", "--j1", "1/2", "--j2", "1/2")
        self.assertEqual(code, 0)
        code, _, _ = run_json("verify", singlet, "--S", "1", "--mu", "0", "--j1", "1/2", "--j2", "1/2")
        self.assertEqual(code, 1)

    def test_syntax_error(self):
        code, out, err = run("verify", "1/sqrt(", "--S", "0", "--mu", "0")
        self.assertEqual(code, 2)
        self.assertIn("1:8", err)
        self.assertEqual(out, "")

    def test_zero_state(self):
        code, _, err = run("verify", "chi(1) x chi(1) - chi(1) x chi(1)", "--S", "2", "--mu", "2")
        self.assertEqual(code, 2)
        self.assertIn("zero vector", err)

    def test_entangle(self):
        code, doc, _ = run_json("entangle", "--paper-state", "S6")
        self.assertEqual(code, 0)
        self.assertEqual(doc["results"]["schmidt"]["rank"], 3)
        self.assertAlmostEqual(doc["results"]["schmidt"]["entropy"], math.log(3), places=12)
        self.assertEqual(doc["results"]["entropy_unit"], "nats")

        code, doc, _ = run_json("entangle", "chi(1) x chi(1)")
        self.assertEqual(doc["results"]["schmidt"]["rank"], 1)
        self.assertEqual(doc["results"]["schmidt"]["entropy"], 0.0)
        self.assertTrue(doc["results"]["schmidt"]["is_product"])

    def test_entangle_bell(self):
        code, doc, _ = run_json("entangle", "--bell", "HH+VV")
        self.assertEqual(code, 0)
        self.assertEqual(doc["results"]["state"], "1/sqrt(2) * (-chi(1) x chi(-1) - chi(-1) x chi(1))")
        self.assertEqual(len(doc["results"]["decomposition"]), 2)
        self.assertEqual(doc["results"]["total_probability"], "1")
        self.assertEqual(doc["results"]["schmidt"]["rank"], 2)

    def test_entangle_needs_one_source(self):
        self.assertEqual(run("entangle")[0], 2)
        self.assertEqual(run("entangle", "chi(1) x chi(1)", "--paper-state", "S1")[0], 2)

    def test_usage_errors(self):
        self.assertEqual(run("couple", "--bogus")[0], 2)
        self.assertEqual(run()[0], 2)
        self.assertEqual(run("--help")[0], 0)
        self.assertEqual(run("couple", "--j1", "1/3")[0], 2)

class TestPaperReport(unittest.TestCase):

    def setUp(self):
        patcher = mock.patch.dict(os.environ, {"SPINCOUPLE_COLOR": "never"})
        patcher.start()
        self.addCleanup(patcher.stop)
        for name in ("SPINCOUPLE_FORMAT", "SPINCOUPLE_BASIS", "SPINCOUPLE_TIMESTAMPS", "NO_COLOR"):
            os.environ.pop(name, None)

    def test_verdicts(self):
        code, doc, _ = run_json("paper-report")
        self.assertEqual(code, 0)
        self.assertTrue(doc["ok"])
        failures = [v for v in doc["verdicts"] if v["expected"] == "FAIL"]
        self.assertEqual(len(failures), 2)
        self.assertEqual(
            sorted(v["name"] for v in failures),
            ["candidate S3 trial is |2, 0>", "candidate S6 trial is |0, 0>"]
        )
        self.assertTrue(all(v["ok"] for v in doc["verdicts"]))
        ansatz = {row["label"]: row["ratio"] for row in doc["results"]["ansatz"]}
        self.assertEqual(ansatz, {"S3": "2", "S6": "-1"})
        self.assertEqual(doc["results"]["bell"]["span_dimension"], 4)

    def test_deterministic_and_valid(self):
        first = run("paper-report", "--format", "json")[1]
        second = run("paper-report", "--format", "json")[1]
        self.assertEqual(first, second)
        doc = loads_json(first)
        validate(doc)
        self.assertNotIn("generated_at", doc)
        self.assertEqual(dumps_json(doc) + "\n", first)

    def test_timestamps(self):
        code, doc, _ = run_json("cg", "1", "0", "1", "0", "2", "0", "--timestamps")
        self.assertIn("generated_at", doc)
        validate(doc)

    def test_schema_rejects(self):
        doc = loads_json(run("cg", "1", "0", "1", "0", "2", "0", "--format", "json")[1])
        doc["extra"] = 1
        with self.assertRaises(jsonschema.ValidationError):
            validate(doc)

    def test_text(self):
        code, out, _ = run("paper-report")
        self.assertEqual(code, 0)
        self.assertIn("== verdicts ==", out)
        self.assertIn("verdicts as expected: OK", out)
        self.assertNotIn("\033[", out)

    def test_color(self):
        code, out, _ = run("paper-report", "--color", "always")
        self.assertIn("\033[32m", out)

    def test_environment(self):
        with mock.patch.dict(os.environ, {"SPINCOUPLE_FORMAT": "json"}):
            code, out, _ = run("cg", "1", "0", "1", "0", "2", "0")
        self.assertEqual(loads_json(out)["command"], "cg")
        with mock.patch.dict(os.environ, {"SPINCOUPLE_FORMAT": "json"}):
            code, out, _ = run("cg", "1", "0", "1", "0", "2", "0", "--format", "text")
        self.assertTrue(out.startswith("cg [spincouple/1]"))
        with mock.patch.dict(os.environ, {"SPINCOUPLE_BASIS": "cartesian"}):
            code, doc, _ = run_json("couple")
        self.assertEqual(doc["inputs"]["basis"], "cartesian")
        with mock.patch.dict(os.environ, {"SPINCOUPLE_COLOR": "purple"}):
            code, _, err = run("cg", "1", "0", "1", "0", "2", "0")
        self.assertEqual(code, 2)
        self.assertIn("SPINCOUPLE_COLOR", err)

    def test_internal_errors_propagate(self):
        with mock.patch("spincouple.cli.cmd_cg", side_effect=ValueError("internal")):
            with self.assertRaises(ValueError):
                run("cg", "1", "0", "1", "0", "2", "0")
        with mock.patch.dict(os.environ, {"SPINCOUPLE_TIMESTAMPS": "maybe"}):
            with self.assertRaises(ConfigError):
                load_config(dotenv=False)
            code, _, err = run("cg", "1", "0", "1", "0", "2", "0")
        self.assertEqual(code, 2)
        self.assertIn("SPINCOUPLE_TIMESTAMPS", err)

class TestReport(unittest.TestCase):

    def test_verdict(self):
        v = verdict("claim", False, expected=False)
        self.assertEqual((v["observed"], v["expected"], v["ok"]), ("FAIL", "FAIL", True))

    def test_use_color(self):
        self.assertTrue(use_color("always"))
        self.assertFalse(use_color("never"))
        with mock.patch.dict(os.environ, {"NO_COLOR": "1"}):
            self.assertFalse(use_color("auto", io.StringIO()))
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertFalse(use_color("auto", io.StringIO()))

    def test_parse_bool(self):
        self.assertTrue(parse_bool(" Yes "))
        self.assertFalse(parse_bool("off"))
        self.assertFalse(parse_bool(False))
        with self.assertRaises(ValueError):
            parse_bool("enable")

    def test_renderers(self):
        self.assertEqual(sorted(Renderer.registry), ["json", "text"])
        with self.assertRaises(DomainError):
            Renderer.find("yaml")

if __name__ == '__main__':
    unittest.main()
