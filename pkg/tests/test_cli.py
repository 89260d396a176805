"""
End-to-end tests for the mrdkit command line: exit codes, JSON output and
files written by one command and read by another.
"""
import io
import json
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest import mock

sys.path.append(str(Path(__file__).resolve().parents[1]))

from mrdkit.main import main


def run_cli(*argv):
    """Run mrdkit with `argv`, returning (exit code, stdout text)"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue()


def check_named(document, name):
    return next(entry for entry in document["checks"] if entry["name"] == name)


class TestVerifyTheorems(unittest.TestCase):
    def test_ternary_plane(self):
        code, output = run_cli("--format", "json", "--canonical", "verify-theorems", "--q", "3", "--n", "2")
        self.assertEqual(code, 0)
        document = json.loads(output)
        self.assertEqual(document["summary"]["fail"], 0)
        self.assertEqual(check_named(document, "aut-order")["witness"]["count"], 128)
        self.assertEqual(check_named(document, "classify-2x2")["witness"]["codes"], 8)
        self.assertEqual(check_named(document, "char2-obstruction")["status"], "skipped")
        self.assertEqual(document["results"]["S"], [[1, 1], [2, 1]])
        self.assertNotIn("elapsed_ms", document)

    def test_every_check_has_a_location(self):
        code, output = run_cli("--format", "json", "--canonical", "verify-theorems", "--q", "3", "--n", "2")
        self.assertEqual(code, 0)
        document = json.loads(output)
        self.assertEqual(len(document["checks"]), 32)
        self.assertTrue(all(entry["location"] for entry in document["checks"]))
        self.assertEqual(check_named(document, "symmetry-truth-table")["location"], "Lemma basic (viii)")
        self.assertEqual(check_named(document, "selfdualize")["location"], "Theorem gabisd")

    def test_text_table_shows_locations(self):
        code, output = run_cli("--canonical", "verify-theorems", "--q", "3", "--n", "2")
        self.assertEqual(code, 0)
        self.assertIn("location", output)
        self.assertIn("Lemma notation (iii)", output)

    def test_ternary_dimension_four(self):
        code, output = run_cli("--format", "json", "--canonical", "verify-theorems", "--q", "3", "--n", "4")
        self.assertEqual(code, 0)
        document = json.loads(output)
        self.assertEqual(document["summary"]["fail"], 0)
        for name in ("basechange", "symmetry-truth-table", "half-rank-dual", "triple-scan"):
            self.assertEqual(check_named(document, name)["status"], "pass")
        self.assertEqual(check_named(document, "triple-scan")["witness"]["valid_triples"], 0)

    def test_septenary_plane(self):
        code, output = run_cli("--format", "json", "--canonical", "verify-theorems", "--q", "7", "--n", "2")
        self.assertEqual(code, 0)
        document = json.loads(output)
        self.assertEqual(document["summary"]["fail"], 0)
        self.assertEqual(check_named(document, "classify-2x2")["witness"]["codes"], 16)
        self.assertTrue(check_named(document, "classify-2x2")["witness"]["equivalence_checked"])
        self.assertEqual(check_named(document, "aut-order")["witness"]["count"], 1536)
        self.assertEqual(check_named(document, "selfdualize")["status"], "pass")


class TestSelfDualize(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_impossible_parameters(self):
        for q, n in (("3", "4"), ("5", "2"), ("2", "2"), ("3", "3")):
            code, output = run_cli("--format", "json", "selfdualize", "--q", q, "--n", n)
            self.assertEqual(code, 1)
            self.assertIn("impossible", json.loads(output)["results"])

    def test_certificate_round_trip(self):
        path = self.dir / "certificate.json"
        code, output = run_cli(
            "--format", "json", "selfdualize", "--q", "3", "--n", "2",
            "--emit-certificate", "--out", str(path),
        )
        self.assertEqual(code, 0)
        document = json.loads(output)
        self.assertEqual(document["results"]["params"], {"h": 1, "i": 4, "j": 0})
        self.assertTrue(path.exists())

        code, output = run_cli("--format", "json", "verify-certificate", "--in", str(path))
        self.assertEqual(code, 0)
        self.assertEqual(check_named(json.loads(output), "certificate-mrd")["status"], "pass")

    def test_default_scan_cap(self):
        code, output = run_cli("--format", "json", "selfdualize", "--q", "3", "--n", "8")
        self.assertEqual(code, 1)
        self.assertFalse(json.loads(output)["results"]["evidence"]["exhaustive"])
        code, output = run_cli("--format", "json", "selfdualize", "--q", "3", "--n", "4")
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(output)["results"]["evidence"]["evaluations"], 640)

    def test_explicit_cap_narrows_scan(self):
        code, output = run_cli("--format", "json", "--max-work", "100", "selfdualize", "--q", "3", "--n", "4")
        self.assertEqual(code, 1)
        self.assertFalse(json.loads(output)["results"]["evidence"]["exhaustive"])

    def test_second_case(self):
        code, _ = run_cli("selfdualize", "--q", "7", "--n", "2", "--case", "b")
        self.assertEqual(code, 0)

    def test_classification(self):
        code, output = run_cli("--format", "json", "classify2x2", "--q", "5")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(output)["results"]["codes"], [])
        code, output = run_cli("--format", "json", "classify2x2", "--q", "3")
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(output)["results"]["codes"]), 8)


class TestCodeFiles(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.code_path = self.dir / "gabidulin.json"
        code, _ = run_cli("construct", "--q", "3", "--n", "2", "--ell", "1", "--out", str(self.code_path))
        self.assertEqual(code, 0)

    def tearDown(self):
        self.tmp.cleanup()

    def test_is_mrd(self):
        self.assertEqual(run_cli("is-mrd", "--in", str(self.code_path))[0], 0)

    def test_is_not_self_dual(self):
        self.assertEqual(run_cli("is-selfdual", "--in", str(self.code_path))[0], 1)

    def test_distance(self):
        code, output = run_cli("--format", "json", "distance", "--in", str(self.code_path))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(output)["results"]["min_distance"], 2)

    def test_dual(self):
        dual_path = self.dir / "dual.json"
        code, output = run_cli("--format", "json", "dual", "--in", str(self.code_path), "--out", str(dual_path))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(output)["results"]["dual_dimension"], 2)
        self.assertEqual(run_cli("is-mrd", "--in", str(dual_path))[0], 0)

    def test_work_cap(self):
        self.assertEqual(run_cli("--max-work", "1", "is-mrd", "--in", str(self.code_path))[0], 3)

    def test_zero_work_cap(self):
        self.assertEqual(run_cli("--max-work", "0", "is-mrd", "--in", str(self.code_path))[0], 3)

    def test_work_cap_from_environment(self):
        with mock.patch.dict("os.environ", {"MRDKIT_MAX_WORK": "1"}):
            self.assertEqual(run_cli("is-mrd", "--in", str(self.code_path))[0], 3)

    def test_bad_work_cap_in_environment(self):
        with mock.patch.dict("os.environ", {"MRDKIT_MAX_WORK": "lots"}):
            self.assertEqual(run_cli("is-mrd", "--in", str(self.code_path))[0], 2)

    def test_negative_work_cap(self):
        self.assertEqual(run_cli("--max-work", "-1", "is-mrd", "--in", str(self.code_path))[0], 2)

    def test_missing_file(self):
        self.assertEqual(run_cli("is-mrd", "--in", str(self.dir / "absent.json"))[0], 2)

    def test_malformed_file(self):
        broken = self.dir / "broken.json"
        broken.write_text("[1, 2")
        self.assertEqual(run_cli("is-selfdual", "--in", str(broken))[0], 2)


class TestUsage(unittest.TestCase):
    def test_missing_argument(self):
        self.assertEqual(run_cli("construct", "--q", "3")[0], 2)

    def test_unknown_command(self):
        self.assertEqual(run_cli("encrypt")[0], 2)

    def test_not_a_prime_power(self):
        self.assertEqual(run_cli("verify-theorems", "--q", "6", "--n", "2")[0], 2)

    def test_bad_ell(self):
        self.assertEqual(run_cli("automorphisms", "--q", "3", "--n", "2", "--ell", "2")[0], 2)

    def test_help(self):
        self.assertEqual(run_cli("--help")[0], 0)

    def test_canonical_output_is_stable(self):
        argv = ("--canonical", "automorphisms", "--q", "3", "--n", "2", "--exhaustive")
        first = run_cli(*argv)
        second = run_cli(*argv)
        self.assertEqual(first, second)
        self.assertEqual(first[0], 0)


if __name__ == "__main__":
    unittest.main()
