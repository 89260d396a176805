"""
Tests for the Report component: statuses, locations and rendering.
"""
import json
import sys
import unittest
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1]))

from mrdkit.components.report import FAIL, PASS, SKIPPED, Report
from mrdkit.utils.errors import NotApplicable, TooLarge


def too_large():
    raise TooLarge(10, 5, "codeword enumeration")


def not_applicable():
    raise NotApplicable("needs even n")


class TestChecks(unittest.TestCase):
    def setUp(self):
        self.report = Report("verify-theorems --q 3 --n 2", {"q": 3})

    def test_statuses(self):
        self.report.check("yes", "holds", lambda: True, "Lemma qf")
        self.report.check("no", "fails", lambda: (False, {"d": 1}))
        self.report.check("big", "capped", too_large)
        self.report.check("odd", "not here", not_applicable)
        self.assertEqual([e.status for e in self.report.entries], [PASS, FAIL, SKIPPED, SKIPPED])
        self.assertTrue(self.report.entries[2].reason.startswith("TooLarge"))
        self.assertEqual(self.report.entries[1].witness, {"d": 1})
        self.assertEqual(self.report.exit_code(), 1)

    def test_location_in_json(self):
        self.report.check("shift-det", "det(A) = -1", lambda: True, location="Lemma basic (i)")
        self.report.add("D self-dual", "certificate relation", PASS)
        entries = json.loads(self.report.render("json", canonical=True))["checks"]
        self.assertEqual(entries[0]["location"], "Lemma basic (i)")
        self.assertEqual(entries[1]["location"], "")
        self.assertNotIn("elapsed_ms", entries[0])

    def test_location_column_in_text(self):
        self.report.check("shift-det", "det(A) = -1", lambda: True, location="Lemma basic (i)")
        text = self.report.render("text", canonical=True)
        self.assertIn("location", text)
        self.assertIn("Lemma basic (i)", text)
        self.assertIn("1 passed, 0 failed, 0 skipped", text)

    def test_no_location_column_without_locations(self):
        self.report.check("is-mrd", "dim = m (n - d + 1)", lambda: True)
        self.assertNotIn("location", self.report.render("text", canonical=True))


if __name__ == "__main__":
    unittest.main()
