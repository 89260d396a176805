"""
Report component for mrdkit commands

A Report collects one CheckEntry per property checked plus free-form
results, and renders them as JSON or as an aligned text table. Canonical
rendering drops timings so identical invocations print identical bytes.
"""
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

# Add repository root to path to import config
sys.path.append(str(Path(__file__).resolve().parents[2]))
from config.settings import EXIT_CODES, JSON_INDENT, STATUS_NAMES

from mrdkit.utils.errors import (
    CharTwo, InvariantError, MrdkitError, NotApplicable, OddN, TooLarge,
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

# Preconditions that turn a check into a skip rather than a failure
SKIP_ERRORS = (TooLarge, NotApplicable, OddN, CharTwo)


@dataclass
class CheckEntry:
    name: str
    statement: str
    status: str
    elapsed_ms: float = 0.0
    reason: str = ""
    witness: object = None
    location: str = ""      # where the property is stated, e.g. "Lemma basic (viii)"

    def to_dict(self, canonical=False):
        entry = {
            "name": self.name,
            "location": self.location,
            "statement": self.statement,
            "status": self.status,
        }
        if self.reason:
            entry["reason"] = self.reason
        if self.witness is not None:
            entry["witness"] = self.witness
        if not canonical:
            entry["elapsed_ms"] = round(self.elapsed_ms, 3)
        return entry


@dataclass
class Report:
    command: str
    context: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    started: float = field(default_factory=time.perf_counter)

    def add(self, name, statement, status, reason="", witness=None, elapsed_ms=0.0, location=""):
        entry = CheckEntry(name, statement, status, elapsed_ms, reason, witness, location)
        self.entries.append(entry)
        return entry

    def check(self, name, statement, fn, location=""):
        """
        Run `fn` and record the outcome

        Args:
            name: Short identifier of the check
            statement: Human-readable property being checked
            fn: Callable returning a bool, or (bool, witness)
            location: Where the property is stated

        Returns:
            The recorded CheckEntry
        """
        start = time.perf_counter()
        status, reason, witness = FAIL, "", None
        try:
            outcome = fn()
            if isinstance(outcome, tuple):
                outcome, witness = outcome
            status = PASS if outcome else FAIL
        except SKIP_ERRORS as e:
            status, reason = SKIPPED, f"{type(e).__name__}: {e}"
        except InvariantError as e:
            reason = f"invariant violated: {e}"
        except MrdkitError as e:
            reason = f"{type(e).__name__}: {e}"
        elapsed = (time.perf_counter() - start) * 1000
        logger.info("%s: %s (%.1f ms)", name, STATUS_NAMES[status], elapsed)
        return self.add(name, statement, status, reason, witness, elapsed, location)

    def counts(self):
        tally = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for entry in self.entries:
            tally[entry.status] += 1
        return tally

    @property
    def passed(self):
        return all(entry.status != FAIL for entry in self.entries)

    def exit_code(self):
        return EXIT_CODES["pass"] if self.passed else EXIT_CODES["fail"]

    def to_dict(self, canonical=False):
        document = {
            "command": self.command,
            "context": self.context,
            "checks": [entry.to_dict(canonical) for entry in self.entries],
            "results": self.results,
            "summary": self.counts(),
        }
        if not canonical:
            document["elapsed_ms"] = round((time.perf_counter() - self.started) * 1000, 3)
        return document

    def render_json(self, canonical=False):
        return json.dumps(self.to_dict(canonical), indent=JSON_INDENT, sort_keys=True)

    def render_text(self, canonical=False):
        lines = [f"mrdkit {self.command}"]
        for key in sorted(self.context):
            lines.append(f"  {key}: {self.context[key]}")

        if self.entries:
            rows = []
            with_location = any(entry.location for entry in self.entries)
            for entry in self.entries:
                detail = entry.reason or ("" if entry.witness is None else json.dumps(entry.witness, sort_keys=True))
                row = {
                    "check": entry.name,
                    "status": STATUS_NAMES[entry.status],
                    "statement": entry.statement,
                    "detail": detail,
                }
                if with_location:
                    row["location"] = entry.location
                if not canonical:
                    row["ms"] = f"{entry.elapsed_ms:.1f}"
                rows.append(row)
            lines.append("")
            lines.append(pd.DataFrame(rows).to_string(index=False, justify="left"))

        if self.results:
            lines.append("")
            for key in sorted(self.results):
                lines.append(f"{key}: {json.dumps(self.results[key], sort_keys=True)}")

        tally = self.counts()
        lines.append("")
        lines.append(
            f"{tally[PASS]} passed, {tally[FAIL]} failed, {tally[SKIPPED]} skipped"
        )
        if not canonical:
            lines.append(f"elapsed: {(time.perf_counter() - self.started) * 1000:.1f} ms")
        return "\n".join(lines)

    def render(self, fmt="text", canonical=False):
        if fmt == "json":
            return self.render_json(canonical)
        return self.render_text(canonical)
