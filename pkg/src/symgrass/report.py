"""Verification reports and their serializations.

A report is a flat list of check records plus run metadata. Serialization
is deterministic: the run id is a hash of the parameters, and reruns with
identical parameters produce identical output except for the timing
fields (`created`, `elapsed_s`).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from dataclasses import dataclass, field

from .errors import UnsupportedFormat

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-budget"


@dataclass
class CheckRecord:
    name: str
    claim: str
    expected: object
    computed: object
    status: str
    source: str = ""
    note: str = ""
    elapsed_s: float = 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "claim": self.claim,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "source": self.source,
            "note": self.note,
            "elapsed_s": round(self.elapsed_s, 6),
        }


@dataclass
class VerificationReport:
    parameters: dict
    checks: list[CheckRecord] = field(default_factory=list)
    created: str = ""

    def __post_init__(self):
        if not self.created:
            self.created = time.strftime("%Y-%m-%dT%H:%M:%S")

    @property
    def run_id(self) -> str:
        blob = json.dumps(self.parameters, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]

    def add(self, record: CheckRecord):
        self.checks.append(record)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for c in self.checks:
            out[c.status] = out.get(c.status, 0) + 1
        return out

    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "created": self.created,
            "parameters": self.parameters,
            "counts": self.counts(),
            "checks": [c.to_dict() for c in self.checks],
        }


def check(name: str, claim: str, expected, computed, source: str = "",
          note: str = "", elapsed_s: float = 0.0) -> CheckRecord:
    """Build a pass/fail record by comparing computed against expected."""
    status = PASS if computed == expected else FAIL
    return CheckRecord(
        name=name,
        claim=claim,
        expected=expected,
        computed=computed,
        status=status,
        source=source,
        note=note,
        elapsed_s=elapsed_s,
    )


def skipped(name: str, claim: str, needed: int, budget: int,
            source: str = "") -> CheckRecord:
    return CheckRecord(
        name=name,
        claim=claim,
        expected=None,
        computed=None,
        status=SKIPPED,
        source=source,
        note=f"needs {needed} units, budget {budget}",
    )


def report_emit(r: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "claim", "source", "expected", "computed", "status", "note"])
        for c in r.checks:
            writer.writerow(
                [c.name, c.claim, c.source, c.expected, c.computed, c.status, c.note]
            )
        return buf.getvalue()
    if fmt == "text":
        lines = [f"run {r.run_id}"]
        for c in r.checks:
            tag = c.status.upper()
            line = f"[{tag}] {c.name}: expected {c.expected}, computed {c.computed}"
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
        counts = r.counts()
        lines.append(
            f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIPPED]} skipped"
        )
        return "\n".join(lines) + "\n"
    raise UnsupportedFormat(f"unknown format {fmt!r}")
