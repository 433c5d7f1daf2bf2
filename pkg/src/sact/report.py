"""Suite reports: one structured record per finding, rendered as JSON lines or text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

MAX_WITNESSES = 25

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BOUNDS, EXIT_PARTIAL = 0, 1, 2, 3, 4


@dataclass
class Finding:
    check: str
    anchor: str
    status: str  # pass | fail | skip | info
    subject: str = ""
    detail: dict = field(default_factory=dict)

    def record(self) -> dict:
        return {
            "record": "finding",
            "check": self.check,
            "anchor": self.anchor,
            "status": self.status,
            "subject": self.subject,
            "detail": self.detail,
        }


@dataclass
class Report:
    suite: str
    findings: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    context: dict = field(default_factory=dict)

    def add(self, check, anchor, status, subject="", **detail):
        self.findings.append(Finding(check, anchor, status, subject, detail))

    def extend(self, other: "Report"):
        self.findings.extend(other.findings)
        self.timing.update(other.timing)

    def add_axiom(self, rep, subject="", check=None):
        """Flatten an AxiomReport into findings, one per part (or one for the whole)."""
        parts = rep.parts or {"": rep}
        for key, part in parts.items():
            name = check or rep.name
            if key:
                name = f"{name}.{key}"
            anchor = part.anchor or rep.anchor
            detail = {}
            if rep.notes:
                detail["assumptions"] = list(rep.notes)
            if part.data:
                detail["data"] = part.data
            if part.skipped:
                # cases outside the universe; the check is universe-relative by design
                detail["bounded_skips"] = part.skipped[:MAX_WITNESSES]
                detail["bounded_skip_count"] = len(part.skipped)
            if part.witnesses:
                detail["witnesses"] = part.witnesses[:MAX_WITNESSES]
                detail["witness_count"] = len(part.witnesses)
                self.findings.append(Finding(name, anchor, "fail", subject, detail))
            else:
                self.findings.append(Finding(name, anchor, "pass", subject, detail))
        if rep.parts and rep.witnesses:
            self.findings.append(Finding(check or rep.name, rep.anchor, "fail", subject,
                                         {"witnesses": rep.witnesses[:MAX_WITNESSES],
                                          "witness_count": len(rep.witnesses)}))

    @property
    def verdict(self) -> str:
        statuses = {f.status for f in self.findings}
        if "fail" in statuses:
            return "fail"
        if "skip" in statuses:
            return "partial"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "partial": EXIT_PARTIAL}[self.verdict]

    def records(self, timing=False) -> list:
        head = {"record": "report", "suite": self.suite, "verdict": self.verdict,
                "findings": len(self.findings), "context": self.context}
        out = [head] + [f.record() for f in self.findings]
        if timing:
            out.append({"record": "timing", "seconds": {k: round(v, 6) for k, v in self.timing.items()}})
        return out

    def render_records(self, timing=False) -> str:
        return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n"
                       for r in self.records(timing))

    def render_human(self, timing=True) -> str:
        lines = []
        for rec in self.records(timing):
            kind = rec["record"]
            if kind == "report":
                ctx = " ".join(f"{k}={v}" for k, v in sorted(rec["context"].items()))
                lines.append(f"== {rec['suite']}: {rec['verdict'].upper()} "
                             f"({rec['findings']} findings){' ' + ctx if ctx else ''}")
            elif kind == "finding":
                subject = f" [{rec['subject']}]" if rec["subject"] else ""
                lines.append(f"  {rec['status'].upper():5} {rec['check']}{subject}  <{rec['anchor']}>")
                for key in sorted(rec["detail"]):
                    lines.append(f"        {key}: {json.dumps(rec['detail'][key], sort_keys=True)}")
            else:
                for k, v in sorted(rec["seconds"].items()):
                    lines.append(f"  time  {k}: {v:.3f}s")
        return "\n".join(lines) + "\n"
