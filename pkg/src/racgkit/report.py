"""Verification results: one record per check, rendered as text or JSON."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"


@dataclass
class CheckResult:
    name: str
    status: str
    claim: str = ""
    domain_size: int | None = None
    witnesses: list[str] = field(default_factory=list)
    # a mandatory check that comes out vacuous counts as a failure
    mandatory: bool = True
    expect_vacuous: bool = False

    @property
    def failed(self) -> bool:
        if self.status == FAIL:
            return True
        return self.status == VACUOUS and self.mandatory and not self.expect_vacuous

    def line(self) -> str:
        size = "" if self.domain_size is None else f" [domain {self.domain_size}]"
        wit = f" -- {'; '.join(self.witnesses)}" if self.witnesses else ""
        return f"{self.status.upper():8s} {self.name}{size}{wit}"


@dataclass
class Report:
    title: str
    checks: list[CheckResult] = field(default_factory=list)
    sections: list[tuple[str, int]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def section(self, heading: str) -> None:
        self.sections.append((heading, len(self.checks)))

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        for c in checks:
            self.add(c)

    def merge(self, other: "Report") -> None:
        offset = len(self.checks)
        self.sections.extend((h, i + offset) for h, i in other.sections)
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.failed]

    def to_text(self) -> str:
        starts = {}
        for heading, index in self.sections:
            starts.setdefault(index, []).append(heading)
        out = [f"== {self.title}"]
        out += [f"note: {n}" for n in self.notes]
        for i, check in enumerate(self.checks):
            for heading in starts.get(i, []):
                out.append(f"-- {heading}")
            out.append(check.line())
        for heading in starts.get(len(self.checks), []):
            out.append(f"-- {heading}")
        n_fail = len(self.failures())
        out.append(f"== {len(self.checks)} checks, {n_fail} failed: {'OK' if self.ok else 'FAILED'}")
        return "\n".join(out) + "\n"

    def to_dict(self) -> dict:
        section_of = []
        current = ""
        marks = dict()
        for heading, index in self.sections:
            marks[index] = heading
        for i, _ in enumerate(self.checks):
            current = marks.get(i, current)
            section_of.append(current)
        return {
            "title": self.title,
            "ok": self.ok,
            "notes": list(self.notes),
            "checks": [
                dict(asdict(c), section=s, failed=c.failed)
                for c, s in zip(self.checks, section_of)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
