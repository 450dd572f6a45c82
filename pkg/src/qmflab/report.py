"""Machine-readable verification reports (JSON, CSV, plain text)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import Zeta24, format_rat

STATUSES = ("pass", "fail", "skip")


def witness_str(v) -> str:
    """Serialize a witness value; rationals as "num/den", roots of unity as "zeta24^e"."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return format_rat(v)
    if isinstance(v, Zeta24):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return f"{v.real!r}{v.imag:+.17g}j"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(witness_str(x) for x in v) + "]"
    return str(v)


@dataclass
class Check:
    name: str
    status: str
    witnesses: dict = field(default_factory=dict)  # str -> str
    seconds: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        self.witnesses = {str(k): witness_str(v) for k, v in self.witnesses.items()}

    @classmethod
    def of(cls, name: str, ok: bool, seconds: float = 0.0, **witnesses) -> "Check":
        return cls(name, "pass" if ok else "fail", witnesses, seconds)


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def overall(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    @property
    def passed(self) -> bool:
        return self.overall == "pass"

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, dict(c.witnesses), c.seconds))

    def strip_timing(self) -> "Report":
        for c in self.checks:
            c.seconds = 0.0
        return self

    # -------------------------------------------------------- serialization

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "overall": self.overall,
            "checks": [
                {"name": c.name, "status": c.status, "witnesses": c.witnesses, "seconds": c.seconds}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        rep = cls(d["suite"], [Check(c["name"], c["status"], c["witnesses"], c["seconds"]) for c in d["checks"]])
        if d.get("overall", rep.overall) != rep.overall:
            raise ValueError("overall status disagrees with the checks")
        return rep

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "status", "seconds", "witnesses"])
        for c in self.checks:
            wit = "; ".join(f"{k}={v}" for k, v in c.witnesses.items())
            w.writerow([self.suite, c.name, c.status, f"{c.seconds:.3f}", wit])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {self.overall.upper()}"]
        for c in self.checks:
            wit = ", ".join(f"{k}={v}" for k, v in c.witnesses.items())
            lines.append(f"  [{c.status.upper():4}] {c.name} ({c.seconds:.2f}s){'  ' + wit if wit else ''}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")
