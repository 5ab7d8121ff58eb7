"""Uniform report rendering for the CLI: labelled checks, counters,
deterministic text and JSON output, exit-code mapping."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)  # (label, "pass"/"fail"/"skip", details)
    counters: dict = field(default_factory=dict)

    def add(self, label: str, status: str, details: str = ""):
        if status not in ("pass", "fail", "skip"):
            raise ValueError(f"bad status {status!r}")
        self.checks.append((label, status, details))

    def add_bool(self, label: str, ok: bool, details: str = ""):
        self.add(label, "pass" if ok else "fail", details)

    def merge_checks(self, check_report, prefix: str = ""):
        """Fold in a surface.CheckReport-style object."""
        for label, ok, details in check_report.checks:
            self.add_bool(prefix + label, ok, details)
        for name, value in check_report.counters.items():
            self.counters[name] = value

    @property
    def status(self) -> str:
        return "fail" if any(s == "fail" for _, s, _ in self.checks) else "pass"

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "pass" else 1

    def to_text(self) -> str:
        lines = [f"[{self.command}]"]
        for label, status, details in self.checks:
            mark = {"pass": "ok", "fail": "FAIL", "skip": "skip"}[status]
            line = f"  {mark:4s} {label}"
            if details:
                line += f"  ({details})"
            lines.append(line)
        for name in sorted(self.counters):
            lines.append(f"  #    {name} = {self.counters[name]}")
        lines.append(f"  => {self.status}")
        return "\n".join(lines)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "status": self.status,
            "checks": [
                {"label": label, "status": status, "details": details}
                for label, status, details in self.checks
            ],
            "counters": {k: self.counters[k] for k in sorted(self.counters)},
        }
        return json.dumps(payload, sort_keys=True)
