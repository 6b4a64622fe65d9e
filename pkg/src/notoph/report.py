"""Deterministic check reports.

A report is a flat list of named check records plus a config echo.  Two
runs with the same configuration must produce byte-identical output, so
records carry no timestamps, environment data, or uncontrolled floats;
exact scalars are serialized as strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass(frozen=True)
class CheckRecord:
    """One verified statement: the identity or equation text, a status,
    and a JSON-ready data payload."""

    name: str
    equation: str
    status: str
    data: dict = field(default_factory=dict)


@dataclass
class Report:
    command: str
    config: dict
    checks: list[CheckRecord] = field(default_factory=list)

    def add(self, name: str, equation: str, passed: bool, **data) -> None:
        self.checks.append(CheckRecord(name, equation, PASS if passed else FAIL, data))

    def info(self, name: str, equation: str, **data) -> None:
        self.checks.append(CheckRecord(name, equation, INFO, data))

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, INFO: 0}
        for check in self.checks:
            out[check.status] += 1
        return out

    def all_passed(self) -> bool:
        return self.counts()[FAIL] == 0

    def exit_code(self) -> int:
        return 0 if self.all_passed() else 1

    def to_payload(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool": {"name": "notoph", "version": __version__},
            "command": self.command,
            "config": self.config,
            "checks": [
                {
                    "name": c.name,
                    "equation": c.equation,
                    "status": c.status,
                    "data": c.data,
                }
                for c in self.checks
            ],
            "summary": self.counts(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"notoph {__version__} :: {self.command}"]
        for key in sorted(self.config):
            lines.append(f"  config {key} = {self.config[key]}")
        for c in self.checks:
            tag = {PASS: "PASS", FAIL: "FAIL", INFO: "info"}[c.status]
            line = f"[{tag}] {c.name} :: {c.equation}"
            if c.data:
                detail = ", ".join(f"{k}={c.data[k]}" for k in sorted(c.data))
                line += f" :: {detail}"
            lines.append(line)
        counts = self.counts()
        lines.append(
            f"summary: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[INFO]} info"
        )
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")
