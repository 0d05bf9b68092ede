"""A small ordered pass/fail/skip report shared by every checker."""

from __future__ import annotations

from typing import Any

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class Report:
    def __init__(self, name: str, **meta):
        self.name = name
        self.meta = dict(meta)
        self.entries: list[dict] = []

    def add(self, check: str, ok: bool, witness: Any = None, **detail) -> bool:
        entry = {"check": check, "status": PASS if ok else FAIL}
        if witness is not None and not ok:
            entry["witness"] = witness
        entry.update(detail)
        self.entries.append(entry)
        return ok

    def skip(self, check: str, reason: str, **detail) -> None:
        entry = {"check": check, "status": SKIPPED, "reason": reason}
        entry.update(detail)
        self.entries.append(entry)

    def merge(self, other: "Report", prefix: str = "") -> None:
        for e in other.entries:
            e = dict(e)
            e["check"] = prefix + e["check"]
            self.entries.append(e)

    def status_of(self, check: str) -> str | None:
        for e in self.entries:
            if e["check"] == check:
                return e["status"]
        return None

    def entry(self, check: str) -> dict | None:
        for e in self.entries:
            if e["check"] == check:
                return e
        return None

    @property
    def failures(self) -> list:
        return [e for e in self.entries if e["status"] == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"report": self.name, "status": PASS if self.passed else FAIL, **self.meta,
                "checks": self.entries}

    def __repr__(self):
        return f"Report({self.name}: {len(self.entries)} checks, {len(self.failures)} failed)"
