"""Structured pass/fail reports shared by all checkers.

A report is a named list of keyed verdicts with JSON-friendly detail
payloads.  Instances are sorted by key on serialisation so identical
runs produce identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckItem:
    key: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"key": self.key, "ok": self.ok, "detail": self.detail}


class CheckReport:
    """An ordered collection of check items under one suite name."""

    def __init__(self, name, items=()):
        self.name = name
        self.items = list(items)

    def add(self, key, ok, **detail):
        self.items.append(CheckItem(key=key, ok=bool(ok), detail=detail))

    def extend(self, other, prefix=""):
        for item in other.items:
            self.items.append(CheckItem(key=prefix + item.key, ok=item.ok,
                                        detail=item.detail))

    @property
    def ok(self):
        return all(item.ok for item in self.items)

    @property
    def failures(self):
        return [item for item in self.items if not item.ok]

    def to_json(self):
        return {
            "schema": "cubicoh-report/1",
            "name": self.name,
            "checks": len(self.items),
            "failures": len(self.failures),
            "items": [item.to_json()
                      for item in sorted(self.items, key=lambda i: i.key)],
        }

    def summary(self):
        return "%-18s %4d checks, %d failures" % (
            self.name, len(self.items), len(self.failures))

    def __repr__(self):
        return "<CheckReport %s: %d/%d ok>" % (
            self.name, len(self.items) - len(self.failures), len(self.items))
