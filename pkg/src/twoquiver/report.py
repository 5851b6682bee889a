"""Certification reports shared by every checker and the CLI."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class Check:
    name: str
    ok: bool
    count: int = 0
    witness: Any = None
    note: str = ""

    def as_dict(self) -> dict:
        d = {"name": self.name, "ok": self.ok, "count": self.count}
        if self.witness is not None:
            d["witness"] = jsonable(self.witness)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    """A list of named checks; ``status`` is certified iff every check passed."""

    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    error: str | None = None
    started: float = field(default_factory=time.perf_counter)
    elapsed: float | None = None

    def add(self, name: str, ok: bool, count: int = 0, witness=None, note: str = "") -> Check:
        c = Check(name, bool(ok), count, witness, note)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.count, c.witness, c.note))
        if other.error and not self.error:
            self.error = other.error

    def finish(self) -> "Report":
        self.elapsed = time.perf_counter() - self.started
        return self

    @property
    def ok(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "certified" if self.ok else "failed"

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        d = {
            "title": self.title,
            "status": self.status,
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.data:
            d["data"] = jsonable(self.data)
        if self.error:
            d["error"] = self.error
        if self.elapsed is not None:
            d["seconds"] = round(self.elapsed, 4)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"{self.title}: {self.status}"]
        if self.error:
            lines.append(f"  error: {self.error}")
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.count:
                line += f" ({c.count} cases)"
            if c.note:
                line += f" - {c.note}"
            lines.append(line)
            if not c.ok and c.witness is not None:
                lines.append(f"         witness: {json.dumps(jsonable(c.witness), ensure_ascii=False)}")
        for k, v in self.data.items():
            lines.append(f"  {k}: {json.dumps(jsonable(v), ensure_ascii=False)}")
        if self.elapsed is not None:
            lines.append(f"  time: {self.elapsed:.3f}s")
        return "\n".join(lines)


def jsonable(x):
    """Best-effort conversion of witnesses (cells, fractions, tuples) to JSON values."""
    from .pathcat import Cell
    from .quiver2 import OneCell

    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, OneCell):
        return {"src": x.src, "tgt": x.tgt, "components": list(x.components)}
    if isinstance(x, Cell):
        return {
            "src": list(x.src.components),
            "tgt": list(x.tgt.components),
            "entries": [[{_label(k): str(c) for k, c in e.items()} for e in row] for row in x.entries],
        }
    if isinstance(x, dict):
        return {_label(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def _label(k) -> str:
    if isinstance(k, tuple):
        return "∘".join(k) if k else "ι"
    return str(k)
