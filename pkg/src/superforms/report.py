"""Verification reports: a list of cells, each with expected/got/pass."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


@dataclass
class Report:
    name: str
    n: int
    cells: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, key, expected, got, ok: bool, informational: bool = False, **extra) -> None:
        """Record one cell.  Informational cells are reported but never fail the report."""
        cell = {"bidegree" if isinstance(key, list) else "cell": _plain(key)}
        cell.update(expected=_plain(expected), got=_plain(got), **{k: _plain(v) for k, v in extra.items()})
        cell["pass"] = bool(ok)
        if informational:
            cell["informational"] = True
        self.cells.append(cell)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def extend(self, other: "Report") -> None:
        self.cells.extend(other.cells)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.cells if not c.get("informational"))

    @property
    def failures(self) -> list:
        return [c for c in self.cells if not c["pass"] and not c.get("informational")]

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "pass": self.passed, "cells": self.cells, "notes": self.notes}

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(data["name"], data["n"], list(data["cells"]), list(data.get("notes", [])))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()

    def table(self) -> str:
        """Plain-text rendering, one line per cell."""
        lines = [f"== {self.name} (n={self.n}): {'PASS' if self.passed else 'FAIL'}"]
        for c in self.cells:
            key = c.get("bidegree", c.get("cell"))
            extra = {
                k: v for k, v in c.items() if k not in ("bidegree", "cell", "expected", "got", "pass", "informational")
            }
            if c.get("informational"):
                mark = "info" if c["pass"] else "diff"
            else:
                mark = "ok  " if c["pass"] else "FAIL"
            tail = "  " + json.dumps(extra, sort_keys=True) if extra else ""
            lines.append(
                f"  {mark} {json.dumps(key)}: expected {json.dumps(c['expected'])}"
                f" got {json.dumps(c['got'])}{tail}"
            )
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)
