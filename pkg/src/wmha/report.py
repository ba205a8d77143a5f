"""Verification reports: an ordered list of named checks plus a verdict."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .linalg import Vec, _key_json
from .scalars import Scalar

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

VERDICTS = ("not-wmha", "wmha", "regular-wmha", "wmha-star", "regular-wmha-star", "mha", "weak-hopf")


def jsonable(x):
    if isinstance(x, Vec):
        return x.to_json()
    if isinstance(x, Scalar):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return _key_json(x)


@dataclass
class Check:
    id: str
    status: str
    witness: dict | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        d = {"id": self.id, "status": self.status}
        if self.witness is not None:
            d["witness"] = jsonable(self.witness)
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class VerificationReport:
    structure: str
    checks: list[Check] = field(default_factory=list)
    verdict: str | None = None

    def add(self, id: str, ok: bool, witness: dict | None = None, detail: str = "") -> bool:
        self.checks.append(Check(id, PASS if ok else FAIL, None if ok else (witness or {}), detail))
        return ok

    def skip(self, id: str, detail: str):
        self.checks.append(Check(id, SKIPPED, None, detail))

    def run(self, id: str, cases: Iterable, predicate: Callable, detail: str = "") -> bool:
        """Evaluate predicate(*case) over cases; the first failing case is the witness.

        A predicate returns True/None for success, or False / a dict of
        extra witness data for failure.
        """
        n = 0
        for case in cases:
            n += 1
            r = predicate(*case)
            if r is True or r is None:
                continue
            w = {"case": list(case)}
            if isinstance(r, dict):
                w.update(r)
            return self.add(id, False, w, detail)
        return self.add(id, True, detail=detail or f"{n} cases")

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.status, c.witness, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def get(self, id: str) -> Check | None:
        for c in self.checks:
            if c.id == id:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "structure": self.structure,
            "checks": [c.to_dict() for c in self.checks],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"structure: {self.structure}"]
        for c in self.checks:
            line = f"  [{c.status:^7}] {c.id}"
            if c.detail and c.status != PASS:
                line += f"  ({c.detail})"
            lines.append(line)
            if c.witness:
                lines.append(f"            witness: {json.dumps(jsonable(c.witness))}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        if not isinstance(d, dict) or not isinstance(d.get("checks"), list) or "structure" not in d:
            raise ValueError("not a verification report")
        checks = []
        for c in d["checks"]:
            if c.get("status") not in (PASS, FAIL, SKIPPED) or "id" not in c:
                raise ValueError(f"malformed check entry: {c!r}")
            checks.append(Check(c["id"], c["status"], c.get("witness"), c.get("detail", "")))
        return cls(d["structure"], checks, d.get("verdict"))
