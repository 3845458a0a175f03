"""Verification reports shared by the guesser and the identity suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from holodet.exact import MuPoly, MuRat

__all__ = ["Witness", "NResult", "VerificationReport", "value_to_json", "value_from_json"]


def value_to_json(v):
    if isinstance(v, MuRat):
        return v.to_json()
    if isinstance(v, MuPoly):
        return MuRat(v).to_json()
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    if v is None:
        return None
    return str(v)


def value_from_json(data):
    if data is None:
        return None
    if isinstance(data, dict):
        return MuRat.from_json(data)
    return Fraction(data)


@dataclass
class Witness:
    identity: str
    index: object
    expected: object
    actual: object

    def to_json(self):
        idx = list(self.index) if isinstance(self.index, tuple) else self.index
        return {
            "identity": self.identity,
            "index": idx,
            "expected": value_to_json(self.expected),
            "actual": value_to_json(self.actual),
        }

    @classmethod
    def from_json(cls, d):
        idx = tuple(d["index"]) if isinstance(d["index"], list) else d["index"]
        return cls(
            d["identity"], idx, value_from_json(d["expected"]), value_from_json(d["actual"])
        )


@dataclass
class NResult:
    n: int
    status: str
    witnesses: list = field(default_factory=list)
    seconds: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self):
        d = {"n": self.n, "status": self.status}
        d["witness"] = [w.to_json() for w in self.witnesses] if self.witnesses else None
        if self.note:
            d["note"] = self.note
        return d

    @classmethod
    def from_json(cls, d):
        ws = [Witness.from_json(w) for w in (d.get("witness") or [])]
        return cls(d["n"], d["status"], ws, note=d.get("note", ""))


@dataclass
class VerificationReport:
    """Pass/fail per n; failures carry witnesses, passes carry none.

    Timings stay out of the JSON so that equal inputs give equal bytes.
    """

    suite: str
    family: str
    results: list = field(default_factory=list)
    mu: str = "symbolic"

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results)

    @property
    def range_verified(self) -> str:
        ok = [r.n for r in self.results if r.passed]
        if not ok:
            return ""
        return f"{min(ok)}..{max(ok)}" if len(ok) > 1 else str(ok[0])

    def add(self, result: NResult) -> None:
        if result.status == "fail" and not result.witnesses:
            raise ValueError("a failing result needs a witness")
        if result.status == "pass" and result.witnesses:
            raise ValueError("a passing result carries no witness")
        self.results.append(result)
        self.results.sort(key=lambda r: r.n)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        merged = VerificationReport(self.suite, self.family, list(self.results), self.mu)
        for r in other.results:
            merged.add(r)
        return merged

    def to_json(self):
        return {
            "suite": self.suite,
            "family": self.family,
            "mu": self.mu,
            "results": [r.to_json() for r in self.results],
            "range_verified": self.range_verified,
            "passed": self.passed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, d):
        rep = cls(d["suite"], d["family"], mu=d.get("mu", "symbolic"))
        rep.results = [NResult.from_json(r) for r in d["results"]]
        return rep

    def render(self) -> str:
        lines = [f"suite {self.suite} family {self.family} mu={self.mu}"]
        for r in self.results:
            line = f"  n={r.n:<3d} {r.status.upper():4s} {r.seconds:8.3f}s"
            if r.note:
                line += f"  {r.note}"
            lines.append(line)
            for w in r.witnesses:
                lines.append(
                    f"      {w.identity} at {w.index}: expected {w.expected}, got {w.actual}"
                )
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"  {verdict}; verified range {self.range_verified or 'none'}")
        return "\n".join(lines)
