"""Outcome records for identity and conjecture sweeps."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_arith import render, to_json


@dataclass
class Check:
    case: str
    n: int
    lhs: Fraction
    rhs: Fraction
    verdict: bool | None = None  # set for checks that are not equalities

    @property
    def ok(self) -> bool:
        if self.verdict is not None:
            return self.verdict
        return self.lhs == self.rhs


@dataclass
class VerificationReport:
    name: str
    n_samples: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    errors: list = field(default_factory=list)  # (case, n, message)
    cases: set = field(default_factory=set)
    elapsed: float = 0.0
    _started: float = field(default_factory=time.perf_counter, repr=False)

    def record(self, case: str, n: int, lhs, rhs, ok: bool | None = None) -> bool:
        chk = Check(case, n, Fraction(lhs), Fraction(rhs), ok)
        self.checks.append(chk)
        self.cases.add(case)
        if n not in self.n_samples:
            self.n_samples.append(n)
        return chk.ok

    def record_error(self, case: str, n, exc: Exception):
        self.cases.add(case)
        self.errors.append((case, n, f"{type(exc).__name__}: {exc}"))

    def finish(self) -> "VerificationReport":
        self.elapsed = time.perf_counter() - self._started
        self.n_samples.sort()
        return self

    @property
    def failures(self) -> list[Check]:
        return sorted((c for c in self.checks if not c.ok), key=lambda c: (c.case, c.n))

    @property
    def status(self) -> str:
        return "PASS" if not self.failures else "FAIL"

    @property
    def case_count(self) -> int:
        return len(self.cases)

    def to_json(self, include_checks: bool = False) -> dict:
        def row(c: Check):
            return {"input": c.case, "n": c.n, "lhs": to_json(c.lhs), "rhs": to_json(c.rhs)}

        out = {
            "property": self.name,
            "status": self.status,
            "cases": self.case_count,
            "checks": len(self.checks),
            "failures": [row(c) for c in self.failures],
            "first_counterexample": row(self.failures[0]) if self.failures else None,
            "errors": [{"input": c, "n": n, "message": m} for c, n, m in sorted(self.errors, key=str)],
            "n_samples": list(self.n_samples),
            "elapsed_s": round(self.elapsed, 6),
        }
        if include_checks:
            out["records"] = [row(c) for c in self.checks]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["case", "n", "lhs", "rhs", "status"])
        for c in sorted(self.checks, key=lambda c: (c.case, c.n)):
            writer.writerow([c.case, c.n, render(c.lhs), render(c.rhs), "PASS" if c.ok else "FAIL"])
        return buf.getvalue()

    def summary(self) -> str:
        line = (f"{self.name}: {self.status} ({self.case_count} cases, {len(self.checks)} checks, "
                f"{len(self.failures)} failures, {len(self.errors)} errors, {self.elapsed:.2f}s)")
        if self.failures:
            c = self.failures[0]
            line += f"\n  first counterexample: {c.case} at n={c.n}: {render(c.lhs)} != {render(c.rhs)}"
        return line
