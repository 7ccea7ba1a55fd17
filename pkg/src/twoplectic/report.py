"""Result records shared by the checkers and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class EquationResult:
    name: str
    status: str = PASS
    checked: int = 0
    witness: dict | None = None
    reason: str | None = None
    failures: int = 0

    def record_pass(self):
        self.checked += 1

    def record_fail(self, witness: dict):
        self.checked += 1
        self.failures += 1
        if self.status != FAIL:
            self.status = FAIL
            self.witness = witness

    def as_dict(self) -> dict:
        d = {"equation": self.name, "status": self.status, "checked": self.checked}
        if self.failures:
            d["failures"] = self.failures
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        return d


@dataclass
class SuiteReport:
    name: str
    results: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    incomplete: bool = False

    def equation(self, name: str) -> EquationResult:
        for r in self.results:
            if r.name == name:
                return r
        r = EquationResult(name)
        self.results.append(r)
        return r

    def __getitem__(self, name: str) -> EquationResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def finalize(self, count: int):
        """Mark equations that never ran as inconclusive."""
        for r in self.results:
            if r.status == PASS and r.checked == 0:
                r.status = INCONCLUSIVE
                r.reason = r.reason or "no samples evaluated"
        if self.incomplete:
            self.notes.append(f"sampler exhausted before {count} tuples")
        return self

    @property
    def status(self) -> str:
        statuses = {r.status for r in self.results}
        if FAIL in statuses:
            return FAIL
        if not self.results or INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def failed(self) -> list:
        return [r.name for r in self.results if r.status == FAIL]

    def as_dict(self) -> dict:
        d = {
            "suite": self.name,
            "status": self.status,
            "equations": [r.as_dict() for r in self.results],
        }
        if self.notes:
            d["notes"] = list(self.notes)
        if self.incomplete:
            d["incomplete"] = True
        return d

    def lines(self) -> list:
        out = [f"[{self.status.upper()}] {self.name}"]
        for r in self.results:
            line = f"  {r.status:<12} {r.name}  ({r.checked} checked)"
            if r.reason:
                line += f"  -- {r.reason}"
            out.append(line)
            if r.witness:
                for k, v in r.witness.items():
                    out.append(f"      {k}: {v}")
        out.extend(f"  note: {n}" for n in self.notes)
        return out


@dataclass
class Report:
    scenario: str
    seed: int
    samples: int
    suites: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    settings: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        statuses = {s.status for s in self.suites}
        if FAIL in statuses:
            return FAIL
        if not self.suites or INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}[self.status]

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "samples": self.samples,
            "settings": dict(sorted(self.settings.items())),
            "status": self.status,
            "suites": [s.as_dict() for s in self.suites],
        }

    def to_machine(self) -> str:
        # wall-clock timings are excluded so the output is reproducible
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self, timings: bool = True) -> str:
        out = [f"scenario: {self.scenario}", f"seed: {self.seed}", f"samples: {self.samples}"]
        for k, v in sorted(self.settings.items()):
            out.append(f"{k}: {v}")
        for s in self.suites:
            out.extend(s.lines())
            if timings and s.name in self.timings:
                out.append(f"  time: {self.timings[s.name]:.2f}s")
        out.append(f"overall: {self.status.upper()}")
        return "\n".join(out) + "\n"
