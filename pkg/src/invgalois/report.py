"""Per-check pass/fail records with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    results: dict = field(default_factory=dict)   # check name -> (passed, witness)

    def record(self, name, witness=None):
        """Record ``name`` as passed when ``witness`` is None, failed otherwise."""
        self.results[name] = (witness is None, witness)

    def set(self, name, passed: bool, witness=None):
        self.results[name] = (bool(passed), witness)

    @property
    def ok(self) -> bool:
        return all(passed for passed, _ in self.results.values())

    def passed(self, name) -> bool:
        return self.results[name][0]

    def failures(self):
        return {name: w for name, (passed, w) in self.results.items() if not passed}

    def lines(self):
        return [f"{'pass' if passed else 'FAIL'}  {name}" + ("" if passed else f"  witness: {w}")
                for name, (passed, w) in self.results.items()]
