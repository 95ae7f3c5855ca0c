"""Verification reports: named checks with verdicts and witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


def jsonable(value):
    """Render a witness value with plain JSON types only."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    return str(value)


@dataclass(frozen=True)
class Check:
    """Outcome of one named verification step.

    ``applicable`` is False when the check does not apply to the input
    (e.g. a meet-based axiom on a join-semilattice that is not a lattice);
    such checks never count as failures.
    """

    name: str
    passed: bool
    witness: object = None
    detail: str = ""
    applicable: bool = True

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "n/a"
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class Report:
    """An ordered collection of checks with a conjunctive overall verdict."""

    title: str
    checks: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def failures(self) -> tuple:
        return tuple(c for c in self.checks if c.applicable and not c.passed)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "overall": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


class ReportBuilder:
    """Accumulates checks; tiny sugar used by the verifiers."""

    def __init__(self, title: str):
        self.title = title
        self._checks: list[Check] = []

    def add(self, name, passed, witness=None, detail="", applicable=True):
        self._checks.append(Check(name, bool(passed), witness, detail, applicable))
        return passed

    def skip(self, name, detail=""):
        self._checks.append(Check(name, True, None, detail, applicable=False))

    def merge(self, other: Report, prefix: str = ""):
        for c in other.checks:
            self._checks.append(
                Check(prefix + c.name, c.passed, c.witness, c.detail, c.applicable))

    def build(self) -> Report:
        return Report(self.title, tuple(self._checks))
