"""Check reports: named pass/fail entries with exact residuals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List

from .scalars import Series, format_scalar


class ConstructionError(ValueError):
    """Input data admit no object with the requested property."""


class GeometricError(ArithmeticError):
    """A transversality / invertibility hypothesis fails."""


class InvariantViolation(RuntimeError):
    """An internally certified invariant turned out false."""


class ArityBoundError(ValueError):
    """A computation would need Taylor components beyond the configured arity bound."""


def render_value(v: Any) -> Any:
    """JSON-ready exact rendering of scalars, vectors and nested containers."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, Series)) or hasattr(v, "denominator"):
        return format_scalar(v)
    if isinstance(v, dict):
        return {str(k): render_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [render_value(x) for x in v]
    return str(v)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    residuals: List[Any] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.residuals:
            out["residuals"] = render_value(self.residuals[:20])
            out["residual_count"] = len(self.residuals)
        return out


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "", residuals=None) -> Check:
        c = Check(name, bool(passed), detail, list(residuals or []))
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail, c.residuals))
        return self

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = {"title": self.title, "passed": self.passed,
               "checks": [c.to_dict() for c in self.checks]}
        if self.data:
            out["data"] = render_value(self.data)
        return out

    def render(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
            for r in c.residuals[:5]:
                lines.append(f"         residual: {render_value(r)}")
        for k, v in self.data.items():
            lines.append(f"  {k}: {render_value(v)}")
        return "\n".join(lines)

    def __bool__(self):
        return self.passed
