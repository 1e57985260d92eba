"""Structured results for identity checks.

Every checker returns a CheckReport: the residuals it measured (per
truncation order where truncation matters, with order 0 marking
order-independent pointwise or symbolic measurements), a verdict, and
free-form notes.  Reports serialize to a stable JSON schema, to CSV rows,
or to plain text; serialization is deterministic so identical runs produce
identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any

__all__ = ["CheckReport", "Verdict", "render_reports"]

TOOL_VERSION = "0.1.0"


class Verdict(Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INFORMATIONAL = "Informational"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check."""

    check_name: str
    params_echo: dict[str, Any]
    residuals: tuple[tuple[int, float], ...]
    verdict: Verdict
    notes: str = ""

    def __post_init__(self) -> None:
        if not self.residuals:
            raise ValueError("a report must carry at least one residual")
        object.__setattr__(self, "residuals", tuple((int(n), float(v)) for n, v in self.residuals))

    @property
    def passed(self) -> bool:
        return self.verdict in (Verdict.PASS, Verdict.INFORMATIONAL)

    @property
    def max_residual(self) -> float:
        return max(v for _, v in self.residuals)

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check_name,
            "params": _jsonable(self.params_echo),
            "residuals": [{"N": n, "value": v} for n, v in self.residuals],
            "verdict": self.verdict.value,
            "notes": self.notes,
            "tool_version": TOOL_VERSION,
        }


def _jsonable(value: Any) -> Any:
    """Coerce params echoes into plain JSON types, complexes as 're+imi' text."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, complex):
        return format_complex(value)
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


def format_complex(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def render_reports(reports: list[CheckReport], fmt: str) -> str:
    if fmt == "json":
        docs = [r.to_dict() for r in reports]
        payload: Any = docs[0] if len(docs) == 1 else docs
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        lines = ["check,N,residual,verdict"]
        for r in reports:
            for n, v in r.residuals:
                lines.append(f"{r.check_name},{n},{v!r},{r.verdict.value}")
        return "\n".join(lines) + "\n"
    if fmt == "text":
        lines = []
        for r in reports:
            lines.append(f"[{r.verdict.value}] {r.check_name}")
            for n, v in r.residuals:
                label = f"N={n}" if n else "pointwise"
                lines.append(f"    {label}: residual {v:.3e}")
            if r.notes:
                lines.append(f"    notes: {r.notes}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown output format {fmt!r}")
