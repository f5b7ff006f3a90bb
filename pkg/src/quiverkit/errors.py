"""Exception hierarchy and the diagnostic report type shared by the validators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class QuiverkitError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class InvalidInput(QuiverkitError, ValueError):
    """Bad parameters or malformed objects (CLI exit 1)."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column


class PropertyFailure(QuiverkitError):
    """A checked mathematical property does not hold (CLI exit 2)."""

    exit_code = 2


class ConsistencyError(QuiverkitError, RuntimeError):
    """An internal invariant broke; indicates a bug or an unvalidated input (CLI exit 3)."""

    exit_code = 3


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: Any = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": self.message, "witness": _plain(self.witness)}


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str, witness: Any = None) -> None:
        self.violations.append(Violation(kind, message, witness))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
            "notes": list(self.notes),
        }

    def __bool__(self) -> bool:
        return self.ok


def _plain(x: Any) -> Any:
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)
