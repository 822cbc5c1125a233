# railfares/errors/exceptions.py
from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

from .kinds import ErrorKind


class RailFaresError(Exception):
    """Base for every failure the toolkit reports on purpose."""

    kind: ErrorKind = ErrorKind.UNSPECIFIED

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "message": self.message,
            "details": self.details,
        }


# ---- Feed files -------------------------------------------------------------


class FeedError(RailFaresError):
    pass


class SchemaError(FeedError):
    kind = ErrorKind.SCHEMA

    def __init__(self, path: str, expected: str, found: str | None):
        self.path = path
        self.line = 1
        super().__init__(
            f"{path}:1: header mismatch, expected {expected!r}, found {found!r}",
            {"path": path, "line": 1, "expected": expected, "found": found},
        )


class FieldError(FeedError):
    kind = ErrorKind.FIELD

    def __init__(self, path: str, line: int, column: str, reason: str):
        self.path = path
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(
            f"{path}:{line}: column {column!r}: {reason}",
            {"path": path, "line": line, "column": column, "reason": reason},
        )


class DuplicateKeyError(FeedError):
    kind = ErrorKind.DUPLICATE_KEY

    def __init__(
        self,
        key: str,
        context: str,
        line: int | None = None,
        first_line: int | None = None,
        path: str | None = None,
    ):
        self.key = key
        self.context = context
        self.line = line
        self.first_line = first_line
        self.path = path
        where = f"{path}:" if path else ""
        lines = ""
        if line is not None:
            lines = f" at line {line}" + (f" (first seen at line {first_line})" if first_line else "")
        super().__init__(
            f"{where}duplicate {context} {key!r}{lines}",
            {"key": key, "context": context, "line": line, "first_line": first_line, "path": path},
        )


class ReferentialError(FeedError):
    kind = ErrorKind.REFERENTIAL

    def __init__(self, code: str, context: str, line: int | None = None):
        self.code = code
        self.context = context
        self.line = line
        at = f" (line {line})" if line is not None else ""
        super().__init__(
            f"unresolved reference {code!r} in {context}{at}",
            {"code": code, "context": context, "line": line},
        )


class MissingFileError(FeedError):
    kind = ErrorKind.MISSING_FILE

    def __init__(self, name: str, directory: str | None = None):
        self.name = name
        super().__init__(
            f"missing feed file {name!r}" + (f" in {directory}" if directory else ""),
            {"name": name, "directory": directory},
        )


class FeedIoError(FeedError):
    kind = ErrorKind.IO

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"cannot read {path}: {reason}", {"path": path, "reason": reason})


class FeedErrors(FeedError):
    """Several feed errors reported together."""

    kind = ErrorKind.AGGREGATE

    def __init__(self, errors: Sequence[RailFaresError]):
        self.errors = list(errors)
        lines = "\n".join(f"  - {e.message}" for e in self.errors)
        super().__init__(
            f"{len(self.errors)} feed errors:\n{lines}",
            {"errors": [e.to_dict() for e in self.errors]},
        )


def raise_collected(errors: Iterable[RailFaresError]) -> None:
    """Raise nothing, the single error, or a FeedErrors aggregate."""
    flat: list[RailFaresError] = []
    for err in errors:
        if isinstance(err, FeedErrors):
            flat.extend(err.errors)
        else:
            flat.append(err)
    if len(flat) == 1:
        raise flat[0]
    if flat:
        raise FeedErrors(flat)


# ---- Queries ------------------------------------------------------------------


class LookupFailure(RailFaresError):
    pass


class UnknownStationError(LookupFailure):
    kind = ErrorKind.UNKNOWN_STATION

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"unknown station {key!r}", {"key": key})


class UnknownTicketError(LookupFailure):
    kind = ErrorKind.UNKNOWN_TICKET

    def __init__(self, ticket_code: str):
        self.ticket_code = ticket_code
        super().__init__(f"unknown ticket code {ticket_code!r}", {"ticket_code": ticket_code})


class NoFlowError(LookupFailure):
    kind = ErrorKind.NO_FLOW

    def __init__(self, origin: str, dest: str, ticket_code: str):
        self.origin = origin
        self.dest = dest
        self.ticket_code = ticket_code
        super().__init__(
            f"no {ticket_code} fare from {origin} to {dest}",
            {"origin": origin, "dest": dest, "ticket_code": ticket_code},
        )


# ---- Caller input -------------------------------------------------------------


class InputError(RailFaresError):
    pass


class BudgetOrderError(InputError):
    kind = ErrorKind.BUDGET_ORDER

    def __init__(self, budgets: Sequence[int]):
        self.budgets = list(budgets)
        super().__init__(
            f"budgets must be non-empty, non-negative and strictly ascending: {self.budgets}",
            {"budgets": self.budgets},
        )


class EmptyInputError(InputError):
    kind = ErrorKind.EMPTY_INPUT


class SpecError(InputError):
    kind = ErrorKind.SPEC


class ConfigError(InputError):
    kind = ErrorKind.CONFIG


# ---- Downloads ----------------------------------------------------------------


class NetworkError(RailFaresError):
    kind = ErrorKind.NETWORK

    def __init__(self, url: str, reason: str):
        self.url = url
        self.reason = reason
        super().__init__(f"download failed for {url}: {reason}", {"url": url, "reason": reason})
