# railfares/feed/ingest.py
"""
Parsers for the normalized feed interchange format.

Every file is UTF-8, LF-terminated, comma-separated, and starts with an exact
header line. Parsers check every field rule, collect every error in the file
and report them together; records keep their 1-based source line.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import os
import re
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from railfares.errors import (
    DuplicateKeyError,
    FeedIoError,
    FieldError,
    MissingFileError,
    RailFaresError,
    SchemaError,
    raise_collected,
)
from railfares.feed.bundle import FeedBundle, build_bundle
from railfares.feed.models import (
    CLUSTER_RE,
    CRS_RE,
    NLC_RE,
    TICKET_RE,
    ClusterMember,
    Direction,
    FareRecord,
    FlowRecord,
    GroupMember,
    PoiKind,
    PoiRecord,
    StationRecord,
    TicketType,
    classify_code,
)
from railfares.infra.atomic import atomic_open
from railfares.metrics import PARSE_ERRORS_TOTAL, RECORDS_PARSED_TOTAL

log = logging.getLogger(__name__)

_INT_RE = re.compile(r"[0-9]+")
_DECIMAL_RE = re.compile(r"-?[0-9]+(?:\.[0-9]+)?")


class _Row:
    """One data line; field readers record FieldErrors instead of raising."""

    __slots__ = ("path", "line", "values", "errors")

    def __init__(self, path: str, line: int, values: dict[str, str]):
        self.path = path
        self.line = line
        self.values = values
        self.errors: list[FieldError] = []

    def fail(self, column: str, reason: str) -> None:
        self.errors.append(FieldError(self.path, self.line, column, reason))

    def text(self, column: str) -> str:
        value = self.values[column]
        if not value.strip():
            self.fail(column, "must not be empty")
        return value

    def match(self, column: str, pattern: re.Pattern[str], what: str) -> str:
        value = self.values[column]
        if not pattern.fullmatch(value):
            self.fail(column, f"{value!r} is not {what}")
        return value

    def nlc(self, column: str) -> str:
        return self.match(column, NLC_RE, "a 4-digit code")

    def crs(self, column: str) -> str:
        value = self.values[column].upper()
        if not CRS_RE.fullmatch(value):
            self.fail(column, f"{self.values[column]!r} is not a 3-letter code")
        return value

    def point_code(self, column: str) -> str:
        value = self.values[column]
        if classify_code(value) is None:
            self.fail(column, f"{value!r} is not a station, group or cluster code")
        return value

    def integer(self, column: str, minimum: int = 0) -> int:
        value = self.values[column]
        if not _INT_RE.fullmatch(value):
            self.fail(column, f"{value!r} is not a non-negative integer")
            return 0
        n = int(value)
        if n < minimum:
            self.fail(column, f"{n} is below {minimum}")
        return n

    def coordinate(self, column: str, bound: float) -> float:
        value = self.values[column]
        if not _DECIMAL_RE.fullmatch(value):
            self.fail(column, f"{value!r} is not a decimal number")
            return 0.0
        x = float(value)
        if not math.isfinite(x) or not -bound <= x <= bound:
            self.fail(column, f"{x} is outside [-{bound:g}, {bound:g}]")
        return x

    def enum(self, column: str, choices: dict[str, Any]) -> Any:
        value = self.values[column]
        if value not in choices:
            self.fail(column, f"{value!r} is not one of {', '.join(sorted(choices))}")
            return None
        return choices[value]


def _station(r: _Row) -> StationRecord:
    return StationRecord(
        nlc=r.nlc("nlc"),
        crs=r.crs("crs"),
        name=r.text("name"),
        lat=r.coordinate("lat", 90.0),
        lon=r.coordinate("lon", 180.0),
        line=r.line,
    )


def _group(r: _Row) -> GroupMember:
    return GroupMember(
        group_nlc=r.nlc("group_nlc"),
        group_name=r.text("group_name"),
        member_nlc=r.nlc("member_nlc"),
        line=r.line,
    )


def _cluster(r: _Row) -> ClusterMember:
    cluster_id = r.match("cluster_id", CLUSTER_RE, "a cluster id (K + 3 digits)")
    member = r.values["member_code"]
    if not NLC_RE.fullmatch(member):
        reason = "clusters cannot contain clusters" if CLUSTER_RE.fullmatch(member) else ""
        r.fail("member_code", reason or f"{member!r} is not a station or group code")
    return ClusterMember(cluster_id=cluster_id, member_code=member, line=r.line)


_DIRECTIONS = {d.value: d for d in Direction}
_POI_KINDS = {k.value: k for k in PoiKind}


def _flow(r: _Row) -> FlowRecord:
    origin = r.point_code("origin_code")
    dest = r.point_code("dest_code")
    if origin == dest:
        r.fail("dest_code", "origin and destination must differ")
    return FlowRecord(
        flow_id=r.integer("flow_id", minimum=1),
        origin_code=origin,
        dest_code=dest,
        direction=r.enum("direction", _DIRECTIONS),
        line=r.line,
    )


def _fare(r: _Row) -> FareRecord:
    return FareRecord(
        flow_id=r.integer("flow_id", minimum=1),
        ticket_code=r.match("ticket_code", TICKET_RE, "a 3-character alphanumeric code"),
        fare_pence=r.integer("fare_pence"),
        line=r.line,
    )


def _ticket(r: _Row) -> TicketType:
    return TicketType(
        ticket_code=r.match("ticket_code", TICKET_RE, "a 3-character alphanumeric code"),
        name=r.text("name"),
        line=r.line,
    )


def _poi(r: _Row) -> PoiRecord:
    return PoiRecord(
        poi_id=r.text("poi_id"),
        kind=r.enum("kind", _POI_KINDS),
        name=r.text("name"),
        lat=r.coordinate("lat", 90.0),
        lon=r.coordinate("lon", 180.0),
        line=r.line,
    )


def format_coordinate(x: float) -> str:
    """Shortest round-tripping fixed-point form; never scientific notation."""
    return np.format_float_positional(float(x), trim="0")


def _lat_lon(rec: Any) -> tuple[str, str]:
    return format_coordinate(rec.lat), format_coordinate(rec.lon)


@dataclass(frozen=True)
class Schema:
    name: str
    file_name: str
    columns: tuple[str, ...]
    parse_row: Callable[[_Row], Any]
    to_row: Callable[[Any], Sequence[str]]

    @property
    def header(self) -> str:
        return ",".join(self.columns)


SCHEMAS: dict[str, Schema] = {
    s.name: s
    for s in (
        Schema(
            "locations",
            "locations.csv",
            ("nlc", "crs", "name", "lat", "lon"),
            _station,
            lambda s: (s.nlc, s.crs, s.name, *_lat_lon(s)),
        ),
        Schema(
            "groups",
            "groups.csv",
            ("group_nlc", "group_name", "member_nlc"),
            _group,
            lambda g: (g.group_nlc, g.group_name, g.member_nlc),
        ),
        Schema(
            "clusters",
            "clusters.csv",
            ("cluster_id", "member_code"),
            _cluster,
            lambda c: (c.cluster_id, c.member_code),
        ),
        Schema(
            "flows",
            "flows.csv",
            ("flow_id", "origin_code", "dest_code", "direction"),
            _flow,
            lambda f: (str(f.flow_id), f.origin_code, f.dest_code, f.direction.value),
        ),
        Schema(
            "fares",
            "fares.csv",
            ("flow_id", "ticket_code", "fare_pence"),
            _fare,
            lambda f: (str(f.flow_id), f.ticket_code, str(f.fare_pence)),
        ),
        Schema(
            "tickets",
            "tickets.csv",
            ("ticket_code", "name"),
            _ticket,
            lambda t: (t.ticket_code, t.name),
        ),
        Schema(
            "pois",
            "pois.csv",
            ("poi_id", "kind", "name", "lat", "lon"),
            _poi,
            lambda p: (p.poi_id, p.kind.value, p.name, *_lat_lon(p)),
        ),
    )
}

FEED_SCHEMAS: tuple[str, ...] = ("locations", "groups", "clusters", "flows", "fares", "tickets")


def _schema(schema: str | Schema) -> Schema:
    if isinstance(schema, Schema):
        return schema
    try:
        return SCHEMAS[schema]
    except KeyError:
        raise ValueError(f"unknown schema {schema!r}; expected one of {sorted(SCHEMAS)}") from None


def _check_group_names(path: str, records: list[GroupMember], errors: list[RailFaresError]) -> None:
    names: dict[str, GroupMember] = {}
    for rec in records:
        first = names.setdefault(rec.group_nlc, rec)
        if first.group_name != rec.group_name:
            errors.append(
                FieldError(
                    path,
                    rec.line,
                    "group_name",
                    f"{rec.group_name!r} differs from {first.group_name!r} (line {first.line})",
                )
            )


def parse_feed_file(path: str | os.PathLike[str], schema: str | Schema) -> list[Any]:
    """Parse one feed file into records in file order."""
    sch = _schema(schema)
    spath = str(path)
    errors: list[RailFaresError] = []
    records: list[Any] = []
    try:
        with open(spath, encoding="utf-8", newline="") as f:
            first = f.readline()
            found = first[:-1] if first.endswith("\n") else first
            if found != sch.header:
                raise SchemaError(spath, sch.header, found if first else None)
            width = len(sch.columns)
            reader = csv.reader(f, strict=True)
            line = 1
            for values in reader:
                line = reader.line_num + 1
                if not values:
                    continue
                if len(values) != width:
                    errors.append(
                        FieldError(
                            spath,
                            line,
                            sch.columns[min(len(values), width - 1)],
                            f"expected {width} fields, found {len(values)}",
                        )
                    )
                    continue
                row = _Row(spath, line, dict(zip(sch.columns, values, strict=True)))
                record = sch.parse_row(row)
                if row.errors:
                    errors.extend(row.errors)
                else:
                    records.append(record)
    except FileNotFoundError:
        raise MissingFileError(os.path.basename(spath), os.path.dirname(spath) or None) from None
    except (OSError, UnicodeDecodeError, csv.Error) as e:
        raise FeedIoError(spath, str(e)) from e

    if sch.name == "groups":
        _check_group_names(spath, records, errors)

    for err in errors:
        PARSE_ERRORS_TOTAL.labels(kind=err.kind.value).inc()
    raise_collected(errors)

    RECORDS_PARSED_TOTAL.labels(schema=sch.name).inc(len(records))
    log.debug('file_parsed path="%s" schema=%s records=%d', spath, sch.name, len(records))
    return records


def parse_poi_file(path: str | os.PathLike[str]) -> list[PoiRecord]:
    """Parse a POI file; poi_id must be unique within the file."""
    records: list[PoiRecord] = parse_feed_file(path, "pois")
    seen: dict[str, PoiRecord] = {}
    errors: list[RailFaresError] = []
    for rec in records:
        if rec.poi_id in seen:
            errors.append(
                DuplicateKeyError(rec.poi_id, "poi_id", rec.line, seen[rec.poi_id].line, str(path))
            )
        else:
            seen[rec.poi_id] = rec
    raise_collected(errors)
    return records


def load_feed(directory: str | os.PathLike[str]) -> FeedBundle:
    """
    Parse the six canonical feed files of `directory` and build the bundle.

    File-level errors from all files are gathered before failing.
    """
    root = Path(directory)
    missing: list[RailFaresError] = [
        MissingFileError(SCHEMAS[name].file_name, str(root))
        for name in FEED_SCHEMAS
        if not (root / SCHEMAS[name].file_name).is_file()
    ]
    raise_collected(missing)

    errors: list[RailFaresError] = []
    parsed: dict[str, list[Any]] = {}
    with ThreadPoolExecutor(max_workers=len(FEED_SCHEMAS), thread_name_prefix="parse") as pool:
        futures = {
            name: pool.submit(parse_feed_file, root / SCHEMAS[name].file_name, name)
            for name in FEED_SCHEMAS
        }
        for name, fut in futures.items():
            try:
                parsed[name] = fut.result()
            except RailFaresError as e:
                errors.append(e)
    raise_collected(errors)

    bundle = build_bundle(
        stations=parsed["locations"],
        groups=parsed["groups"],
        clusters=parsed["clusters"],
        flows=parsed["flows"],
        fares=parsed["fares"],
        tickets=parsed["tickets"],
    )
    log.info('feed_loaded dir="%s"', root)
    return bundle


def serialize_records(schema: str | Schema, records: Iterable[Any]) -> str:
    """Canonical text form of a record sequence (exact header, LF endings)."""
    sch = _schema(schema)
    buf = io.StringIO()
    buf.write(sch.header + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(sch.to_row(rec) for rec in records)
    return buf.getvalue()


@contextmanager
def open_feed_writer(path: str | os.PathLike[str], schema: str | Schema) -> Iterator[Any]:
    """Yield a csv writer over an atomically written feed file, header already emitted."""
    sch = _schema(schema)
    with atomic_open(path, "w") as f:
        f.write(sch.header + "\n")
        yield csv.writer(f, lineterminator="\n")


def write_feed_file(
    path: str | os.PathLike[str], schema: str | Schema, records: Iterable[Any]
) -> None:
    sch = _schema(schema)
    with open_feed_writer(path, sch) as writer:
        writer.writerows(sch.to_row(rec) for rec in records)
