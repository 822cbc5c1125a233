# railfares/feed/models.py
"""
Record types of the fare-and-flow model.

Row-level records (one per line of a feed file) keep their source line for
diagnostics; `line` never takes part in equality. Groups and clusters arrive
as membership rows and are assembled into StationGroup/StationCluster by
build_bundle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

NLC_RE = re.compile(r"[0-9]{4}")
CRS_RE = re.compile(r"[A-Z]{3}")
CLUSTER_RE = re.compile(r"K[0-9]{3}")
TICKET_RE = re.compile(r"[A-Za-z0-9]{3}")


class Direction(str, Enum):
    SINGLE = "S"
    REVERSIBLE = "R"


class PoiKind(str, Enum):
    HOSPITAL = "HOSPITAL"
    EMPLOYMENT_CENTRE = "EMPLOYMENT_CENTRE"
    TOWN_CENTRE = "TOWN_CENTRE"


class PointKind(str, Enum):
    STATION = "station"
    GROUP = "group"
    CLUSTER = "cluster"


def classify_code(code: str) -> PointKind | None:
    """Syntactic class of a fare-point code; stations and groups share the 4-digit space."""
    if CLUSTER_RE.fullmatch(code):
        return PointKind.CLUSTER
    if NLC_RE.fullmatch(code):
        return PointKind.STATION
    return None


@dataclass(frozen=True, slots=True)
class StationRecord:
    nlc: str
    crs: str
    name: str
    lat: float
    lon: float
    line: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class GroupMember:
    group_nlc: str
    group_name: str
    member_nlc: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class ClusterMember:
    cluster_id: str
    member_code: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class FlowRecord:
    flow_id: int
    origin_code: str
    dest_code: str
    direction: Direction
    line: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class FareRecord:
    flow_id: int
    ticket_code: str
    fare_pence: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class TicketType:
    ticket_code: str
    name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class PoiRecord:
    poi_id: str
    kind: PoiKind
    name: str
    lat: float
    lon: float
    line: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class StationGroup:
    group_nlc: str
    name: str
    members: frozenset[str]


@dataclass(frozen=True, slots=True)
class StationCluster:
    cluster_id: str
    members: frozenset[str]
