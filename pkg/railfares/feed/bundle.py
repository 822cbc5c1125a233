# railfares/feed/bundle.py
"""
FeedBundle: the immutable, fully indexed, referentially closed feed.

Construction resolves every code once and precomputes two expansions:

- membership: station nlc -> fare points containing it (itself, its groups,
  clusters holding it directly or through one of its groups)
- point_stations: fare point -> stations it stands for

so that fare queries never walk groups or clusters at query time.
"""

from __future__ import annotations

import json
import logging
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from types import MappingProxyType

from railfares.errors import (
    DuplicateKeyError,
    RailFaresError,
    ReferentialError,
    UnknownStationError,
    UnknownTicketError,
    raise_collected,
)
from railfares.feed.models import (
    NLC_RE,
    ClusterMember,
    Direction,
    FareRecord,
    FlowRecord,
    GroupMember,
    PointKind,
    StationCluster,
    StationGroup,
    StationRecord,
    TicketType,
)
from railfares.metrics import PARSE_ERRORS_TOTAL

log = logging.getLogger(__name__)

_EMPTY: frozenset[str] = frozenset()


class FeedBundle:
    """Read-only view over a validated feed. Safe to share across threads."""

    __slots__ = (
        "_stations",
        "_by_crs",
        "_groups",
        "_clusters",
        "_flows",
        "_flows_by_pair",
        "_flows_from",
        "_reversible_into",
        "_fares",
        "_tickets",
        "_membership",
        "_point_stations",
        "_ticket_fares",
    )

    def __init__(
        self,
        stations: dict[str, StationRecord],
        groups: dict[str, StationGroup],
        clusters: dict[str, StationCluster],
        flows: dict[int, FlowRecord],
        fares: dict[int, dict[str, int]],
        tickets: dict[str, TicketType],
    ):
        self._stations = stations
        self._by_crs = {s.crs: s.nlc for s in stations.values()}
        self._groups = groups
        self._clusters = clusters
        self._flows = flows
        self._fares = fares
        self._tickets = tickets

        by_pair: dict[tuple[str, str], list[int]] = defaultdict(list)
        flows_from: dict[str, list[FlowRecord]] = defaultdict(list)
        reversible_into: dict[str, list[FlowRecord]] = defaultdict(list)
        for flow_id in sorted(flows):
            flow = flows[flow_id]
            by_pair[(flow.origin_code, flow.dest_code)].append(flow_id)
            flows_from[flow.origin_code].append(flow)
            if flow.direction is Direction.REVERSIBLE:
                reversible_into[flow.dest_code].append(flow)
        self._flows_by_pair = {k: tuple(v) for k, v in by_pair.items()}
        self._flows_from = {k: tuple(v) for k, v in flows_from.items()}
        self._reversible_into = {k: tuple(v) for k, v in reversible_into.items()}

        membership: dict[str, set[str]] = {nlc: {nlc} for nlc in stations}
        point_stations: dict[str, frozenset[str]] = {nlc: frozenset((nlc,)) for nlc in stations}
        for group in groups.values():
            point_stations[group.group_nlc] = group.members
            for nlc in group.members:
                membership[nlc].add(group.group_nlc)
        for cluster in clusters.values():
            covered: set[str] = set()
            for code in cluster.members:
                covered.update(point_stations[code])
            point_stations[cluster.cluster_id] = frozenset(covered)
            for nlc in covered:
                membership[nlc].add(cluster.cluster_id)
        self._membership = {nlc: frozenset(codes) for nlc, codes in membership.items()}
        self._point_stations = point_stations
        ticket_fares: dict[str, dict[int, int]] = {code: {} for code in tickets}
        for flow_id in sorted(fares):
            for code, price in fares[flow_id].items():
                ticket_fares.setdefault(code, {})[flow_id] = price
        self._ticket_fares = ticket_fares

    # ---- Read-only views ------------------------------------------------------

    @property
    def stations(self) -> Mapping[str, StationRecord]:
        return MappingProxyType(self._stations)

    @property
    def stations_by_crs(self) -> Mapping[str, str]:
        return MappingProxyType(self._by_crs)

    @property
    def groups(self) -> Mapping[str, StationGroup]:
        return MappingProxyType(self._groups)

    @property
    def clusters(self) -> Mapping[str, StationCluster]:
        return MappingProxyType(self._clusters)

    @property
    def flows(self) -> Mapping[int, FlowRecord]:
        return MappingProxyType(self._flows)

    @property
    def tickets(self) -> Mapping[str, TicketType]:
        return MappingProxyType(self._tickets)

    @property
    def fare_count(self) -> int:
        return sum(len(by_ticket) for by_ticket in self._fares.values())

    def counts(self) -> dict[str, int]:
        return {
            "stations": len(self._stations),
            "groups": len(self._groups),
            "clusters": len(self._clusters),
            "flows": len(self._flows),
            "fares": self.fare_count,
            "tickets": len(self._tickets),
        }

    def station_nlcs(self) -> list[str]:
        return sorted(self._stations)

    # ---- Lookups --------------------------------------------------------------

    def require_station(self, nlc: str) -> StationRecord:
        try:
            return self._stations[nlc]
        except KeyError:
            raise UnknownStationError(nlc) from None

    def require_ticket(self, ticket_code: str) -> TicketType:
        try:
            return self._tickets[ticket_code]
        except KeyError:
            raise UnknownTicketError(ticket_code) from None

    def station_lookup(self, key: str) -> StationRecord:
        k = key.strip()
        if NLC_RE.fullmatch(k):
            station = self._stations.get(k)
        else:
            nlc = self._by_crs.get(k.upper())
            station = self._stations.get(nlc) if nlc else None
        if station is None:
            raise UnknownStationError(key)
        return station

    def points_containing(self, nlc: str) -> frozenset[str]:
        try:
            return self._membership[nlc]
        except KeyError:
            raise UnknownStationError(nlc) from None

    def stations_of(self, code: str) -> frozenset[str]:
        """Stations a fare point stands for (empty for unknown codes)."""
        return self._point_stations.get(code, _EMPTY)

    def point_kind(self, code: str) -> PointKind | None:
        if code in self._stations:
            return PointKind.STATION
        if code in self._groups:
            return PointKind.GROUP
        if code in self._clusters:
            return PointKind.CLUSTER
        return None

    def flows_between(self, origin_code: str, dest_code: str) -> tuple[int, ...]:
        return self._flows_by_pair.get((origin_code, dest_code), ())

    def flows_from(self, origin_code: str) -> tuple[FlowRecord, ...]:
        return self._flows_from.get(origin_code, ())

    def reversible_flows_into(self, dest_code: str) -> tuple[FlowRecord, ...]:
        return self._reversible_into.get(dest_code, ())

    def fare(self, flow_id: int, ticket_code: str) -> int | None:
        by_ticket = self._fares.get(flow_id)
        return by_ticket.get(ticket_code) if by_ticket else None

    def fares_for_ticket(self, ticket_code: str) -> Mapping[int, int]:
        """flow_id -> fare for one ticket type; empty for a ticket nobody prices."""
        return MappingProxyType(self._ticket_fares.get(ticket_code, {}))

    # ---- Canonical form -------------------------------------------------------

    def canonical_json(self) -> bytes:
        """Deterministic byte form of the whole bundle (used to compare builds)."""
        doc = {
            "stations": [
                [s.nlc, s.crs, s.name, repr(s.lat), repr(s.lon)]
                for s in sorted(self._stations.values(), key=lambda s: s.nlc)
            ],
            "groups": [
                [g.group_nlc, g.name, sorted(g.members)]
                for g in sorted(self._groups.values(), key=lambda g: g.group_nlc)
            ],
            "clusters": [
                [c.cluster_id, sorted(c.members)]
                for c in sorted(self._clusters.values(), key=lambda c: c.cluster_id)
            ],
            "flows": [
                [f.flow_id, f.origin_code, f.dest_code, f.direction.value]
                for f in (self._flows[i] for i in sorted(self._flows))
            ],
            "fares": [
                [flow_id, code, pence]
                for flow_id in sorted(self._fares)
                for code, pence in sorted(self._fares[flow_id].items())
            ],
            "tickets": [
                [t.ticket_code, t.name]
                for t in sorted(self._tickets.values(), key=lambda t: t.ticket_code)
            ],
            "membership": {nlc: sorted(codes) for nlc, codes in sorted(self._membership.items())},
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode()


def build_bundle(
    stations: Iterable[StationRecord] = (),
    groups: Iterable[GroupMember] = (),
    clusters: Iterable[ClusterMember] = (),
    flows: Iterable[FlowRecord] = (),
    fares: Iterable[FareRecord] = (),
    tickets: Iterable[TicketType] = (),
) -> FeedBundle:
    """
    Index parsed records and check referential closure.

    Every violation is collected; a single one is raised as itself
    (DuplicateKeyError / ReferentialError), several as FeedErrors.
    """
    errors: list[RailFaresError] = []

    station_map: dict[str, StationRecord] = {}
    crs_seen: dict[str, StationRecord] = {}
    for s in stations:
        if s.nlc in station_map:
            errors.append(DuplicateKeyError(s.nlc, "station nlc", s.line, station_map[s.nlc].line))
            continue
        if s.crs in crs_seen:
            errors.append(DuplicateKeyError(s.crs, "station crs", s.line, crs_seen[s.crs].line))
        else:
            crs_seen[s.crs] = s
        # kept even on a crs clash so references to its nlc do not cascade
        station_map[s.nlc] = s

    group_names: dict[str, str] = {}
    group_members: dict[str, set[str]] = {}
    collided: set[str] = set()
    member_rows = list(groups)
    for row in member_rows:
        if row.group_nlc in station_map:
            if row.group_nlc not in collided:
                collided.add(row.group_nlc)
                errors.append(
                    DuplicateKeyError(
                        row.group_nlc,
                        "group nlc (collides with a station nlc)",
                        row.line,
                        station_map[row.group_nlc].line,
                    )
                )
            continue
        group_names.setdefault(row.group_nlc, row.group_name)
        group_members.setdefault(row.group_nlc, set())
    for row in member_rows:
        if row.group_nlc not in group_members:
            continue
        if row.member_nlc in group_members:
            errors.append(
                ReferentialError(
                    row.member_nlc, f"group {row.group_nlc} (groups cannot nest)", row.line
                )
            )
        elif row.member_nlc not in station_map:
            errors.append(ReferentialError(row.member_nlc, f"group {row.group_nlc}", row.line))
        elif row.member_nlc in group_members[row.group_nlc]:
            errors.append(
                DuplicateKeyError(
                    f"{row.group_nlc}/{row.member_nlc}", "group membership", row.line
                )
            )
        else:
            group_members[row.group_nlc].add(row.member_nlc)
    group_map = {
        code: StationGroup(code, group_names[code], frozenset(members))
        for code, members in group_members.items()
        if members
    }

    cluster_members: dict[str, set[str]] = {}
    for row in clusters:
        members = cluster_members.setdefault(row.cluster_id, set())
        code = row.member_code
        if code not in station_map and code not in group_map:
            context = f"cluster {row.cluster_id}"
            if code.startswith("K"):
                context += " (clusters cannot nest)"
            errors.append(ReferentialError(code, context, row.line))
        elif code in members:
            errors.append(
                DuplicateKeyError(f"{row.cluster_id}/{code}", "cluster membership", row.line)
            )
        else:
            members.add(code)
    cluster_map = {
        code: StationCluster(code, frozenset(members))
        for code, members in cluster_members.items()
        if members
    }

    ticket_map: dict[str, TicketType] = {}
    for t in tickets:
        if t.ticket_code in ticket_map:
            errors.append(
                DuplicateKeyError(
                    t.ticket_code, "ticket code", t.line, ticket_map[t.ticket_code].line
                )
            )
            continue
        ticket_map[t.ticket_code] = t

    def known_point(code: str) -> bool:
        return code in station_map or code in group_map or code in cluster_map

    flow_map: dict[int, FlowRecord] = {}
    rejected_flows: set[int] = set()
    for f in flows:
        if f.flow_id in flow_map:
            errors.append(
                DuplicateKeyError(str(f.flow_id), "flow id", f.line, flow_map[f.flow_id].line)
            )
            continue
        bad = False
        for end, code in (("origin", f.origin_code), ("destination", f.dest_code)):
            if not known_point(code):
                errors.append(ReferentialError(code, f"flow {f.flow_id} {end}", f.line))
                bad = True
        if bad:
            rejected_flows.add(f.flow_id)
        else:
            flow_map[f.flow_id] = f

    fare_map: dict[int, dict[str, int]] = {}
    fare_lines: dict[tuple[int, str], int] = {}
    for fr in fares:
        if fr.flow_id in rejected_flows:
            continue
        if fr.flow_id not in flow_map:
            errors.append(ReferentialError(str(fr.flow_id), "fare flow_id", fr.line))
            continue
        if fr.ticket_code not in ticket_map:
            errors.append(ReferentialError(fr.ticket_code, "fare ticket_code", fr.line))
            continue
        key = (fr.flow_id, fr.ticket_code)
        if key in fare_lines:
            errors.append(
                DuplicateKeyError(
                    f"{fr.flow_id}/{fr.ticket_code}",
                    "fare (flow_id, ticket_code)",
                    fr.line,
                    fare_lines[key],
                )
            )
            continue
        fare_lines[key] = fr.line
        fare_map.setdefault(fr.flow_id, {})[fr.ticket_code] = fr.fare_pence

    for err in errors:
        PARSE_ERRORS_TOTAL.labels(kind=err.kind.value).inc()
    raise_collected(errors)

    bundle = FeedBundle(station_map, group_map, cluster_map, flow_map, fare_map, ticket_map)
    log.info("bundle_built %s", " ".join(f"{k}={v}" for k, v in bundle.counts().items()))
    return bundle


def points_containing(bundle: FeedBundle, nlc: str) -> frozenset[str]:
    return bundle.points_containing(nlc)


def station_lookup(bundle: FeedBundle, key: str) -> StationRecord:
    return bundle.station_lookup(key)


def resolve_stations(bundle: FeedBundle, keys: Sequence[str]) -> list[StationRecord]:
    """Look up several CRS/NLC keys, reporting every unknown one."""
    found: list[StationRecord] = []
    missing: list[UnknownStationError] = []
    for key in keys:
        try:
            found.append(bundle.station_lookup(key))
        except UnknownStationError as e:
            missing.append(e)
    if len(missing) == 1:
        raise missing[0]
    if missing:
        raise UnknownStationError(", ".join(e.key for e in missing))
    return found
