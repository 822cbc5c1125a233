# railfares/access/reach.py
"""
Budget-constrained accessibility: mean reachable distance and POI coverage.

The origin station counts as covering its own nearby POIs at zero cost; it
never counts towards the mean distance (it is not a destination).
"""

from __future__ import annotations

import bisect
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from railfares.access.geo import haversine_km_many
from railfares.errors import BudgetOrderError, InputError
from railfares.fares.od import OdRow, od_matrix, od_row, reachable_from_row
from railfares.feed.bundle import FeedBundle
from railfares.feed.models import PoiKind, PoiRecord


class MetricName(str, Enum):
    MEAN_DISTANCE_KM = "mean_distance_km"
    POI_COUNT = "poi_count"


@dataclass(frozen=True, slots=True)
class AccessResult:
    origin_nlc: str
    ticket_code: str
    budget_pence: int
    metric: MetricName
    value: float | int | None  # None: undefined (empty reachable set)
    poi_kind: PoiKind | None = None
    radius_km: float | None = None
    reachable_count: int | None = None


def check_budgets(budgets: Sequence[int]) -> list[int]:
    """Budgets must be non-empty, non-negative and strictly ascending."""
    ladder = list(budgets)
    if not ladder or ladder[0] < 0 or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise BudgetOrderError(ladder)
    return ladder


# ---- Mean distance ------------------------------------------------------------


def mean_distance_from_row(bundle: FeedBundle, row: OdRow, budget_pence: int) -> float | None:
    reach = sorted(reachable_from_row(row, budget_pence))
    if not reach:
        return None
    origin = bundle.stations[row.origin_nlc]
    dests = [bundle.stations[d] for d in reach]
    km = haversine_km_many(origin.lat, origin.lon, [d.lat for d in dests], [d.lon for d in dests])
    return float(np.mean(km))


def mean_reachable_distance_km(
    bundle: FeedBundle, origin_nlc: str, ticket_code: str, budget_pence: int
) -> float | None:
    """Mean great-circle distance to reachable stations; None when nothing is reachable."""
    check_budgets([budget_pence])
    return mean_distance_from_row(bundle, od_row(bundle, origin_nlc, ticket_code), budget_pence)


def mean_distance_results(
    bundle: FeedBundle,
    ticket_code: str,
    budget_pence: int,
    origins: Iterable[str] | None = None,
    *,
    jobs: int = 1,
) -> Iterator[AccessResult]:
    check_budgets([budget_pence])
    for row in od_matrix(bundle, ticket_code, origins, jobs=jobs, by_crs=True):
        yield AccessResult(
            origin_nlc=row.origin_nlc,
            ticket_code=ticket_code,
            budget_pence=budget_pence,
            metric=MetricName.MEAN_DISTANCE_KM,
            value=mean_distance_from_row(bundle, row, budget_pence),
            reachable_count=len(reachable_from_row(row, budget_pence)),
        )


# ---- POI coverage -------------------------------------------------------------


class PoiCoverage:
    """Which POIs of one kind lie within `radius_km` (inclusive) of each station."""

    def __init__(
        self, bundle: FeedBundle, pois: Sequence[PoiRecord], poi_kind: PoiKind, radius_km: float
    ):
        if not radius_km > 0:
            raise InputError(f"radius_km must be positive, got {radius_km}")
        self.poi_kind = poi_kind
        self.radius_km = radius_km
        chosen = [p for p in pois if p.kind is poi_kind]
        self.total = len(chosen)
        lats = np.array([p.lat for p in chosen], dtype=float)
        lons = np.array([p.lon for p in chosen], dtype=float)
        self._near: dict[str, frozenset[int]] = {}
        for nlc, s in bundle.stations.items():
            if self.total:
                km = haversine_km_many(s.lat, s.lon, lats, lons)
                self._near[nlc] = frozenset(np.flatnonzero(km <= radius_km).tolist())
            else:
                self._near[nlc] = frozenset()

    def near(self, nlc: str) -> frozenset[int]:
        return self._near[nlc]

    def counts_for_row(self, row: OdRow, budgets: Sequence[int]) -> list[int]:
        """Counts per ascending budget, reusing the cover from the previous budget."""
        by_fare = sorted(row.fares.items(), key=lambda kv: (kv[1], kv[0]))
        fares = [fare for _, fare in by_fare]
        covered: set[int] = set(self._near[row.origin_nlc])
        counts: list[int] = []
        taken = 0
        for budget in budgets:
            upto = bisect.bisect_right(fares, budget)
            for dest, _ in by_fare[taken:upto]:
                covered |= self._near[dest]
            taken = max(taken, upto)
            counts.append(len(covered))
        return counts


def poi_reach_count(
    bundle: FeedBundle,
    pois: Sequence[PoiRecord],
    origin_nlc: str,
    ticket_code: str,
    budget_pence: int,
    radius_km: float,
    poi_kind: PoiKind,
) -> int:
    """Distinct POIs of `poi_kind` within radius of the origin or any reachable station."""
    check_budgets([budget_pence])
    coverage = PoiCoverage(bundle, pois, poi_kind, radius_km)
    row = od_row(bundle, origin_nlc, ticket_code)
    return coverage.counts_for_row(row, [budget_pence])[0]


def poi_counts_multi_budget(
    bundle: FeedBundle,
    pois: Sequence[PoiRecord],
    ticket_code: str,
    budgets: Sequence[int],
    radius_km: float,
    poi_kind: PoiKind,
    origins: Iterable[str] | None = None,
    *,
    jobs: int = 1,
) -> dict[str, list[int]]:
    """origin_nlc -> POI count per budget (rows non-decreasing left to right)."""
    rows = _poi_rows(bundle, pois, ticket_code, budgets, radius_km, poi_kind, origins, jobs)
    return {row.origin_nlc: counts for row, counts in rows}


def _poi_rows(
    bundle: FeedBundle,
    pois: Sequence[PoiRecord],
    ticket_code: str,
    budgets: Sequence[int],
    radius_km: float,
    poi_kind: PoiKind,
    origins: Iterable[str] | None,
    jobs: int,
    by_crs: bool = False,
) -> Iterator[tuple[OdRow, list[int]]]:
    ladder = check_budgets(budgets)
    coverage = PoiCoverage(bundle, pois, poi_kind, radius_km)
    for row in od_matrix(bundle, ticket_code, origins, jobs=jobs, by_crs=by_crs):
        yield row, coverage.counts_for_row(row, ladder)


def poi_results(
    bundle: FeedBundle,
    pois: Sequence[PoiRecord],
    ticket_code: str,
    budgets: Sequence[int],
    radius_km: float,
    poi_kind: PoiKind,
    origins: Iterable[str] | None = None,
    *,
    jobs: int = 1,
) -> Iterator[AccessResult]:
    """Flattened multi-budget table in (origin crs, budget) order, for export."""
    rows = _poi_rows(
        bundle, pois, ticket_code, budgets, radius_km, poi_kind, origins, jobs, by_crs=True
    )
    for row, counts in rows:
        for budget, count in zip(budgets, counts, strict=True):
            yield AccessResult(
                origin_nlc=row.origin_nlc,
                ticket_code=ticket_code,
                budget_pence=budget,
                metric=MetricName.POI_COUNT,
                value=count,
                poi_kind=poi_kind,
                radius_km=radius_km,
            )
